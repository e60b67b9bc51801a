#pragma once

// Randomized column-wise product verification: identify exactly which
// columns of C' differ from A*B by probing with random binary row vectors.
// One-sided by construction; misses are bounded by 1/(mnp)^confidence.

#include <vector>

#include "osmm/sparse.hpp"

namespace osmm {

struct VerifierConfig {
  u32 confidence = 2;  // failure probability <= 1/(mnp)^confidence
  u64 seed = 0;
};

// ceil((c+1) * log2(m*n*p)), at least 1. Exact integer computation.
i64 verifier_rows(u32 confidence, i64 m, i64 n, i64 p);

// The shared probe matrix: rows x cols entries in {zero, one}, bit (r, c)
// drawn from stream r of the seeded generator.
SparseMat sample_binary_matrix(const RingContext& ctx, i64 rows, i64 cols, u64 seed);

// Returns the sorted 0-based indices j with (X*A*B - X*C').col(j) != 0,
// computed as ((X*A)*B) - (X*C'). Never flags a column where A*B and C'
// agree; misses a differing column with probability <= 1/(mnp)^confidence.
std::vector<i64> column_wise_mmv(const SparseMat& a, const SparseMat& b, const SparseMat& c_prime,
                                 const VerifierConfig& cfg);

// Identical output for the same seed; products run through the
// column-sparse kernel instead of the dense one.
std::vector<i64> column_wise_mmv_sparse(const SparseMat& a, const SparseMat& b,
                                        const SparseMat& c_prime, const VerifierConfig& cfg);

}  // namespace osmm
