#pragma once

// The two output-sparse multiplication drivers: a deterministic two-pass
// recovery under a global sparsity promise, and a verified guess-and-commit
// loop that is correct for any product and merely slower when it is dense.

#include <optional>
#include <string>
#include <vector>

#include "osmm/sketch.hpp"
#include "osmm/sparse.hpp"
#include "osmm/verify.hpp"

namespace osmm {

enum class MulStrategy { Auto, Sparse, Dense };

// Optional observer for tests and the bench reporter.
struct OsmmTrace {
  struct RandIter {
    i64 t = 0;
    std::vector<i64> active;   // columns still unsettled entering the iteration
    std::vector<i64> flagged;  // columns the verifier rejected
  };
  bool keep_first_pass = false;
  std::optional<SparseMat> first_pass;  // recovered matrix after pass 1
  i64 pass1_recover_failures = 0;
  i64 pass2_recover_failures = 0;
  std::vector<RandIter> iterations;
  std::vector<std::string> strategy_log;
};

struct OsmmConfig {
  std::optional<i64> t;          // column-sparsity budget, nnz(AB) <= t^2 promised
  std::optional<i64> nnz_bound;  // alternative: t = ceil(sqrt(nnz_bound))
  MulStrategy strategy = MulStrategy::Auto;
  SketchSpec sketch;
  VerifierConfig verifier;
  bool post_verify = false;
  OsmmTrace* trace = nullptr;
};

// Predicted-cost choice between the column-sparse kernel and the cubic one:
// sparse when max_col_nnz(a) * nnz(b) <= rows(a) * cols(a) * cols(b), ties
// to sparse.
MulStrategy strategy_dispatch(const SparseMat& a, const SparseMat& b);

SparseMat multiply_with_strategy(const SparseMat& a, const SparseMat& b, MulStrategy strategy,
                                 OsmmTrace* trace = nullptr);

// Two-pass sketch-and-recover product of square matrices under the promise
// nnz(AB) <= t^2. A second-pass recovery failure or a post-verify mismatch
// throws promise_error.
SparseMat osmm_deterministic(const SparseMat& a, const SparseMat& b, const OsmmConfig& cfg);

// Guess-and-commit product of square matrices; needs no sparsity promise.
// Randomness enters only through the verifier (and any random sketch mode).
SparseMat osmm_randomized(const SparseMat& a, const SparseMat& b, const OsmmConfig& cfg);

// Rectangular m x n times n x p with m, p <= n: zero-pad to square, run the
// randomized driver, strip the padding.
SparseMat rect_multiply(const SparseMat& a, const SparseMat& b, const OsmmConfig& cfg);

}  // namespace osmm
