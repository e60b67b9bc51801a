#pragma once

// Sparse vectors and column-major sparse matrices over a ring, with the
// multiplication kernels the higher layers dispatch between: Gustavson-style
// column-sparse multiplication and a plain cubic dense product. Indices are
// 0-based in memory; the file layer speaks 1-based.

#include <map>
#include <utility>
#include <vector>

#include "osmm/ring.hpp"

namespace osmm {

struct SvEntry {
  i64 idx = 0;
  RingElement val;
};

class SparseVec {
 public:
  SparseVec() = default;
  SparseVec(RingContext ctx, i64 length);
  // Validates: indices strictly increasing (unless already_sorted, sorts and
  // then rejects duplicates), in [0, length), values nonzero.
  static SparseVec from_entries(RingContext ctx, i64 length, std::vector<SvEntry> entries,
                                bool already_sorted = false);

  const RingContext& context() const { return ctx_; }
  i64 length() const { return length_; }
  i64 nnz() const { return static_cast<i64>(entries_.size()); }
  const std::vector<SvEntry>& entries() const { return entries_; }
  RingElement get(i64 idx) const;  // zero when absent

  void check_valid() const;  // structural audit: sorted, in range, no zeros

 private:
  RingContext ctx_ = RingContext::integers();
  i64 length_ = 0;
  std::vector<SvEntry> entries_;
};

SparseVec sv_add(const SparseVec& a, const SparseVec& b);
SparseVec sv_sub(const SparseVec& a, const SparseVec& b);
bool sv_equal(const SparseVec& a, const SparseVec& b);

class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(RingContext ctx, i64 rows, i64 cols);
  static SparseMat identity(RingContext ctx, i64 n);
  static SparseMat from_columns(RingContext ctx, i64 rows, std::vector<SparseVec> columns);

  const RingContext& context() const { return ctx_; }
  i64 rows() const { return rows_; }
  i64 cols() const { return cols_; }
  i64 nnz() const;
  const SparseVec& col(i64 j) const;
  void set_col(i64 j, SparseVec v);  // construction-time mutation only

  void check_valid() const;

 private:
  RingContext ctx_ = RingContext::integers();
  i64 rows_ = 0;
  i64 cols_ = 0;
  std::vector<SparseVec> columns_;
};

bool mat_equal(const SparseMat& a, const SparseMat& b);
SparseMat mat_add(const SparseMat& a, const SparseMat& b);
SparseMat mat_sub(const SparseMat& a, const SparseMat& b);

// Column-sparse multiplication as a sum of outer products. Output never
// stores zeros; entries cancelled during accumulation are dropped. The
// output sparsity bound nnz(AB) <= max_col_nnz(A) * nnz(B) is checked on
// every call and a violation throws (it would indicate a kernel bug).
SparseMat sparse_mm(const SparseMat& a, const SparseMat& b);

// Cubic-time product over dense scratch; bit-identical to sparse_mm. Falls
// back to sparse_mm when any involved shape exceeds the entry budget.
SparseMat dense_mm(const SparseMat& a, const SparseMat& b, i64 dense_budget = i64{1} << 26);

SparseMat transpose(const SparseMat& a);

// Columns of b at the (strictly increasing, in-range) positions in j, in
// j's order. The caller keeps j as the map back to original column ids.
SparseMat restrict_columns(const SparseMat& b, const std::vector<i64>& j);

// Zero-pad an m x n and an n x p matrix to n x n each: the product of the
// padded pair has the original product as its top-left m x p block and
// zeros elsewhere. Requires m <= n and p <= n.
std::pair<SparseMat, SparseMat> pad_to_square(const SparseMat& a, const SparseMat& b);
SparseMat unpad(const SparseMat& c, i64 rows, i64 cols);  // top-left block

struct SparsityStats {
  i64 nnz = 0;
  i64 max_col_nnz = 0;
  std::vector<i64> col_nnz;
  std::map<i64, i64> histogram;  // column nnz -> number of columns
};
SparsityStats sparsity_stats(const SparseMat& m);

// Count of products whose output sparsity bound has been checked since
// process start; the acceptance suite reports it.
u64 sparsity_bound_checks();

}  // namespace osmm
