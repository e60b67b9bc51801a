#pragma once

// Exact sparse recovery from block-structured binary measurements. The
// measurement matrix is the row tensor of an expander adjacency with the
// bit-pattern matrix, kept implicit: products walk the expander neighbor
// lists and the set bits of column indices, using ring additions only.

#include <optional>
#include <utility>

#include "osmm/expander.hpp"
#include "osmm/sparse.hpp"

namespace osmm {

enum class SketchMode {
  Theory,          // parameters derived from (n, t, alpha); huge below astronomic n
  ManualPv,        // caller-supplied PV parameters
  Random,          // seeded random expander, auto-sized, matching fallback
  RandomVerified,  // as Random but brute-force verified (throws on failure)
  Matching,        // the trivial one-to-one graph
};

struct SketchSpec {
  SketchMode mode = SketchMode::Random;
  Rational alpha{1, 1};                       // Theory mode only
  u64 seed = 0;                               // Random modes
  std::optional<PvParams> pv;                 // ManualPv (left filled from n)
  std::optional<std::pair<u32, i64>> random_dm;  // explicit (d, right) override
  u64 verify_budget = 10'000'000;             // RandomVerified
};

class MeasurementMatrix {
 public:
  MeasurementMatrix(i64 signal_length, i64 sparsity_budget, BipartiteGraph graph,
                    bool expansion_certified);

  i64 signal_length() const { return n_raw_; }   // accepted input length
  i64 padded_length() const { return n_pad_; }   // 2^bit_rows - 1
  u32 bit_rows() const { return ell_; }
  i64 sparsity_budget() const { return t_; }
  u32 degree() const { return graph_.degree; }
  i64 block_count() const { return graph_.right; }
  i64 rows() const { return graph_.right * static_cast<i64>(ell_); }
  const BipartiteGraph& graph() const { return graph_; }
  bool expansion_certified() const { return certified_; }

 private:
  i64 n_raw_;
  i64 n_pad_;
  u32 ell_;
  i64 t_;
  BipartiteGraph graph_;
  bool certified_;
};

MeasurementMatrix build_measurement(i64 signal_length, i64 sparsity_budget,
                                    const SketchSpec& spec = {});

// A measurement vector, grouped into block_count blocks of bit_rows rows.
class Measurement {
 public:
  Measurement(RingContext ctx, i64 block_count, u32 bit_rows);
  static Measurement from_vector(SparseVec z, i64 block_count, u32 bit_rows);

  const SparseVec& as_vector() const { return z_; }
  i64 block_count() const { return blocks_; }
  u32 bit_rows() const { return ell_; }
  const RingContext& context() const { return z_.context(); }

 private:
  SparseVec z_;
  i64 blocks_;
  u32 ell_;
};

// The bit-rows x n matrix whose column j is the binary expansion of j
// (1-based, row 1 the most significant bit). Requires n + 1 a power of two.
SparseMat bit_matrix(i64 n, const RingContext& ctx);

// Rows are all coordinate-wise products of one row of a with one row of b;
// row (i-1)*rows(b)+j pairs row i of a with row j of b.
SparseMat row_tensor(const SparseMat& a, const SparseMat& b);

// H x using additions only; x may have the accepted or the padded length.
Measurement apply_measurement(const MeasurementMatrix& h, const SparseVec& x);
// Column-wise application; m.rows() must be the accepted or padded length.
SparseMat apply_measurement_mat(const MeasurementMatrix& h, const SparseMat& m);

// One halving step: decodes every block whose nonzero entries agree on a
// single value, keeps candidates seen in more than degree/2 blocks. Output
// has the padded length.
SparseVec reduce(const MeasurementMatrix& h, const Measurement& z);

Measurement subtract_measurement(const Measurement& z, const MeasurementMatrix& h,
                                 const SparseVec& y);

struct RecoverResult {
  SparseVec x;       // accepted length
  bool ok = false;
  u32 iterations = 0;
};

// Iterated reduce with residual updates; aborts (ok = false, x = 0) when an
// intermediate correction exceeds 3t/2 nonzeros.
RecoverResult recover(const MeasurementMatrix& h, const Measurement& z0);

}  // namespace osmm
