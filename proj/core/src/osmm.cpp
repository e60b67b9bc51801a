#include "osmm/osmm.hpp"

#include <algorithm>
#include <cmath>

#include "osmm/philox.hpp"

namespace osmm {

MulStrategy strategy_dispatch(const SparseMat& a, const SparseMat& b) {
  i64 t = 0;
  for (i64 j = 0; j < a.cols(); ++j) t = std::max(t, a.col(j).nnz());
  const unsigned __int128 sparse_cost =
      static_cast<unsigned __int128>(t) * static_cast<unsigned __int128>(b.nnz());
  const unsigned __int128 dense_cost = static_cast<unsigned __int128>(a.rows()) *
                                       static_cast<unsigned __int128>(a.cols()) *
                                       static_cast<unsigned __int128>(b.cols());
  return sparse_cost <= dense_cost ? MulStrategy::Sparse : MulStrategy::Dense;
}

SparseMat multiply_with_strategy(const SparseMat& a, const SparseMat& b, MulStrategy strategy,
                                 OsmmTrace* trace) {
  MulStrategy chosen = strategy;
  if (chosen == MulStrategy::Auto) chosen = strategy_dispatch(a, b);
  if (trace != nullptr) {
    trace->strategy_log.push_back(
        std::string(chosen == MulStrategy::Sparse ? "sparse" : "dense") + " " +
        std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + "x" + std::to_string(b.cols()));
  }
  return chosen == MulStrategy::Sparse ? sparse_mm(a, b) : dense_mm(a, b);
}

namespace {

void check_square_pair(const SparseMat& a, const SparseMat& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.cols() != b.rows())
    throw dimension_error("operands must be square matrices of one size");
  if (!a.context().same_domain(b.context()))
    throw input_error("operands live in different ring contexts");
}

i64 resolve_budget(const OsmmConfig& cfg) {
  if (cfg.t) {
    if (*cfg.t < 1) throw input_error("sparsity budget must be at least 1");
    return *cfg.t;
  }
  if (cfg.nnz_bound) {
    if (*cfg.nnz_bound < 0) throw input_error("nnz bound must be nonnegative");
    i64 t = 1;
    while (t * t < *cfg.nnz_bound) ++t;
    return t;
  }
  return 0;
}

// Column-wise recovery of a stacked measurement matrix: column j of d holds
// the measurement of column j of the unknown; failures yield zero columns.
SparseMat recover_columns(const MeasurementMatrix& h, const SparseMat& d, i64* failures) {
  SparseMat out(d.context(), h.signal_length(), d.cols());
  for (i64 j = 0; j < d.cols(); ++j) {
    const Measurement z = Measurement::from_vector(d.col(j), h.block_count(), h.bit_rows());
    RecoverResult r = recover(h, z);
    if (!r.ok) {
      if (failures != nullptr) ++*failures;
      continue;  // column stays zero
    }
    out.set_col(j, std::move(r.x));
  }
  return out;
}

SketchSpec sketch_for_iteration(const SketchSpec& base, u64 iteration) {
  SketchSpec spec = base;
  spec.seed = mix_seed(base.seed, 0x736b6574u + iteration);
  return spec;
}

}  // namespace

SparseMat osmm_deterministic(const SparseMat& a, const SparseMat& b, const OsmmConfig& cfg) {
  check_square_pair(a, b);
  const i64 n = a.rows();
  const i64 t = resolve_budget(cfg);
  if (t == 0) {
    if (cfg.post_verify) return osmm_randomized(a, b, cfg);
    throw input_error("deterministic mode needs a sparsity budget (t or an nnz bound)");
  }
  if (n == 0) return SparseMat(a.context(), 0, 0);

  const MeasurementMatrix h = build_measurement(n, std::min(t, n), cfg.sketch);

  // pass 1: sketch the product column-wise and recover the sparse columns
  const SparseMat ha = apply_measurement_mat(h, a);
  const SparseMat d = multiply_with_strategy(ha, b, cfg.strategy, cfg.trace);
  i64 pass1_failures = 0;
  SparseMat d_prime = recover_columns(h, d, &pass1_failures);
  if (cfg.trace != nullptr) {
    cfg.trace->pass1_recover_failures = pass1_failures;
    if (cfg.trace->keep_first_pass) cfg.trace->first_pass = d_prime;
  }

  // pass 2: the residual transposed, sketched the same way; under the
  // promise every residual row is within budget, so failures are fatal
  const SparseMat hbt = apply_measurement_mat(h, transpose(b));
  const SparseMat g = multiply_with_strategy(hbt, transpose(a), cfg.strategy, cfg.trace);
  const SparseMat hdt = apply_measurement_mat(h, transpose(d_prime));
  const SparseMat f = mat_sub(g, hdt);
  i64 pass2_failures = 0;
  SparseMat f_prime = recover_columns(h, f, &pass2_failures);
  if (cfg.trace != nullptr) cfg.trace->pass2_recover_failures = pass2_failures;
  if (pass2_failures != 0)
    throw promise_error("second-pass recovery failed: the product is denser than promised");

  SparseMat result = mat_add(d_prime, transpose(f_prime));

  if (cfg.post_verify) {
    const std::vector<i64> bad = column_wise_mmv_sparse(a, b, result, cfg.verifier);
    if (!bad.empty())
      throw promise_error("verification flagged " + std::to_string(bad.size()) +
                          " column(s): the product is denser than promised");
  }
  return result;
}

SparseMat osmm_randomized(const SparseMat& a, const SparseMat& b, const OsmmConfig& cfg) {
  check_square_pair(a, b);
  const i64 n = a.rows();
  SparseMat result(a.context(), n, n);
  if (n == 0) return result;

  std::vector<i64> active(static_cast<std::size_t>(n));
  for (i64 j = 0; j < n; ++j) active[static_cast<std::size_t>(j)] = j;

  const u32 last = ceil_log2(static_cast<u64>(n));
  for (u32 i = 0; i <= last; ++i) {
    if (active.empty()) break;
    const i64 t = std::min<i64>(i64{1} << i, n);
    MeasurementMatrix h = build_measurement(n, t, sketch_for_iteration(cfg.sketch, i));
    if (i == last && !h.expansion_certified()) {
      // the closing round must recover arbitrary columns exactly, which only
      // a certified scheme guarantees; fall back to the lossless one
      SketchSpec closing;
      closing.mode = SketchMode::Matching;
      h = build_measurement(n, t, closing);
      if (cfg.trace != nullptr) cfg.trace->strategy_log.push_back("closing round: matching sketch");
    }

    const SparseMat b_active = restrict_columns(b, active);
    const SparseMat ha = apply_measurement_mat(h, a);
    const SparseMat d = multiply_with_strategy(ha, b_active, cfg.strategy, cfg.trace);
    const SparseMat guess = recover_columns(h, d, nullptr);

    VerifierConfig vcfg = cfg.verifier;
    vcfg.seed = mix_seed(cfg.verifier.seed, 0x636f6c6du + i);
    const std::vector<i64> flagged_local = column_wise_mmv_sparse(a, b_active, guess, vcfg);

    if (cfg.trace != nullptr) {
      OsmmTrace::RandIter it;
      it.t = t;
      it.active = active;
      for (i64 l : flagged_local) it.flagged.push_back(active[static_cast<std::size_t>(l)]);
      cfg.trace->iterations.push_back(std::move(it));
    }

    // commit verified columns, keep the flagged ones for the next round
    std::vector<i64> next;
    next.reserve(flagged_local.size());
    std::size_t fi = 0;
    for (std::size_t l = 0; l < active.size(); ++l) {
      if (fi < flagged_local.size() && flagged_local[fi] == static_cast<i64>(l)) {
        next.push_back(active[l]);
        ++fi;
      } else {
        result.set_col(active[l], guess.col(static_cast<i64>(l)));
      }
    }
    active = std::move(next);
  }
  return result;
}

SparseMat rect_multiply(const SparseMat& a, const SparseMat& b, const OsmmConfig& cfg) {
  if (a.cols() != b.rows()) throw dimension_error("rect_multiply: inner dimensions differ");
  if (a.rows() > a.cols() || b.cols() > b.rows())
    throw input_error("rect_multiply: outer dimensions must not exceed the inner one");
  auto [ap, bp] = pad_to_square(a, b);
  const SparseMat cp = osmm_randomized(ap, bp, cfg);
  return unpad(cp, a.rows(), b.cols());
}

}  // namespace osmm
