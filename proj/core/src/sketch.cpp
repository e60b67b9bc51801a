#include "osmm/sketch.hpp"

#include <algorithm>
#include <map>

namespace osmm {

namespace {

// Desk-scale sizing for the random mode, shaped like the probabilistic-
// method bound d ~ log(N/K)/eps, M ~ K d / eps at eps = 1/12, with margins.
// When the derived right side is no smaller than the signal itself the
// compression is pointless and the certified matching graph wins.
struct RandomSize {
  u32 d = 0;
  i64 right = 0;
  bool use_matching = false;
};

RandomSize auto_random_size(i64 n, i64 t) {
  RandomSize s;
  const i64 k = std::max<i64>(t, 2);
  const u64 ratio = static_cast<u64>(std::max<i64>(n / k, 2));
  s.d = static_cast<u32>(24 * (ceil_log2(ratio) + 4));
  const unsigned __int128 m = static_cast<unsigned __int128>(24) * static_cast<u64>(k) * s.d;
  if (m >= static_cast<unsigned __int128>(n)) {
    s.use_matching = true;
  } else {
    s.right = static_cast<i64>(m);
  }
  return s;
}

}  // namespace

MeasurementMatrix::MeasurementMatrix(i64 signal_length, i64 sparsity_budget, BipartiteGraph graph,
                                     bool expansion_certified)
    : n_raw_(signal_length),
      t_(sparsity_budget),
      graph_(std::move(graph)),
      certified_(expansion_certified) {
  if (signal_length < 1) throw input_error("measurement: signal length must be positive");
  if (sparsity_budget < 1 || sparsity_budget > signal_length)
    throw input_error("measurement: sparsity budget must be in [1, signal length]");
  ell_ = ceil_log2(static_cast<u64>(signal_length) + 1);
  n_pad_ = (i64{1} << ell_) - 1;
  if (graph_.left != n_pad_)
    throw input_error("measurement: expander left size must equal the padded length");
}

MeasurementMatrix build_measurement(i64 signal_length, i64 sparsity_budget, const SketchSpec& spec) {
  if (signal_length < 1) throw input_error("build_measurement: signal length must be positive");
  if (sparsity_budget < 1 || sparsity_budget > signal_length)
    throw input_error("build_measurement: sparsity budget must be in [1, signal length]");
  const u32 ell = ceil_log2(static_cast<u64>(signal_length) + 1);
  const i64 n = (i64{1} << ell) - 1;
  const i64 t = sparsity_budget;

  switch (spec.mode) {
    case SketchMode::Matching:
      return MeasurementMatrix(signal_length, t, build_matching_graph(n), true);
    case SketchMode::Theory: {
      const ExpanderParams params = derive_params(n, t, Rational{1, 12}, spec.alpha);
      return MeasurementMatrix(signal_length, t, build_pv_expander(pv_from_derived(params)), true);
    }
    case SketchMode::ManualPv: {
      if (!spec.pv) throw input_error("build_measurement: manual mode needs pv parameters");
      PvParams pv = *spec.pv;
      pv.left = n;
      return MeasurementMatrix(signal_length, t, build_pv_expander(pv), false);
    }
    case SketchMode::Random:
    case SketchMode::RandomVerified: {
      u32 d = 0;
      i64 right = 0;
      bool matching = false;
      if (spec.random_dm) {
        d = spec.random_dm->first;
        right = spec.random_dm->second;
      } else {
        const RandomSize s = auto_random_size(n, t);
        d = s.d;
        right = s.right;
        matching = s.use_matching;
      }
      if (matching) return MeasurementMatrix(signal_length, t, build_matching_graph(n), true);
      BipartiteGraph g = build_random_expander(n, d, right, spec.seed);
      bool certified = false;
      if (spec.mode == SketchMode::RandomVerified) {
        const ExpansionResult res = verify_expansion(g, t, Rational{1, 12}, spec.verify_budget);
        if (!res.ok) throw input_error("build_measurement: expander verification found a witness");
        certified = true;
      }
      return MeasurementMatrix(signal_length, t, std::move(g), certified);
    }
  }
  throw std::logic_error("unreachable sketch mode");
}

Measurement::Measurement(RingContext ctx, i64 block_count, u32 bit_rows)
    : z_(std::move(ctx), block_count * static_cast<i64>(bit_rows)),
      blocks_(block_count),
      ell_(bit_rows) {}

Measurement Measurement::from_vector(SparseVec z, i64 block_count, u32 bit_rows) {
  if (z.length() != block_count * static_cast<i64>(bit_rows))
    throw dimension_error("measurement: vector length does not match the block layout");
  Measurement m(z.context(), block_count, bit_rows);
  m.z_ = std::move(z);
  return m;
}

SparseMat bit_matrix(i64 n, const RingContext& ctx) {
  if (n < 1 || (static_cast<u64>(n) & static_cast<u64>(n + 1)) != 0)
    throw input_error("bit_matrix: length + 1 must be a power of two");
  const u32 ell = ceil_log2(static_cast<u64>(n) + 1);
  SparseMat out(ctx, static_cast<i64>(ell), n);
  for (i64 j = 1; j <= n; ++j) {
    std::vector<SvEntry> entries;
    for (u32 k = 1; k <= ell; ++k) {
      if (j & (i64{1} << (ell - k))) entries.push_back(SvEntry{static_cast<i64>(k) - 1, ctx.one()});
    }
    out.set_col(j - 1, SparseVec::from_entries(ctx, static_cast<i64>(ell), std::move(entries), true));
  }
  return out;
}

SparseMat row_tensor(const SparseMat& a, const SparseMat& b) {
  if (!a.context().same_domain(b.context()))
    throw input_error("row_tensor: operands live in different ring contexts");
  if (a.cols() != b.cols()) throw dimension_error("row_tensor: column counts differ");
  const RingContext& ctx = a.context();
  const i64 m2 = b.rows();
  SparseMat out(ctx, a.rows() * m2, a.cols());
  for (i64 c = 0; c < a.cols(); ++c) {
    std::vector<SvEntry> entries;
    entries.reserve(static_cast<std::size_t>(a.col(c).nnz() * b.col(c).nnz()));
    for (const SvEntry& ea : a.col(c).entries()) {
      for (const SvEntry& eb : b.col(c).entries()) {
        RingElement v = ctx.mul(ea.val, eb.val);
        if (!ctx.is_zero(v)) entries.push_back(SvEntry{ea.idx * m2 + eb.idx, std::move(v)});
      }
    }
    out.set_col(c, SparseVec::from_entries(ctx, out.rows(), std::move(entries), true));
  }
  return out;
}

namespace {

void check_signal_length(const MeasurementMatrix& h, i64 len, const char* what) {
  if (len != h.signal_length() && len != h.padded_length())
    throw dimension_error(std::string(what) + ": vector length does not match the measurement matrix");
}

}  // namespace

Measurement apply_measurement(const MeasurementMatrix& h, const SparseVec& x) {
  check_signal_length(h, x.length(), "apply_measurement");
  const RingContext& ctx = x.context();
  const u32 ell = h.bit_rows();
  const auto& graph = h.graph();

  // gather one (row, value) pair per incident block and set bit, then fold;
  // only additions touch the ring
  std::vector<std::pair<i64, const RingElement*>> contribs;
  for (const SvEntry& e : x.entries()) {
    const i64 coord = e.idx + 1;  // bit pattern of the 1-based coordinate
    for (i64 block : graph.adj[static_cast<std::size_t>(e.idx)]) {
      for (u32 k = 1; k <= ell; ++k) {
        if (coord & (i64{1} << (ell - k))) {
          contribs.emplace_back(block * static_cast<i64>(ell) + static_cast<i64>(k) - 1, &e.val);
        }
      }
    }
  }
  std::sort(contribs.begin(), contribs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SvEntry> entries;
  for (std::size_t i = 0; i < contribs.size();) {
    const i64 row = contribs[i].first;
    RingElement acc = *contribs[i].second;
    for (++i; i < contribs.size() && contribs[i].first == row; ++i) {
      acc = ctx.add(acc, *contribs[i].second);
    }
    if (!ctx.is_zero(acc)) entries.push_back(SvEntry{row, std::move(acc)});
  }
  return Measurement::from_vector(
      SparseVec::from_entries(ctx, h.rows(), std::move(entries), true), h.block_count(), ell);
}

SparseMat apply_measurement_mat(const MeasurementMatrix& h, const SparseMat& m) {
  check_signal_length(h, m.rows(), "apply_measurement_mat");
  SparseMat out(m.context(), h.rows(), m.cols());
  for (i64 j = 0; j < m.cols(); ++j) {
    out.set_col(j, apply_measurement(h, m.col(j)).as_vector());
  }
  return out;
}

SparseVec reduce(const MeasurementMatrix& h, const Measurement& z) {
  if (z.block_count() != h.block_count() || z.bit_rows() != h.bit_rows())
    throw dimension_error("reduce: measurement layout does not match the matrix");
  const RingContext& ctx = z.context();
  const u32 ell = h.bit_rows();
  const i64 n = h.padded_length();

  // candidate (coordinate, value) pairs, counted across blocks
  struct KeyLess {
    bool operator()(const std::pair<i64, RingElement>& a,
                    const std::pair<i64, RingElement>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return payload_less(a.second, b.second);
    }
  };
  std::map<std::pair<i64, RingElement>, u64, KeyLess> candidates;

  const auto& entries = z.as_vector().entries();
  for (std::size_t i = 0; i < entries.size();) {
    const i64 block = entries[i].idx / static_cast<i64>(ell);
    // stored entries are the nonzero rows of this block; they must all
    // carry one common value for the block to decode
    const RingElement& v = entries[i].val;
    bool uniform = true;
    i64 coord = 0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].idx / static_cast<i64>(ell) == block; ++j) {
      const u32 k = static_cast<u32>(entries[j].idx % static_cast<i64>(ell)) + 1;
      if (entries[j].val != v) {
        uniform = false;
      } else {
        coord += i64{1} << (ell - k);
      }
    }
    if (uniform && coord >= 1 && coord <= n) {
      ++candidates[{coord, v}];
    }
    i = j;
  }

  std::vector<SvEntry> out;
  for (const auto& [key, count] : candidates) {
    if (2 * count > h.degree()) {
      if (!out.empty() && out.back().idx == key.first - 1) {
        out.back().val = key.second;  // deterministic last-wins on a clash
      } else {
        out.push_back(SvEntry{key.first - 1, key.second});
      }
    }
  }
  return SparseVec::from_entries(ctx, n, std::move(out), true);
}

Measurement subtract_measurement(const Measurement& z, const MeasurementMatrix& h,
                                 const SparseVec& y) {
  const Measurement hy = apply_measurement(h, y);
  return Measurement::from_vector(sv_sub(z.as_vector(), hy.as_vector()), z.block_count(),
                                  z.bit_rows());
}

namespace {

SparseVec truncate_to(const SparseVec& x, i64 length) {
  std::vector<SvEntry> entries;
  for (const SvEntry& e : x.entries()) {
    if (e.idx < length) entries.push_back(e);
  }
  return SparseVec::from_entries(x.context(), length, std::move(entries), true);
}

}  // namespace

RecoverResult recover(const MeasurementMatrix& h, const Measurement& z0) {
  if (z0.block_count() != h.block_count() || z0.bit_rows() != h.bit_rows())
    throw dimension_error("recover: measurement layout does not match the matrix");
  const RingContext& ctx = z0.context();
  const i64 t = h.sparsity_budget();
  const u32 rounds = ceil_log2(2 * static_cast<u64>(t));

  RecoverResult res;
  SparseVec total(ctx, h.padded_length());
  Measurement z = z0;
  for (u32 i = 1; i <= rounds; ++i) {
    res.iterations = i;
    const SparseVec y = reduce(h, z);
    if (2 * y.nnz() > 3 * t) {
      res.x = SparseVec(ctx, h.signal_length());
      res.ok = false;
      return res;
    }
    z = subtract_measurement(z, h, y);
    total = sv_add(total, y);
  }
  res.x = truncate_to(total, h.signal_length());
  res.ok = true;
  return res;
}

}  // namespace osmm
