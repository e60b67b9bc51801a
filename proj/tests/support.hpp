#pragma once

// Shared helpers and independent oracles for the test suites. Oracles here
// deliberately avoid the library kernels they are checking.

#include <algorithm>
#include <set>
#include <vector>

#include "osmm/expander.hpp"
#include "osmm/philox.hpp"
#include "osmm/ring.hpp"
#include "osmm/sparse.hpp"

namespace testsup {

using namespace osmm;

inline RingElement random_nonzero(const RingContext& ctx, PhiloxStream& rng) {
  switch (ctx.kind()) {
    case RingKind::Integers: {
      const i64 v = static_cast<i64>(rng.next_below(198)) - 99;
      return ctx.from_int(v >= 0 ? v + 1 : v);
    }
    case RingKind::PrimeField:
      return ctx.from_int(static_cast<long>(rng.next_below(ctx.prime() - 1) + 1));
    case RingKind::BinaryField:
      return ctx.from_bits(rng.next_below((u64{1} << ctx.extension_degree()) - 1) + 1);
  }
  throw std::logic_error("unreachable");
}

inline RingElement random_element(const RingContext& ctx, PhiloxStream& rng) {
  if (rng.next_below(4) == 0) return ctx.zero();
  return random_nonzero(ctx, rng);
}

inline SparseVec random_sparse_vec(const RingContext& ctx, i64 n, i64 nnz, PhiloxStream& rng) {
  std::vector<i64> idx;
  while (static_cast<i64>(idx.size()) < nnz) {
    const i64 c = static_cast<i64>(rng.next_below(static_cast<u64>(n)));
    if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
  }
  std::sort(idx.begin(), idx.end());
  std::vector<SvEntry> es;
  for (i64 i : idx) es.push_back(SvEntry{i, random_nonzero(ctx, rng)});
  return SparseVec::from_entries(ctx, n, std::move(es), true);
}

inline SparseMat random_sparse_mat(const RingContext& ctx, i64 rows, i64 cols, i64 nnz_per_col_max,
                                   PhiloxStream& rng) {
  SparseMat m(ctx, rows, cols);
  for (i64 j = 0; j < cols; ++j) {
    const i64 k = static_cast<i64>(rng.next_below(static_cast<u64>(nnz_per_col_max) + 1));
    m.set_col(j, random_sparse_vec(ctx, rows, std::min(k, rows), rng));
  }
  return m;
}

// Plain schoolbook product over a dense scratch, written without the
// library's kernels or accumulation order.
inline SparseMat schoolbook_mm(const SparseMat& a, const SparseMat& b) {
  const RingContext& ctx = a.context();
  SparseMat out(ctx, a.rows(), b.cols());
  for (i64 j = 0; j < b.cols(); ++j) {
    std::vector<SvEntry> entries;
    for (i64 i = 0; i < a.rows(); ++i) {
      RingElement acc = ctx.zero();
      for (i64 k = 0; k < a.cols(); ++k) {
        acc = ctx.add(acc, ctx.mul(a.col(k).get(i), b.col(j).get(k)));
      }
      if (!ctx.is_zero(acc)) entries.push_back(SvEntry{i, std::move(acc)});
    }
    out.set_col(j, SparseVec::from_entries(ctx, a.rows(), std::move(entries), true));
  }
  return out;
}

// Exhaustive expansion check over bitmasks with std::set unions; usable for
// left sizes up to ~20.
inline bool expansion_oracle(const BipartiteGraph& g, i64 sparsity, Rational eps) {
  for (u64 mask = 1; mask < (u64{1} << g.left); ++mask) {
    const int size = std::popcount(mask);
    if (size > sparsity) continue;
    std::set<i64> nbrs;
    for (i64 v = 0; v < g.left; ++v) {
      if (mask & (u64{1} << v)) {
        nbrs.insert(g.adj[static_cast<std::size_t>(v)].begin(),
                    g.adj[static_cast<std::size_t>(v)].end());
      }
    }
    if (static_cast<i64>(nbrs.size()) * eps.den <
        (eps.den - eps.num) * static_cast<i64>(g.degree) * size)
      return false;
  }
  return true;
}

inline std::vector<RingContext> test_rings() {
  return {RingContext::integers(), RingContext::prime_field(101), RingContext::binary_field(8)};
}

}  // namespace testsup
