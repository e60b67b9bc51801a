#pragma once

// Unbalanced bipartite expanders: the deterministic construction from
// Parvaresh-Vardy-style polynomial evaluation maps, a seeded random
// d-left-regular generator, parameter derivation, and a brute-force
// expansion verifier for small instances.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "osmm/common.hpp"
#include "osmm/gfpoly.hpp"
#include "osmm/sparse.hpp"

namespace osmm {

struct ExpanderParams {
  i64 left = 0;       // N
  i64 sparsity = 0;   // K after clamping
  Rational eps{1, 12};
  Rational alpha{1, 1};
  u32 n_bits = 0;     // ceil(log2 N)
  u32 k_bits = 0;     // ceil(log2 K)
  u64 h = 0;
  u32 m = 0;
  u32 log2_q = 0;     // d = q = 2^log2_q
  mpz_class q;
  mpz_class right_size;  // q^(m+1)
  bool clamped = false;
};

// Evaluates the parameter formulas exactly (integer root/power comparisons,
// no floating point). Clamps K >= 2, h >= 2, m >= 1, q >= 2 and reports it.
ExpanderParams derive_params(i64 left, i64 sparsity, Rational eps, Rational alpha);

struct BipartiteGraph {
  i64 left = 0;
  i64 right = 0;
  u32 degree = 0;                       // exact out-degree of every left vertex
  std::vector<std::vector<i64>> adj;    // per left vertex, sorted distinct right ids

  i64 edge_count() const { return left * static_cast<i64>(degree); }
  u64 hash() const;  // FNV-1a over sizes and adjacency
  void check_valid() const;
};

// Left vertex ids enumerate polynomials of degree < deg_bound over GF(q)
// by their little-endian base-q digit expansion; each vertex connects to
// the q right vertices (y, t_0(y), ..., t_{m-1}(y)) with t_i the iterated
// h-th powers of t modulo a fixed irreducible polynomial.
struct PvParams {
  u64 q = 0;        // field size, power of two
  u32 deg_bound = 0;  // polynomials have degree < deg_bound
  u32 m = 1;
  u64 h = 1;        // unused when m == 1
  i64 left = 0;     // requires q^deg_bound >= left
};

PvParams pv_from_derived(const ExpanderParams& params);
BipartiteGraph build_pv_expander(const PvParams& params);

BipartiteGraph build_random_expander(i64 left, u32 d, i64 right, u64 seed);

// The trivial one-to-one graph: d = 1, right vertex i adjacent to left
// vertex i. Expands losslessly for every set size.
BipartiteGraph build_matching_graph(i64 n);

struct ExpansionResult {
  bool ok = true;
  std::vector<i64> witness;  // first violating left set (0-based), empty if ok
  u64 subsets_checked = 0;
};

// Exhaustively checks |N(S)| >= (1-eps) * d * |S| for every left subset of
// size <= sparsity. Throws budget_error past subset_budget visited subsets.
ExpansionResult verify_expansion(const BipartiteGraph& g, i64 sparsity, Rational eps,
                                 u64 subset_budget = 10'000'000);

// 0/1 adjacency matrix, right vertices as rows, over the given ring.
SparseMat adjacency_matrix(const BipartiteGraph& g, const RingContext& ctx);

}  // namespace osmm
