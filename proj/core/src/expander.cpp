#include "osmm/expander.hpp"

#include <algorithm>
#include <bit>

#include "osmm/philox.hpp"

namespace osmm {

namespace {

void check_rational(const Rational& r, const char* what) {
  if (r.den <= 0) throw input_error(std::string(what) + ": denominator must be positive");
}

mpz_class mpz_pow(const mpz_class& base, u64 e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

// Smallest integer X >= 1 with X^e_den >= (v_num / v_den)^e_num, all exact.
u64 ceil_rational_root(const mpz_class& v_num, const mpz_class& v_den, u64 e_num, u64 e_den) {
  const mpz_class lhs_target = mpz_pow(v_num, e_num);
  const mpz_class rhs_scale = mpz_pow(v_den, e_num);
  auto ok = [&](const mpz_class& x) { return mpz_pow(x, e_den) * rhs_scale >= lhs_target; };
  // start from an integer root estimate and walk to the exact answer
  mpz_class ratio = lhs_target / rhs_scale;
  mpz_class guess;
  mpz_root(guess.get_mpz_t(), ratio.get_mpz_t(), static_cast<unsigned long>(e_den));
  while (!ok(guess)) ++guess;
  while (guess > 1 && ok(guess - 1)) --guess;
  if (!guess.fits_ulong_p()) throw input_error("parameter derivation overflows");
  return static_cast<u64>(guess.get_ui());
}

}  // namespace

ExpanderParams derive_params(i64 left, i64 sparsity, Rational eps, Rational alpha) {
  if (left < 2) throw input_error("derive_params: left size must be at least 2");
  if (sparsity < 1 || sparsity > left) throw input_error("derive_params: sparsity must be in [1, left]");
  check_rational(eps, "eps");
  check_rational(alpha, "alpha");
  if (eps.num <= 0 || eps.num >= eps.den) throw input_error("derive_params: eps must be in (0, 1)");
  if (alpha.num <= 0) throw input_error("derive_params: alpha must be positive");

  ExpanderParams out;
  out.left = left;
  out.eps = eps;
  out.alpha = alpha;
  out.sparsity = std::max<i64>(sparsity, 2);
  out.clamped = out.sparsity != sparsity;

  out.n_bits = ceil_log2(static_cast<u64>(left));
  out.k_bits = ceil_log2(static_cast<u64>(out.sparsity));

  // h = ceil((2*n*k / eps)^(1/alpha)), evaluated without rounding error
  const mpz_class v_num = mpz_class(2) * out.n_bits * out.k_bits * eps.den;
  const mpz_class v_den = eps.num;
  u64 h = ceil_rational_root(v_num, v_den, static_cast<u64>(alpha.den), static_cast<u64>(alpha.num));
  if (h < 2) {
    h = 2;
    out.clamped = true;
  }
  out.h = h;

  // m = ceil(k / log2 h): smallest m with h^m >= 2^k
  const mpz_class two_k = mpz_pow(2, out.k_bits);
  u32 m = 1;
  while (mpz_pow(h, m) < two_k) ++m;
  out.m = m;

  // q = 2^floor((1+alpha) * log2 h): largest e with 2^(e*ad) <= h^(ad+an)
  const mpz_class h_pow = mpz_pow(h, static_cast<u64>(alpha.den + alpha.num));
  u32 e = 1;
  while (mpz_pow(2, static_cast<u64>(e + 1) * static_cast<u64>(alpha.den)) <= h_pow) ++e;
  if (mpz_pow(2, static_cast<u64>(e) * static_cast<u64>(alpha.den)) > h_pow) {
    e = 1;  // floor came out below 1; clamp q to 2
    out.clamped = true;
  }
  out.log2_q = e;
  out.q = mpz_pow(2, e);
  out.right_size = mpz_pow(out.q, static_cast<u64>(m) + 1);
  return out;
}

PvParams pv_from_derived(const ExpanderParams& p) {
  PvParams pv;
  if (p.log2_q > 32) throw input_error("derived field size exceeds the buildable range (2^32)");
  pv.q = static_cast<u64>(p.q.get_ui());
  pv.deg_bound = p.n_bits == 0 ? 1 : p.n_bits;
  pv.m = p.m;
  pv.h = p.h;
  pv.left = p.left;
  return pv;
}

u64 BipartiteGraph::hash() const {
  u64 h = 0xcbf29ce484222325ull;
  auto mix = [&h](u64 v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  mix(static_cast<u64>(left));
  mix(static_cast<u64>(right));
  mix(degree);
  for (const auto& nbrs : adj) {
    for (i64 v : nbrs) mix(static_cast<u64>(v));
  }
  return h;
}

void BipartiteGraph::check_valid() const {
  if (static_cast<i64>(adj.size()) != left) throw std::logic_error("graph: adjacency size");
  for (const auto& nbrs : adj) {
    if (nbrs.size() != degree) throw std::logic_error("graph: left vertex degree");
    i64 prev = -1;
    for (i64 v : nbrs) {
      if (v <= prev || v >= right) throw std::logic_error("graph: neighbor order/range");
      prev = v;
    }
  }
}

BipartiteGraph build_pv_expander(const PvParams& params) {
  if (params.q < 2 || std::popcount(params.q) != 1)
    throw input_error("pv expander: field size must be a power of two, at least 2");
  const u32 b = static_cast<u32>(std::countr_zero(params.q));
  if (b > 32) throw input_error("pv expander: field size exceeds 2^32");
  if (params.deg_bound < 1) throw input_error("pv expander: degree bound must be at least 1");
  if (params.m < 1) throw input_error("pv expander: m must be at least 1");
  if (params.m >= 2 && params.h < 1) throw input_error("pv expander: h must be at least 1");
  if (params.left < 1) throw input_error("pv expander: left size must be positive");

  // q^deg_bound >= left, else there are not enough polynomials
  mpz_class capacity = 1;
  for (u32 i = 0; i < params.deg_bound && capacity < params.left; ++i) capacity *= params.q;
  if (capacity < params.left)
    throw input_error("pv expander: q^deg_bound is below the left size");

  // right vertex ids are base-q tuples (y, e_0, ..., e_{m-1}); they must fit i64
  mpz_class right_mpz = mpz_class(1);
  for (u32 i = 0; i < params.m + 1; ++i) right_mpz *= params.q;
  if (mpz_sizeinbase(right_mpz.get_mpz_t(), 2) > 62)
    throw input_error("pv expander: right side does not fit an index type");
  const i64 right = static_cast<i64>(right_mpz.get_ui());
  if (params.left > (i64{1} << 31) || params.q > (u64{1} << 31) ||
      static_cast<u64>(params.left) * params.q > (u64{1} << 33))
    throw input_error("pv expander: edge list would be too large to build");

  const Gf2Field field = Gf2Field::smallest(b);
  const PolyGF modulus = find_irreducible(b, params.deg_bound);

  BipartiteGraph g;
  g.left = params.left;
  g.right = right;
  g.degree = static_cast<u32>(params.q);
  g.adj.resize(static_cast<std::size_t>(params.left));

  std::vector<PolyGF> powers;
  powers.reserve(params.m);
  for (i64 v = 0; v < params.left; ++v) {
    const PolyGF t = PolyGF::from_index(field, static_cast<u64>(v), params.deg_bound);
    powers.clear();
    powers.push_back(poly_mod(t, modulus));
    for (u32 i = 1; i < params.m; ++i) {
      // t^(h^i) = (t^(h^(i-1)))^h, so the huge exponent never materializes
      powers.push_back(poly_powmod(powers.back(), params.h, modulus));
    }
    auto& nbrs = g.adj[static_cast<std::size_t>(v)];
    nbrs.reserve(params.q);
    for (u64 y = 0; y < params.q; ++y) {
      u64 code = y;
      for (u32 i = 0; i < params.m; ++i) code = code * params.q + poly_eval(powers[i], y);
      nbrs.push_back(static_cast<i64>(code));
    }
    // codes ascend with y because y is the most significant digit
  }
  g.check_valid();
  return g;
}

BipartiteGraph build_random_expander(i64 left, u32 d, i64 right, u64 seed) {
  if (left < 1 || right < 1) throw input_error("random expander: sides must be positive");
  if (d < 1 || static_cast<i64>(d) > right)
    throw input_error("random expander: degree must be in [1, right]");
  BipartiteGraph g;
  g.left = left;
  g.right = right;
  g.degree = d;
  g.adj.resize(static_cast<std::size_t>(left));
  for (i64 v = 0; v < left; ++v) {
    auto& nbrs = g.adj[static_cast<std::size_t>(v)];
    if (static_cast<i64>(d) == right) {
      nbrs.resize(static_cast<std::size_t>(right));
      for (i64 i = 0; i < right; ++i) nbrs[static_cast<std::size_t>(i)] = i;
    } else {
      PhiloxStream rng(seed, static_cast<u64>(v));
      while (nbrs.size() < d) {
        const i64 cand = static_cast<i64>(rng.next_below(static_cast<u64>(right)));
        if (std::find(nbrs.begin(), nbrs.end(), cand) == nbrs.end()) nbrs.push_back(cand);
      }
      std::sort(nbrs.begin(), nbrs.end());
    }
  }
  g.check_valid();
  return g;
}

BipartiteGraph build_matching_graph(i64 n) {
  if (n < 1) throw input_error("matching graph: size must be positive");
  BipartiteGraph g;
  g.left = n;
  g.right = n;
  g.degree = 1;
  g.adj.resize(static_cast<std::size_t>(n));
  for (i64 v = 0; v < n; ++v) g.adj[static_cast<std::size_t>(v)] = {v};
  return g;
}

ExpansionResult verify_expansion(const BipartiteGraph& g, i64 sparsity, Rational eps,
                                 u64 subset_budget) {
  if (sparsity < 1) throw input_error("verify_expansion: sparsity must be at least 1");
  check_rational(eps, "eps");
  if (eps.num < 0 || eps.num >= eps.den) throw input_error("verify_expansion: eps must be in [0, 1)");
  const i64 max_size = std::min<i64>(sparsity, g.left);

  ExpansionResult res;
  std::vector<u32> stamp(static_cast<std::size_t>(g.right), 0);
  std::vector<i64> current;
  i64 distinct = 0;
  bool failed = false;

  // |N(S)| >= (1-eps) d |S|  <=>  den*|N(S)| >= (den-num)*d*|S|
  auto expands = [&](i64 size) {
    const unsigned __int128 lhs =
        static_cast<unsigned __int128>(eps.den) * static_cast<unsigned __int128>(distinct);
    const unsigned __int128 rhs = static_cast<unsigned __int128>(eps.den - eps.num) *
                                  static_cast<unsigned __int128>(g.degree) *
                                  static_cast<unsigned __int128>(size);
    return lhs >= rhs;
  };

  // iterative depth-first enumeration of all subsets of size <= max_size;
  // cursor.back() is the next candidate vertex at the current depth, and
  // popping a level removes the vertex that opened it
  std::vector<i64> path;
  std::vector<i64> cursor{0};
  while (!cursor.empty()) {
    i64& next = cursor.back();
    if (failed) break;
    if (next >= g.left) {
      cursor.pop_back();
      if (!path.empty()) {
        const i64 v = path.back();
        path.pop_back();
        for (i64 nb : g.adj[static_cast<std::size_t>(v)]) {
          if (--stamp[static_cast<std::size_t>(nb)] == 0) --distinct;
        }
      }
      continue;
    }
    const i64 v = next++;
    for (i64 nb : g.adj[static_cast<std::size_t>(v)]) {
      if (stamp[static_cast<std::size_t>(nb)]++ == 0) ++distinct;
    }
    path.push_back(v);
    if (++res.subsets_checked > subset_budget)
      throw budget_error("verify_expansion: subset budget exceeded");
    if (!expands(static_cast<i64>(path.size()))) {
      res.ok = false;
      res.witness = path;
      failed = true;
      break;
    }
    if (static_cast<i64>(path.size()) < max_size) {
      cursor.push_back(v + 1);
    } else {
      path.pop_back();
      for (i64 nb : g.adj[static_cast<std::size_t>(v)]) {
        if (--stamp[static_cast<std::size_t>(nb)] == 0) --distinct;
      }
    }
  }
  return res;
}

SparseMat adjacency_matrix(const BipartiteGraph& g, const RingContext& ctx) {
  SparseMat out(ctx, g.right, g.left);
  for (i64 v = 0; v < g.left; ++v) {
    std::vector<SvEntry> entries;
    entries.reserve(g.degree);
    for (i64 nb : g.adj[static_cast<std::size_t>(v)]) entries.push_back(SvEntry{nb, ctx.one()});
    out.set_col(v, SparseVec::from_entries(ctx, g.right, std::move(entries), true));
  }
  return out;
}

}  // namespace osmm
