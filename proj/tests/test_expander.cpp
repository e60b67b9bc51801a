#include <doctest.h>

#include "support.hpp"

using namespace osmm;
using namespace testsup;

TEST_SUITE("expander") {

TEST_CASE("parameter derivation evaluates the formulas exactly") {
  // N=1024, K=16, eps=1/12, alpha=1
  const ExpanderParams p = derive_params(1024, 16, {1, 12}, {1, 1});
  CHECK(p.n_bits == 10);
  CHECK(p.k_bits == 4);
  CHECK(p.h == 960);  // ceil(2 * 10 * 4 * 12)
  CHECK(p.m == 1);    // ceil(4 / log2(960))
  CHECK(p.log2_q == 19);
  CHECK(p.q == mpz_class(1) << 19);
  CHECK(p.right_size == mpz_class(1) << 38);
  CHECK_FALSE(p.clamped);
}

TEST_CASE("parameter derivation at the smallest sizes clamps") {
  const ExpanderParams p = derive_params(2, 2, {1, 12}, {1, 1});
  CHECK(p.n_bits == 1);
  CHECK(p.k_bits == 1);
  CHECK(p.h == 24);  // ceil(2 * 1 * 1 * 12)
  CHECK(p.m == 1);
  const ExpanderParams clamped = derive_params(16, 1, {1, 12}, {1, 1});
  CHECK(clamped.sparsity == 2);
  CHECK(clamped.clamped);
}

TEST_CASE("full-sparsity parameters still cover the left side") {
  for (i64 n : {16, 64, 256}) {
    const ExpanderParams p = derive_params(n, n, {1, 12}, {1, 1});
    CHECK(p.right_size >= n);
    CHECK(p.k_bits == p.n_bits);
  }
}

TEST_CASE("parameter preconditions") {
  CHECK_THROWS_AS(derive_params(8, 9, {1, 12}, {1, 1}), input_error);
  CHECK_THROWS_AS(derive_params(8, 0, {1, 12}, {1, 1}), input_error);
  CHECK_THROWS_AS(derive_params(8, 4, {12, 12}, {1, 1}), input_error);
  CHECK_THROWS_AS(derive_params(8, 4, {0, 12}, {1, 1}), input_error);
  CHECK_THROWS_AS(derive_params(8, 4, {1, 12}, {0, 1}), input_error);
}

TEST_CASE("polynomial-evaluation graph structure") {
  const PvParams pv{8, 2, 1, 1, 16};
  const BipartiteGraph g = build_pv_expander(pv);
  CHECK(g.left == 16);
  CHECK(g.right == 64);  // q^(m+1)
  CHECK(g.degree == 8);
  for (const auto& nbrs : g.adj) CHECK(nbrs.size() == 8);

  // m = 1 means the neighbors of vertex v are (y, t_v(y)) for y in GF(8):
  // recompute from the digit expansion with independent field arithmetic
  const Gf2Field f8 = Gf2Field::smallest(3);
  for (i64 v = 0; v < g.left; ++v) {
    const u64 c0 = static_cast<u64>(v) % 8, c1 = static_cast<u64>(v) / 8;
    for (u64 y = 0; y < 8; ++y) {
      const u64 t_of_y = f8.add(c0, f8.mul(c1, y));
      const i64 code = static_cast<i64>(y * 8 + t_of_y);
      CHECK(g.adj[static_cast<std::size_t>(v)][y] == code);
    }
  }
}

TEST_CASE("distinct vertices share few neighbors when m = 1") {
  // degree-<2 polynomials agree on at most one point
  const BipartiteGraph g = build_pv_expander({8, 2, 1, 1, 64});
  for (i64 u = 0; u < g.left; ++u) {
    for (i64 v = u + 1; v < g.left; ++v) {
      std::vector<i64> shared;
      std::set_intersection(g.adj[static_cast<std::size_t>(u)].begin(),
                            g.adj[static_cast<std::size_t>(u)].end(),
                            g.adj[static_cast<std::size_t>(v)].begin(),
                            g.adj[static_cast<std::size_t>(v)].end(), std::back_inserter(shared));
      REQUIRE(shared.size() <= 1);
    }
  }
}

TEST_CASE("construction is deterministic") {
  const PvParams pv{8, 2, 2, 3, 50};
  const u64 h1 = build_pv_expander(pv).hash();
  const u64 h2 = build_pv_expander(pv).hash();
  const u64 h3 = build_pv_expander(pv).hash();
  CHECK(h1 == h2);
  CHECK(h2 == h3);
}

TEST_CASE("guards on infeasible construction parameters") {
  CHECK_THROWS_AS(build_pv_expander({6, 2, 1, 1, 16}), input_error);   // q not a power of two
  CHECK_THROWS_AS(build_pv_expander({8, 1, 1, 1, 16}), input_error);   // q^deg < left
  CHECK_THROWS_AS(build_pv_expander({4, 2, 30, 3, 8}), input_error);   // right side overflow
}

TEST_CASE("random graphs are reproducible and complete at d = right") {
  const BipartiteGraph a = build_random_expander(20, 5, 40, 9);
  const BipartiteGraph b = build_random_expander(20, 5, 40, 9);
  CHECK(a.hash() == b.hash());
  const BipartiteGraph c = build_random_expander(20, 5, 40, 10);
  CHECK(a.hash() != c.hash());

  const BipartiteGraph full = build_random_expander(4, 3, 3, 1);
  for (const auto& nbrs : full.adj) {
    CHECK(nbrs == std::vector<i64>{0, 1, 2});
  }
  CHECK_THROWS_AS(build_random_expander(4, 4, 3, 1), input_error);
}

TEST_CASE("expansion holds trivially for singletons") {
  const BipartiteGraph g = build_random_expander(30, 6, 64, 4);
  const ExpansionResult r = verify_expansion(g, 1, {1, 12});
  CHECK(r.ok);
  CHECK(r.subsets_checked == 30);
}

TEST_CASE("a crowded right side fails with a witness") {
  // four left vertices all mapped onto the same two right vertices
  BipartiteGraph g;
  g.left = 4;
  g.right = 2;
  g.degree = 2;
  g.adj = {{0, 1}, {0, 1}, {0, 1}, {0, 1}};
  const ExpansionResult r = verify_expansion(g, 2, {1, 12});
  CHECK_FALSE(r.ok);
  CHECK(r.witness.size() == 2);  // |N(S)| = 2 < (11/12) * 2 * 2
}

TEST_CASE("the small polynomial graph is a certified expander at K = 2") {
  const BipartiteGraph g = build_pv_expander({8, 2, 1, 1, 16});
  const ExpansionResult r = verify_expansion(g, 2, {1, 12});
  CHECK(r.ok);
  CHECK(r.subsets_checked == 16 + 120);
}

TEST_CASE("an undersized random graph fails verification; sized fixtures pass") {
  // d and the right side here are far too small for the slack at K = 4;
  // seed 1 fails immediately and no nearby seed fares better
  const BipartiteGraph bad = build_random_expander(64, 8, 128, 1);
  const ExpansionResult r = verify_expansion(bad, 4, {1, 12});
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.witness.empty());

  const BipartiteGraph good = build_random_expander(63, 12, 2048, 1);
  CHECK(verify_expansion(good, 2, {1, 12}).ok);
}

TEST_CASE("verifier agrees with the bitmask oracle on small graphs") {
  PhiloxStream rng(77, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const i64 left = 4 + static_cast<i64>(rng.next_below(9));    // up to 12
    const i64 right = 4 + static_cast<i64>(rng.next_below(13));  // up to 16
    const u32 d = 2 + static_cast<u32>(rng.next_below(3));
    const BipartiteGraph g = build_random_expander(left, d, right, rng.next_u64());
    const i64 k = 1 + static_cast<i64>(rng.next_below(4));
    const bool expected = expansion_oracle(g, k, {1, 12});
    REQUIRE(verify_expansion(g, k, {1, 12}).ok == expected);
  }
}

TEST_CASE("enumeration budget is enforced") {
  const BipartiteGraph g = build_random_expander(40, 4, 256, 2);
  CHECK_THROWS_AS(verify_expansion(g, 5, {1, 12}, /*subset_budget=*/100), budget_error);
}

TEST_CASE("matching graph expands losslessly") {
  const BipartiteGraph g = build_matching_graph(10);
  CHECK(verify_expansion(g, 10, {0, 1}).ok);  // eps = 0
}

TEST_CASE("adjacency matrix is the binary left-to-right incidence") {
  auto f = RingContext::prime_field(101);
  const BipartiteGraph g = build_pv_expander({4, 2, 1, 1, 10});
  const SparseMat a = adjacency_matrix(g, f);
  CHECK(a.rows() == g.right);
  CHECK(a.cols() == g.left);
  for (i64 j = 0; j < a.cols(); ++j) {
    CHECK(a.col(j).nnz() == g.degree);
    for (const SvEntry& e : a.col(j).entries()) CHECK(e.val == f.one());
  }
}

}  // TEST_SUITE
