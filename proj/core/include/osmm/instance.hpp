#pragma once

// Seeded generation of multiplication instances with prescribed input and
// output sparsity budgets, plus the brute-force oracle product.

#include "osmm/sparse.hpp"

namespace osmm {

enum class PlantStrategy { RandomSupport, RankStructured, Boundary };

struct InstanceSpec {
  i64 n = 0;
  RingContext ctx = RingContext::integers();
  double delta_in = 2.0;   // nnz(A), nnz(B) <= ceil(n^delta_in)
  double delta_out = 2.0;  // nnz(AB) <= ceil(n^delta_out); requires delta_out <= 2*delta_in
  u64 seed = 0;
  PlantStrategy strategy = PlantStrategy::RandomSupport;
};

struct Instance {
  SparseMat a;
  SparseMat b;
  SparseMat c;  // oracle product, computed with the column-sparse kernel
  i64 in_budget = 0;
  i64 out_budget = 0;
};

i64 sparsity_budget(i64 n, double delta);  // ceil(n^delta), clamped to [1, n^2]

// Budgets are asserted on the generated matrices and on the oracle product;
// an infeasible spec (delta_out > 2*delta_in, or a boundary plant that does
// not fit the input budget) throws input_error.
Instance gen_instance(const InstanceSpec& spec);

PlantStrategy parse_strategy(const std::string& name);
std::string strategy_name(PlantStrategy s);

}  // namespace osmm
