#include "osmm/instance.hpp"

#include <algorithm>
#include <cmath>

#include "osmm/philox.hpp"

namespace osmm {

i64 sparsity_budget(i64 n, double delta) {
  if (n < 1) throw input_error("sparsity_budget: size must be positive");
  if (delta < 0.0 || delta > 2.0) throw input_error("sparsity_budget: exponent must be in [0, 2]");
  const long double raw = std::pow(static_cast<long double>(n), static_cast<long double>(delta));
  i64 budget = static_cast<i64>(std::ceil(raw - 1e-9L));
  budget = std::max<i64>(budget, 1);
  return std::min(budget, n * n);
}

PlantStrategy parse_strategy(const std::string& name) {
  if (name == "random-support") return PlantStrategy::RandomSupport;
  if (name == "rank-structured") return PlantStrategy::RankStructured;
  if (name == "boundary") return PlantStrategy::Boundary;
  throw input_error("unknown planting strategy '" + name + "'");
}

std::string strategy_name(PlantStrategy s) {
  switch (s) {
    case PlantStrategy::RandomSupport:
      return "random-support";
    case PlantStrategy::RankStructured:
      return "rank-structured";
    case PlantStrategy::Boundary:
      return "boundary";
  }
  throw std::logic_error("unreachable strategy");
}

namespace {

RingElement random_nonzero(const RingContext& ctx, PhiloxStream& rng) {
  switch (ctx.kind()) {
    case RingKind::Integers: {
      const i64 v = static_cast<i64>(rng.next_below(198)) - 99;  // [-99, 98]
      return ctx.from_int(v >= 0 ? v + 1 : v);                   // skip zero
    }
    case RingKind::PrimeField:
      return ctx.from_int(static_cast<long>(rng.next_below(ctx.prime() - 1) + 1));
    case RingKind::BinaryField:
      return ctx.from_bits(rng.next_below((u64{1} << ctx.extension_degree()) - 1) + 1);
  }
  throw std::logic_error("unreachable ring kind");
}

std::vector<i64> sample_distinct(i64 population, i64 count, PhiloxStream& rng) {
  if (count > population) throw input_error("sample_distinct: not enough population");
  std::vector<i64> picked;
  picked.reserve(static_cast<std::size_t>(count));
  if (count * 3 >= population) {
    std::vector<i64> pool(static_cast<std::size_t>(population));
    for (i64 i = 0; i < population; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (i64 i = 0; i < count; ++i) {
      const u64 j = rng.next_below(static_cast<u64>(population - i)) + static_cast<u64>(i);
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
      picked.push_back(pool[static_cast<std::size_t>(i)]);
    }
  } else {
    while (static_cast<i64>(picked.size()) < count) {
      const i64 cand = static_cast<i64>(rng.next_below(static_cast<u64>(population)));
      if (std::find(picked.begin(), picked.end(), cand) == picked.end()) picked.push_back(cand);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

SparseMat plant_block(const RingContext& ctx, i64 n, const std::vector<i64>& row_ids,
                      const std::vector<i64>& col_ids, i64 budget, bool full, PhiloxStream& rng) {
  SparseMat m(ctx, n, n);
  i64 remaining = budget;
  for (i64 c : col_ids) {
    std::vector<SvEntry> entries;
    for (i64 r : row_ids) {
      if (remaining <= 0) break;
      if (!full && rng.next_below(10) >= 7) continue;  // ~70% fill
      entries.push_back(SvEntry{r, random_nonzero(ctx, rng)});
      --remaining;
    }
    // a structurally empty column would drop the middle index entirely;
    // keep at least one entry while the budget allows
    if (entries.empty() && remaining > 0) {
      entries.push_back(SvEntry{row_ids[static_cast<std::size_t>(
                            rng.next_below(static_cast<u64>(row_ids.size())))],
                        random_nonzero(ctx, rng)});
      --remaining;
    }
    m.set_col(c, SparseVec::from_entries(ctx, n, std::move(entries), false));
  }
  return m;
}

}  // namespace

Instance gen_instance(const InstanceSpec& spec) {
  if (spec.n < 1) throw input_error("gen_instance: size must be positive");
  if (spec.delta_in < 0 || spec.delta_in > 2 || spec.delta_out < 0 || spec.delta_out > 2)
    throw input_error("gen_instance: exponents must be in [0, 2]");
  if (spec.delta_out > 2 * spec.delta_in + 1e-9)
    throw input_error("gen_instance: output exponent above twice the input exponent is infeasible");

  const RingContext& ctx = spec.ctx;
  const i64 n = spec.n;
  Instance inst{SparseMat(ctx, n, n), SparseMat(ctx, n, n), SparseMat(ctx, n, n),
                sparsity_budget(n, spec.delta_in), sparsity_budget(n, spec.delta_out)};

  PhiloxStream rng(spec.seed, 0x696e7374u);

  if (spec.strategy == PlantStrategy::Boundary) {
    // t source columns of exactly t nonzeros each, copied into t output
    // columns through a selector, so the product has exactly t columns of
    // sparsity exactly t
    i64 t = 1;
    while (static_cast<long double>(t) * t <
           std::pow(static_cast<long double>(n), static_cast<long double>(spec.delta_out)) - 1e-9L)
      ++t;
    if (t > n) t = n;
    if (t * t > inst.in_budget)
      throw input_error("gen_instance: boundary plant does not fit the input budget");
    const std::vector<i64> sources = sample_distinct(n, t, rng);
    const std::vector<i64> targets = sample_distinct(n, t, rng);
    for (i64 j = 0; j < t; ++j) {
      const std::vector<i64> rows = sample_distinct(n, t, rng);
      std::vector<SvEntry> entries;
      for (i64 r : rows) entries.push_back(SvEntry{r, random_nonzero(ctx, rng)});
      inst.a.set_col(sources[static_cast<std::size_t>(j)],
                     SparseVec::from_entries(ctx, n, std::move(entries), true));
      inst.b.set_col(targets[static_cast<std::size_t>(j)],
                     SparseVec::from_entries(
                         ctx, n, {SvEntry{sources[static_cast<std::size_t>(j)], ctx.one()}}, true));
    }
    inst.out_budget = std::max(inst.out_budget, t * t);
  } else {
    // supports confined to a row block times a column block whose area is
    // within the output budget; the middle dimension carries the density
    const i64 s_out = inst.out_budget;
    i64 u_r = 1;
    while ((u_r + 1) * (u_r + 1) <= s_out && u_r + 1 <= n) ++u_r;
    const i64 u_c = std::max<i64>(1, std::min(n, s_out / u_r));
    const i64 w = std::max<i64>(
        1, std::min({n, inst.in_budget / std::max<i64>(u_r, 1), inst.in_budget / std::max<i64>(u_c, 1)}));
    const std::vector<i64> rows = sample_distinct(n, u_r, rng);
    const std::vector<i64> cols = sample_distinct(n, u_c, rng);
    const std::vector<i64> mids = sample_distinct(n, w, rng);
    const bool full = spec.strategy == PlantStrategy::RankStructured;
    inst.a = plant_block(ctx, n, rows, mids, inst.in_budget, full, rng);
    inst.b = plant_block(ctx, n, mids, cols, inst.in_budget, full, rng);
  }

  inst.c = sparse_mm(inst.a, inst.b);
  if (inst.a.nnz() > inst.in_budget || inst.b.nnz() > inst.in_budget)
    throw std::logic_error("gen_instance: input budget violated");
  if (inst.c.nnz() > inst.out_budget) throw std::logic_error("gen_instance: output budget violated");
  return inst;
}

}  // namespace osmm
