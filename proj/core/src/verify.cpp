#include "osmm/verify.hpp"

#include <gmpxx.h>

#include "osmm/philox.hpp"

namespace osmm {

i64 verifier_rows(u32 confidence, i64 m, i64 n, i64 p) {
  if (m < 1 || n < 1 || p < 1) throw input_error("verifier_rows: dimensions must be positive");
  if (confidence < 1) throw input_error("verifier_rows: confidence must be at least 1");
  // ceil((c+1) * log2(mnp)) = ceil(log2((mnp)^(c+1))), computed exactly
  mpz_class prod = mpz_class(static_cast<long>(m)) * static_cast<long>(n) * static_cast<long>(p);
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), prod.get_mpz_t(), confidence + 1);
  if (power == 1) return 1;
  mpz_class pm1 = power - 1;
  return std::max<i64>(1, static_cast<i64>(mpz_sizeinbase(pm1.get_mpz_t(), 2)));
}

SparseMat sample_binary_matrix(const RingContext& ctx, i64 rows, i64 cols, u64 seed) {
  // row r reads bits from stream r; assembled column-major for the sparse layout
  std::vector<std::vector<i64>> col_rows(static_cast<std::size_t>(cols));
  for (i64 r = 0; r < rows; ++r) {
    PhiloxStream stream(seed, static_cast<u64>(r));
    for (i64 c = 0; c < cols; ++c) {
      if (stream.next_bit()) col_rows[static_cast<std::size_t>(c)].push_back(r);
    }
  }
  SparseMat x(ctx, rows, cols);
  for (i64 c = 0; c < cols; ++c) {
    std::vector<SvEntry> entries;
    entries.reserve(col_rows[static_cast<std::size_t>(c)].size());
    for (i64 r : col_rows[static_cast<std::size_t>(c)]) entries.push_back(SvEntry{r, ctx.one()});
    x.set_col(c, SparseVec::from_entries(ctx, rows, std::move(entries), true));
  }
  return x;
}

namespace {

std::vector<i64> colmmv_impl(const SparseMat& a, const SparseMat& b, const SparseMat& c_prime,
                             const VerifierConfig& cfg, bool sparse_kernel) {
  if (!a.context().same_domain(b.context()) || !a.context().same_domain(c_prime.context()))
    throw input_error("column verification: operands live in different ring contexts");
  const i64 m = a.rows(), n = a.cols(), p = b.cols();
  if (b.rows() != n) throw dimension_error("column verification: inner dimensions differ");
  if (c_prime.rows() != m || c_prime.cols() != p)
    throw dimension_error("column verification: candidate shape differs from the product");

  const i64 rows = verifier_rows(cfg.confidence, m, n, p);
  const SparseMat x = sample_binary_matrix(a.context(), rows, m, cfg.seed);

  // D = ((X A) B) - (X C')
  SparseMat d;
  if (sparse_kernel) {
    d = mat_sub(sparse_mm(sparse_mm(x, a), b), sparse_mm(x, c_prime));
  } else {
    d = mat_sub(dense_mm(dense_mm(x, a), b), dense_mm(x, c_prime));
  }
  std::vector<i64> out;
  for (i64 j = 0; j < p; ++j) {
    if (d.col(j).nnz() != 0) out.push_back(j);
  }
  return out;
}

}  // namespace

std::vector<i64> column_wise_mmv(const SparseMat& a, const SparseMat& b, const SparseMat& c_prime,
                                 const VerifierConfig& cfg) {
  return colmmv_impl(a, b, c_prime, cfg, /*sparse_kernel=*/false);
}

std::vector<i64> column_wise_mmv_sparse(const SparseMat& a, const SparseMat& b,
                                        const SparseMat& c_prime, const VerifierConfig& cfg) {
  return colmmv_impl(a, b, c_prime, cfg, /*sparse_kernel=*/true);
}

}  // namespace osmm
