#include "osmm/sparse.hpp"

#include <algorithm>
#include <atomic>

namespace osmm {

namespace {

std::atomic<u64> g_bound_checks{0};

void check_same_ctx(const RingContext& a, const RingContext& b) {
  if (!a.same_domain(b)) throw input_error("operands live in different ring contexts");
}

}  // namespace

u64 sparsity_bound_checks() { return g_bound_checks.load(std::memory_order_relaxed); }

SparseVec::SparseVec(RingContext ctx, i64 length) : ctx_(std::move(ctx)), length_(length) {
  if (length < 0) throw input_error("SparseVec: negative length");
}

SparseVec SparseVec::from_entries(RingContext ctx, i64 length, std::vector<SvEntry> entries,
                                  bool already_sorted) {
  SparseVec v(std::move(ctx), length);
  if (!already_sorted) {
    std::sort(entries.begin(), entries.end(),
              [](const SvEntry& a, const SvEntry& b) { return a.idx < b.idx; });
  }
  i64 prev = -1;
  for (const SvEntry& e : entries) {
    if (e.idx < 0 || e.idx >= length) throw input_error("SparseVec: index out of range");
    if (e.idx == prev) throw input_error("SparseVec: duplicate index");
    if (e.idx < prev) throw input_error("SparseVec: entries not sorted");
    if (v.ctx_.is_zero(e.val)) throw input_error("SparseVec: explicit zero entry");
    prev = e.idx;
  }
  v.entries_ = std::move(entries);
  return v;
}

RingElement SparseVec::get(i64 idx) const {
  if (idx < 0 || idx >= length_) throw input_error("SparseVec::get: index out of range");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), idx,
                             [](const SvEntry& e, i64 i) { return e.idx < i; });
  if (it != entries_.end() && it->idx == idx) return it->val;
  return ctx_.zero();
}

void SparseVec::check_valid() const {
  i64 prev = -1;
  for (const SvEntry& e : entries_) {
    if (e.idx <= prev || e.idx >= length_) throw std::logic_error("SparseVec: index order violated");
    if (ctx_.is_zero(e.val)) throw std::logic_error("SparseVec: stored zero");
    prev = e.idx;
  }
}

namespace {

// Merge with per-entry combine; drops results that cancel to zero.
SparseVec merge_vectors(const SparseVec& a, const SparseVec& b, bool subtract) {
  check_same_ctx(a.context(), b.context());
  if (a.length() != b.length()) throw dimension_error("vector length mismatch");
  const RingContext& ctx = a.context();
  std::vector<SvEntry> out;
  out.reserve(a.entries().size() + b.entries().size());
  auto ia = a.entries().begin(), ea = a.entries().end();
  auto ib = b.entries().begin(), eb = b.entries().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->idx < ib->idx)) {
      out.push_back(*ia++);
    } else if (ia == ea || ib->idx < ia->idx) {
      out.push_back(SvEntry{ib->idx, subtract ? ctx.neg(ib->val) : ib->val});
      ++ib;
    } else {
      RingElement v = subtract ? ctx.sub(ia->val, ib->val) : ctx.add(ia->val, ib->val);
      if (!ctx.is_zero(v)) out.push_back(SvEntry{ia->idx, std::move(v)});
      ++ia;
      ++ib;
    }
  }
  return SparseVec::from_entries(ctx, a.length(), std::move(out), /*already_sorted=*/true);
}

}  // namespace

SparseVec sv_add(const SparseVec& a, const SparseVec& b) { return merge_vectors(a, b, false); }
SparseVec sv_sub(const SparseVec& a, const SparseVec& b) { return merge_vectors(a, b, true); }

bool sv_equal(const SparseVec& a, const SparseVec& b) {
  if (!a.context().same_domain(b.context()) || a.length() != b.length() || a.nnz() != b.nnz())
    return false;
  for (i64 i = 0; i < a.nnz(); ++i) {
    const auto& ea = a.entries()[static_cast<std::size_t>(i)];
    const auto& eb = b.entries()[static_cast<std::size_t>(i)];
    if (ea.idx != eb.idx || ea.val != eb.val) return false;
  }
  return true;
}

SparseMat::SparseMat(RingContext ctx, i64 rows, i64 cols) : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw input_error("SparseMat: negative shape");
  columns_.assign(static_cast<std::size_t>(cols), SparseVec(ctx_, rows));
}

SparseMat SparseMat::identity(RingContext ctx, i64 n) {
  SparseMat m(ctx, n, n);
  for (i64 j = 0; j < n; ++j) {
    m.set_col(j, SparseVec::from_entries(m.ctx_, n, {SvEntry{j, m.ctx_.one()}}, true));
  }
  return m;
}

SparseMat SparseMat::from_columns(RingContext ctx, i64 rows, std::vector<SparseVec> columns) {
  SparseMat m(std::move(ctx), rows, static_cast<i64>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_col(static_cast<i64>(j), std::move(columns[j]));
  return m;
}

i64 SparseMat::nnz() const {
  i64 total = 0;
  for (const SparseVec& c : columns_) total += c.nnz();
  return total;
}

const SparseVec& SparseMat::col(i64 j) const {
  if (j < 0 || j >= cols_) throw input_error("SparseMat::col: index out of range");
  return columns_[static_cast<std::size_t>(j)];
}

void SparseMat::set_col(i64 j, SparseVec v) {
  if (j < 0 || j >= cols_) throw input_error("SparseMat::set_col: index out of range");
  check_same_ctx(ctx_, v.context());
  if (v.length() != rows_) throw dimension_error("SparseMat::set_col: column length mismatch");
  columns_[static_cast<std::size_t>(j)] = std::move(v);
}

void SparseMat::check_valid() const {
  if (static_cast<i64>(columns_.size()) != cols_) throw std::logic_error("SparseMat: column count");
  for (const SparseVec& c : columns_) {
    if (c.length() != rows_) throw std::logic_error("SparseMat: column length");
    c.check_valid();
  }
}

bool mat_equal(const SparseMat& a, const SparseMat& b) {
  if (!a.context().same_domain(b.context()) || a.rows() != b.rows() || a.cols() != b.cols())
    return false;
  for (i64 j = 0; j < a.cols(); ++j) {
    if (!sv_equal(a.col(j), b.col(j))) return false;
  }
  return true;
}

namespace {

SparseMat merge_matrices(const SparseMat& a, const SparseMat& b, bool subtract) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("matrix shape mismatch");
  SparseMat out(a.context(), a.rows(), a.cols());
  for (i64 j = 0; j < a.cols(); ++j) {
    out.set_col(j, subtract ? sv_sub(a.col(j), b.col(j)) : sv_add(a.col(j), b.col(j)));
  }
  return out;
}

void check_output_bound(const SparseMat& a, const SparseMat& b, const SparseMat& c) {
  i64 t = 0;
  for (i64 j = 0; j < a.cols(); ++j) t = std::max(t, a.col(j).nnz());
  const unsigned __int128 bound = static_cast<unsigned __int128>(t) * static_cast<unsigned __int128>(b.nnz());
  if (static_cast<unsigned __int128>(c.nnz()) > bound)
    throw std::logic_error("product sparsity exceeds the outer-product bound");
  g_bound_checks.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

SparseMat mat_add(const SparseMat& a, const SparseMat& b) { return merge_matrices(a, b, false); }
SparseMat mat_sub(const SparseMat& a, const SparseMat& b) { return merge_matrices(a, b, true); }

SparseMat sparse_mm(const SparseMat& a, const SparseMat& b) {
  check_same_ctx(a.context(), b.context());
  if (a.cols() != b.rows()) throw dimension_error("sparse_mm: inner dimensions differ");
  const RingContext& ctx = a.context();
  const i64 m = a.rows();
  SparseMat out(ctx, m, b.cols());

  std::vector<RingElement> acc(static_cast<std::size_t>(m), ctx.zero());
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  std::vector<i64> touched;

  for (i64 j = 0; j < b.cols(); ++j) {
    touched.clear();
    for (const SvEntry& bkj : b.col(j).entries()) {
      for (const SvEntry& aik : a.col(bkj.idx).entries()) {
        RingElement prod = ctx.mul(aik.val, bkj.val);
        const std::size_t i = static_cast<std::size_t>(aik.idx);
        if (!used[i]) {
          used[i] = 1;
          touched.push_back(aik.idx);
          acc[i] = std::move(prod);
        } else {
          acc[i] = ctx.add(acc[i], prod);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    std::vector<SvEntry> entries;
    entries.reserve(touched.size());
    for (i64 i : touched) {
      const std::size_t ii = static_cast<std::size_t>(i);
      if (!ctx.is_zero(acc[ii])) entries.push_back(SvEntry{i, std::move(acc[ii])});
      used[ii] = 0;
      acc[ii] = ctx.zero();
    }
    out.set_col(j, SparseVec::from_entries(ctx, m, std::move(entries), true));
  }
  check_output_bound(a, b, out);
  return out;
}

SparseMat dense_mm(const SparseMat& a, const SparseMat& b, i64 dense_budget) {
  check_same_ctx(a.context(), b.context());
  if (a.cols() != b.rows()) throw dimension_error("dense_mm: inner dimensions differ");
  const i64 m = a.rows(), n = a.cols(), p = b.cols();
  auto over = [&](i64 r, i64 c) {
    return r != 0 && c != 0 && r > dense_budget / c;
  };
  if (over(m, n) || over(n, p) || over(m, p)) return sparse_mm(a, b);

  const RingContext& ctx = a.context();
  std::vector<RingElement> ad(static_cast<std::size_t>(m * n), ctx.zero());
  std::vector<RingElement> bd(static_cast<std::size_t>(n * p), ctx.zero());
  for (i64 k = 0; k < n; ++k) {
    for (const SvEntry& e : a.col(k).entries()) ad[static_cast<std::size_t>(k * m + e.idx)] = e.val;
  }
  for (i64 j = 0; j < p; ++j) {
    for (const SvEntry& e : b.col(j).entries()) bd[static_cast<std::size_t>(j * n + e.idx)] = e.val;
  }

  SparseMat out(ctx, m, p);
  std::vector<RingElement> cd(static_cast<std::size_t>(m), ctx.zero());
  for (i64 j = 0; j < p; ++j) {
    for (i64 i = 0; i < m; ++i) cd[static_cast<std::size_t>(i)] = ctx.zero();
    for (i64 k = 0; k < n; ++k) {
      const RingElement& bkj = bd[static_cast<std::size_t>(j * n + k)];
      const RingElement* acol = ad.data() + k * m;
      for (i64 i = 0; i < m; ++i) {
        cd[static_cast<std::size_t>(i)] =
            ctx.add(cd[static_cast<std::size_t>(i)], ctx.mul(acol[i], bkj));
      }
    }
    std::vector<SvEntry> entries;
    for (i64 i = 0; i < m; ++i) {
      if (!ctx.is_zero(cd[static_cast<std::size_t>(i)]))
        entries.push_back(SvEntry{i, cd[static_cast<std::size_t>(i)]});
    }
    out.set_col(j, SparseVec::from_entries(ctx, m, std::move(entries), true));
  }
  check_output_bound(a, b, out);
  return out;
}

SparseMat transpose(const SparseMat& a) {
  const RingContext& ctx = a.context();
  std::vector<std::vector<SvEntry>> rows(static_cast<std::size_t>(a.rows()));
  for (i64 j = 0; j < a.cols(); ++j) {
    for (const SvEntry& e : a.col(j).entries()) {
      rows[static_cast<std::size_t>(e.idx)].push_back(SvEntry{j, e.val});
    }
  }
  SparseMat out(ctx, a.cols(), a.rows());
  for (i64 i = 0; i < a.rows(); ++i) {
    out.set_col(i, SparseVec::from_entries(ctx, a.cols(),
                                           std::move(rows[static_cast<std::size_t>(i)]), true));
  }
  return out;
}

SparseMat restrict_columns(const SparseMat& b, const std::vector<i64>& j) {
  i64 prev = -1;
  for (i64 idx : j) {
    if (idx < 0 || idx >= b.cols()) throw input_error("restrict_columns: index out of range");
    if (idx <= prev) throw input_error("restrict_columns: indices must be strictly increasing");
    prev = idx;
  }
  SparseMat out(b.context(), b.rows(), static_cast<i64>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) out.set_col(static_cast<i64>(k), b.col(j[k]));
  return out;
}

std::pair<SparseMat, SparseMat> pad_to_square(const SparseMat& a, const SparseMat& b) {
  check_same_ctx(a.context(), b.context());
  if (a.cols() != b.rows()) throw dimension_error("pad_to_square: inner dimensions differ");
  const i64 n = a.cols();
  if (a.rows() > n || b.cols() > n) throw input_error("pad_to_square: outer dimension exceeds the inner one");
  SparseMat ap(a.context(), n, n);
  for (i64 j = 0; j < n; ++j) {
    std::vector<SvEntry> entries(a.col(j).entries());
    ap.set_col(j, SparseVec::from_entries(a.context(), n, std::move(entries), true));
  }
  SparseMat bp(b.context(), n, n);
  for (i64 j = 0; j < b.cols(); ++j) bp.set_col(j, b.col(j));
  return {std::move(ap), std::move(bp)};
}

SparseMat unpad(const SparseMat& c, i64 rows, i64 cols) {
  if (rows > c.rows() || cols > c.cols()) throw input_error("unpad: block exceeds the matrix");
  SparseMat out(c.context(), rows, cols);
  for (i64 j = 0; j < cols; ++j) {
    std::vector<SvEntry> entries;
    for (const SvEntry& e : c.col(j).entries()) {
      if (e.idx < rows) entries.push_back(e);
    }
    out.set_col(j, SparseVec::from_entries(c.context(), rows, std::move(entries), true));
  }
  return out;
}

SparsityStats sparsity_stats(const SparseMat& m) {
  SparsityStats s;
  s.col_nnz.reserve(static_cast<std::size_t>(m.cols()));
  for (i64 j = 0; j < m.cols(); ++j) {
    const i64 k = m.col(j).nnz();
    s.col_nnz.push_back(k);
    s.nnz += k;
    s.max_col_nnz = std::max(s.max_col_nnz, k);
    ++s.histogram[k];
  }
  return s;
}

}  // namespace osmm
