#include "osmm/gfpoly.hpp"

#include <algorithm>
#include <bit>

namespace osmm {

namespace gf2x {

int degree(u64 a) { return a == 0 ? -1 : 63 - std::countl_zero(a); }

u64 mul(u64 a, u64 b) {
  if (degree(a) + degree(b) > 62) throw input_error("gf2x::mul: product degree overflows");
  u64 acc = 0;
  while (b != 0) {
    if (b & 1) acc ^= a;
    a <<= 1;
    b >>= 1;
  }
  return acc;
}

u64 mod(u64 a, u64 m) {
  if (m == 0) throw input_error("gf2x::mod: zero modulus");
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) {
    a ^= m << (da - dm);
  }
  return a;
}

u64 mulmod(u64 a, u64 b, u64 m) { return mod(mul(a, b), m); }

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    const u64 r = mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

namespace {

// x^(2^e) mod f by repeated squaring of the running value.
u64 square_iterated(u64 v, u32 e, u64 f) {
  for (u32 i = 0; i < e; ++i) v = mulmod(v, v, f);
  return v;
}

}  // namespace

bool is_irreducible(u64 f) {
  const int n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  // x^(2^n) == x mod f, and gcd(x^(2^(n/r)) - x, f) == 1 for prime r | n.
  const u64 x = 2;
  if (square_iterated(mod(x, f), static_cast<u32>(n), f) != mod(x, f)) return false;
  auto coprime_at = [&](int r) {
    const u64 w = square_iterated(mod(x, f), static_cast<u32>(n / r), f);
    return gcd(w ^ mod(x, f), f) == 1;
  };
  int rest = n;
  for (int r = 2; r * r <= rest; ++r) {
    if (rest % r != 0) continue;
    while (rest % r == 0) rest /= r;
    if (!coprime_at(r)) return false;
  }
  if (rest > 1 && !coprime_at(rest)) return false;
  return true;
}

u64 smallest_irreducible(u32 deg) {
  if (deg == 0 || deg > 62) throw input_error("gf2x::smallest_irreducible: degree out of range");
  const u64 lead = u64{1} << deg;
  for (u64 low = 0; low < lead; ++low) {
    if (is_irreducible(lead | low)) return lead | low;
  }
  throw std::logic_error("gf2x::smallest_irreducible: none found");
}

}  // namespace gf2x

Gf2Field::Gf2Field(u32 b, u64 modulus) : b_(b), modulus_(modulus) {
  if (b < 1 || b > 32) throw input_error("Gf2Field: extension degree must be in [1, 32]");
  if (gf2x::degree(modulus) != static_cast<int>(b))
    throw input_error("Gf2Field: modulus degree does not match the extension degree");
  if (!gf2x::is_irreducible(modulus)) throw input_error("Gf2Field: modulus is reducible");
}

Gf2Field Gf2Field::smallest(u32 b) { return Gf2Field(b, gf2x::smallest_irreducible(b)); }

u64 Gf2Field::mul(u64 a, u64 b) const {
  // canonical operands are below 2^32, so the carry-less product fits a word
  u64 wide = 0;
  while (b != 0) {
    if (b & 1) wide ^= a;
    a <<= 1;
    b >>= 1;
  }
  return gf2x::mod(wide, modulus_);
}

u64 Gf2Field::pow(u64 a, u64 e) const {
  u64 acc = 1;
  u64 base = gf2x::mod(a, modulus_);
  while (e != 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

u64 Gf2Field::inv(u64 a) const {
  if (gf2x::mod(a, modulus_) == 0) throw input_error("Gf2Field::inv: zero has no inverse");
  return pow(a, order() - 2);
}

PolyGF::PolyGF(Gf2Field field, std::vector<u64> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
  for (u64& c : coeffs_) {
    if (c >= field_.order()) throw input_error("PolyGF: coefficient outside the field");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PolyGF PolyGF::constant(const Gf2Field& f, u64 c) { return PolyGF(f, {c}); }

PolyGF PolyGF::x(const Gf2Field& f) { return PolyGF(f, {0, 1}); }

PolyGF PolyGF::from_index(const Gf2Field& f, u64 idx, u32 max_terms) {
  std::vector<u64> coeffs;
  const u64 q = f.order();
  for (u32 i = 0; i < max_terms && idx != 0; ++i) {
    coeffs.push_back(idx % q);
    idx /= q;
  }
  if (idx != 0) throw input_error("PolyGF::from_index: index exceeds the coefficient space");
  return PolyGF(f, std::move(coeffs));
}

namespace {

void check_same_field(const PolyGF& a, const PolyGF& b) {
  if (!(a.field() == b.field())) throw input_error("polynomial operands live in different fields");
}

}  // namespace

PolyGF poly_add(const PolyGF& a, const PolyGF& b) {
  check_same_field(a, b);
  std::vector<u64> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<u32>(i)) ^ b.coeff(static_cast<u32>(i));
  return PolyGF(a.field(), std::move(c));
}

PolyGF poly_mul(const PolyGF& a, const PolyGF& b) {
  check_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return PolyGF(a.field());
  std::vector<u64> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  const Gf2Field& f = a.field();
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      c[i + j] ^= f.mul(a.coeffs()[i], b.coeffs()[j]);
    }
  }
  return PolyGF(f, std::move(c));
}

PolyGF poly_mod(const PolyGF& a, const PolyGF& m) {
  check_same_field(a, m);
  if (m.is_zero()) throw input_error("poly_mod: zero modulus");
  const Gf2Field& f = a.field();
  std::vector<u64> r = a.coeffs();
  const int dm = m.degree();
  const u64 lead_inv = f.inv(m.coeffs().back());
  while (static_cast<int>(r.size()) - 1 >= dm) {
    const u64 top = r.back();
    if (top != 0) {
      const u64 factor = f.mul(top, lead_inv);
      const std::size_t shift = r.size() - 1 - static_cast<std::size_t>(dm);
      for (std::size_t i = 0; i < m.coeffs().size(); ++i) {
        r[shift + i] ^= f.mul(factor, m.coeffs()[i]);
      }
    }
    r.pop_back();
    while (!r.empty() && r.back() == 0 && static_cast<int>(r.size()) - 1 >= dm) r.pop_back();
  }
  return PolyGF(f, std::move(r));
}

PolyGF poly_mulmod(const PolyGF& a, const PolyGF& b, const PolyGF& m) {
  return poly_mod(poly_mul(a, b), m);
}

PolyGF poly_powmod(const PolyGF& base, u64 exponent, const PolyGF& m) {
  if (m.is_zero()) throw input_error("poly_powmod: zero modulus");
  PolyGF acc = poly_mod(PolyGF::constant(base.field(), 1), m);
  PolyGF sq = poly_mod(base, m);
  while (exponent != 0) {
    if (exponent & 1) acc = poly_mulmod(acc, sq, m);
    sq = poly_mulmod(sq, sq, m);
    exponent >>= 1;
  }
  return acc;
}

u64 poly_eval(const PolyGF& p, u64 point) {
  const Gf2Field& f = p.field();
  if (point >= f.order()) throw input_error("poly_eval: point outside the field");
  u64 acc = 0;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = f.mul(acc, point) ^ p.coeffs()[i];
  }
  return acc;
}

PolyGF poly_gcd(PolyGF a, PolyGF b) {
  while (!b.is_zero()) {
    PolyGF r = poly_mod(a, b);
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  // normalize to monic
  const Gf2Field& f = a.field();
  const u64 inv = f.inv(a.coeffs().back());
  std::vector<u64> c = a.coeffs();
  for (u64& v : c) v = f.mul(v, inv);
  return PolyGF(f, std::move(c));
}

bool is_irreducible(const PolyGF& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (!f.is_monic()) throw input_error("is_irreducible: polynomial must be monic");
  if (n == 1) return true;
  const u32 b = f.field().degree();
  const PolyGF x = poly_mod(PolyGF::x(f.field()), f);

  // v -> v^(q^e) is e*b squarings since q = 2^b.
  auto frobenius = [&](PolyGF v, u32 e) {
    for (u32 i = 0; i < e * b; ++i) v = poly_mulmod(v, v, f);
    return v;
  };

  if (!(frobenius(x, static_cast<u32>(n)) == x)) return false;
  int rest = n;
  auto coprime_at = [&](int r) {
    const PolyGF w = frobenius(x, static_cast<u32>(n / r));
    const PolyGF g = poly_gcd(poly_add(w, x), f);
    return g.degree() == 0;
  };
  for (int r = 2; r * r <= rest; ++r) {
    if (rest % r != 0) continue;
    while (rest % r == 0) rest /= r;
    if (!coprime_at(r)) return false;
  }
  if (rest > 1 && !coprime_at(rest)) return false;
  return true;
}

PolyGF find_irreducible(u32 q_bits, u32 n) {
  if (n < 1) throw input_error("find_irreducible: degree must be at least 1");
  const Gf2Field f = Gf2Field::smallest(q_bits);
  const u64 q = f.order();
  // Enumerate lower coefficient vectors as little-endian base-q digits; the
  // first hit is the lexicographically smallest monic irreducible. One of
  // roughly every n monic candidates is irreducible, so the scan is short.
  for (u64 idx = 0; idx != ~u64{0}; ++idx) {
    std::vector<u64> c(n + 1, 0);
    u64 rest = idx;
    for (u32 i = 0; i < n && rest != 0; ++i) {
      c[i] = rest % q;
      rest /= q;
    }
    if (rest != 0) break;  // scanned the whole degree-n space (tiny fields only)
    c[n] = 1;
    PolyGF candidate(f, std::move(c));
    if (is_irreducible(candidate)) return candidate;
  }
  throw std::logic_error("find_irreducible: search exhausted");
}

}  // namespace osmm
