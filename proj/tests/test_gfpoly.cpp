#include <doctest.h>

#include "osmm/gfpoly.hpp"

using namespace osmm;

namespace {

// Trial division by every lower-degree monic polynomial; the independent
// irreducibility oracle for small fields.
bool irreducible_by_factoring(const PolyGF& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const Gf2Field& field = f.field();
  const u64 q = field.order();
  for (int d = 1; d <= n / 2; ++d) {
    u64 count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (u64 idx = 0; idx < count; ++idx) {
      std::vector<u64> c(static_cast<std::size_t>(d) + 1, 0);
      u64 rest = idx;
      for (int i = 0; i < d; ++i) {
        c[static_cast<std::size_t>(i)] = rest % q;
        rest /= q;
      }
      c[static_cast<std::size_t>(d)] = 1;
      if (poly_mod(f, PolyGF(field, std::move(c))).is_zero()) return false;
    }
  }
  return true;
}

PolyGF from_bits(const Gf2Field& f, std::initializer_list<u64> coeffs) {
  return PolyGF(f, std::vector<u64>(coeffs));
}

}  // namespace

TEST_SUITE("gfpoly") {

TEST_CASE("degree sentinel distinguishes zero from constants") {
  const Gf2Field f2 = Gf2Field::smallest(1);
  CHECK(PolyGF(f2).degree() == -1);
  CHECK(PolyGF::constant(f2, 1).degree() == 0);
  CHECK(PolyGF(f2, {0}).degree() == -1);  // trailing zeros stripped
}

TEST_CASE("smallest irreducible polynomials over GF(2) and GF(4)") {
  const PolyGF p11 = find_irreducible(1, 1);
  CHECK(p11 == PolyGF::x(p11.field()));  // x precedes x + 1

  const PolyGF p12 = find_irreducible(1, 2);
  CHECK(p12 == from_bits(p12.field(), {1, 1, 1}));  // x^2 + x + 1

  const PolyGF p22 = find_irreducible(2, 2);
  CHECK(p22.degree() == 2);
  CHECK(p22.is_monic());
  // no root in GF(4)
  for (u64 y = 0; y < 4; ++y) CHECK(poly_eval(p22, y) != 0);
  // gcd-based check: shares no factor with any linear polynomial
  for (u64 r = 0; r < 4; ++r) {
    const PolyGF lin = from_bits(p22.field(), {r, 1});
    CHECK(poly_gcd(p22, lin).degree() == 0);
  }
  // minimality: no smaller monic quadratic is irreducible
  const u64 found = p22.coeff(0) + 4 * p22.coeff(1);
  for (u64 idx = 0; idx < found; ++idx) {
    const PolyGF cand(p22.field(), {idx % 4, idx / 4, 1});
    CHECK_FALSE(irreducible_by_factoring(cand));
  }
}

TEST_CASE("irreducibility criterion agrees with exhaustive factoring, both directions") {
  for (u32 b = 1; b <= 2; ++b) {
    const Gf2Field f = Gf2Field::smallest(b);
    const u64 q = f.order();
    for (u32 n = 1; n <= 4; ++n) {
      u64 count = 1;
      for (u32 i = 0; i < n; ++i) count *= q;
      for (u64 idx = 0; idx < count; ++idx) {
        std::vector<u64> c(n + 1, 0);
        u64 rest = idx;
        for (u32 i = 0; i < n; ++i) {
          c[i] = rest % q;
          rest /= q;
        }
        c[n] = 1;
        const PolyGF cand(f, std::move(c));
        REQUIRE(is_irreducible(cand) == irreducible_by_factoring(cand));
      }
    }
  }
}

TEST_CASE("power-mod agrees with iterated multiplication") {
  const Gf2Field f4 = Gf2Field::smallest(2);
  const PolyGF m = find_irreducible(2, 3);
  const PolyGF base = from_bits(f4, {2, 1, 3});
  PolyGF iterated = poly_mod(PolyGF::constant(f4, 1), m);
  for (u64 e = 0; e <= 64; ++e) {
    CHECK(poly_powmod(base, e, m) == iterated);
    iterated = poly_mulmod(iterated, base, m);
  }
}

TEST_CASE("power-mod identities") {
  const Gf2Field f2 = Gf2Field::smallest(1);
  const PolyGF m = from_bits(f2, {1, 1, 1});  // x^2 + x + 1
  const PolyGF t = from_bits(f2, {0, 1});     // x
  CHECK(poly_powmod(t, 1, m) == t);
  CHECK(poly_powmod(t, 0, m) == PolyGF::constant(f2, 1));
  CHECK(poly_powmod(t, 4, m) == t);  // x^2 = x+1, x^4 = (x+1)^2 = x^2+1 = x
  CHECK_THROWS_AS(poly_powmod(t, 3, PolyGF(f2)), input_error);
}

TEST_CASE("evaluation is Horner's rule") {
  const Gf2Field f2 = Gf2Field::smallest(1);
  CHECK(poly_eval(PolyGF(f2), 1) == 0);
  CHECK(poly_eval(PolyGF::constant(f2, 1), 0) == 1);
  CHECK(poly_eval(from_bits(f2, {1, 1, 1}), 1) == 1);  // 1 + 1 + 1 in char 2

  const Gf2Field f8 = Gf2Field::smallest(3);
  const PolyGF p = from_bits(f8, {3, 0, 5});  // 5 x^2 + 3
  for (u64 y = 0; y < 8; ++y) {
    CHECK(poly_eval(p, y) == (f8.mul(5, f8.mul(y, y)) ^ 3));
  }
}

TEST_CASE("field inverses multiply back to one") {
  for (u32 b : {1u, 2u, 3u, 8u}) {
    const Gf2Field f = Gf2Field::smallest(b);
    for (u64 v = 1; v < f.order(); ++v) {
      REQUIRE(f.mul(v, f.inv(v)) == 1);
    }
    CHECK_THROWS_AS(f.inv(0), input_error);
  }
}

TEST_CASE("polynomial index enumeration uses little-endian digits") {
  const Gf2Field f8 = Gf2Field::smallest(3);
  const PolyGF p = PolyGF::from_index(f8, 5 + 8 * 3, 2);  // digits (5, 3)
  CHECK(p.coeff(0) == 5);
  CHECK(p.coeff(1) == 3);
  CHECK_THROWS_AS(PolyGF::from_index(f8, 64, 2), input_error);
}

}  // TEST_SUITE
