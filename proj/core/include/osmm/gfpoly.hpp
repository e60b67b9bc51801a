#pragma once

// Binary extension field scalars (bit patterns in a machine word) and dense
// univariate polynomials over them. Only what the expander construction and
// the BinaryField ring need: carry-less multiplication, modular reduction,
// irreducibility testing, and deterministic irreducible-polynomial search.

#include <vector>

#include "osmm/common.hpp"

namespace osmm {

namespace gf2x {

// Bit-packed polynomials over GF(2); bit i is the coefficient of x^i.
int degree(u64 a);                 // -1 for the zero polynomial
u64 mul(u64 a, u64 b);             // carry-less product, degrees must fit 63 bits
u64 mod(u64 a, u64 m);
u64 mulmod(u64 a, u64 b, u64 m);
u64 gcd(u64 a, u64 b);
bool is_irreducible(u64 f);        // Rabin criterion over GF(2)
u64 smallest_irreducible(u32 degree);

}  // namespace gf2x

// Arithmetic in GF(2^b) = GF(2)[x]/(modulus); elements are b-bit patterns.
class Gf2Field {
 public:
  Gf2Field(u32 b, u64 modulus);
  static Gf2Field smallest(u32 b);  // lexicographically smallest modulus

  u32 degree() const { return b_; }
  u64 modulus() const { return modulus_; }
  u64 order() const { return u64{1} << b_; }

  u64 add(u64 a, u64 b) const { return a ^ b; }
  u64 mul(u64 a, u64 b) const;
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;  // a != 0

  friend bool operator==(const Gf2Field& a, const Gf2Field& b) {
    return a.b_ == b.b_ && a.modulus_ == b.modulus_;
  }

 private:
  u32 b_;
  u64 modulus_;
};

// Polynomial over GF(2^b), coefficients lowest degree first, no trailing
// zeros. The zero polynomial has degree -1.
class PolyGF {
 public:
  explicit PolyGF(Gf2Field field) : field_(field) {}
  PolyGF(Gf2Field field, std::vector<u64> coeffs);

  static PolyGF constant(const Gf2Field& f, u64 c);
  static PolyGF x(const Gf2Field& f);
  // Coefficients are the little-endian base-q digits of idx; at most
  // max_terms digits, so the result has degree < max_terms.
  static PolyGF from_index(const Gf2Field& f, u64 idx, u32 max_terms);

  const Gf2Field& field() const { return field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  u64 coeff(u32 i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<u64>& coeffs() const { return coeffs_; }

  friend bool operator==(const PolyGF& a, const PolyGF& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Gf2Field field_;
  std::vector<u64> coeffs_;
};

PolyGF poly_add(const PolyGF& a, const PolyGF& b);
PolyGF poly_mul(const PolyGF& a, const PolyGF& b);
PolyGF poly_mod(const PolyGF& a, const PolyGF& m);
PolyGF poly_mulmod(const PolyGF& a, const PolyGF& b, const PolyGF& m);
PolyGF poly_powmod(const PolyGF& base, u64 exponent, const PolyGF& m);
u64 poly_eval(const PolyGF& p, u64 point);
PolyGF poly_gcd(PolyGF a, PolyGF b);  // monic gcd, or zero if both zero

bool is_irreducible(const PolyGF& f);
// Lexicographically smallest monic irreducible polynomial of degree n over
// GF(2^q_bits); deterministic.
PolyGF find_irreducible(u32 q_bits, u32 n);

}  // namespace osmm
