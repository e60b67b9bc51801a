#include "osmm/ring.hpp"

#include <cctype>

#include "osmm/gfpoly.hpp"

namespace osmm {

namespace {

bool is_prime_u64(u64 p) {
  mpz_class z(0);
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &p);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

u64 mpz_to_u64(const mpz_class& z) {
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(u64), 0, 0, z.get_mpz_t());
  return out;
}

u64 mulmod_u64(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace

RingContext RingContext::integers() {
  auto rep = std::make_shared<detail::CtxRep>();
  rep->kind = RingKind::Integers;
  return RingContext(std::move(rep));
}

RingContext RingContext::prime_field(u64 p) {
  if (p < 2 || p >= (u64{1} << 63)) throw input_error("prime_field: modulus out of range");
  if (!is_prime_u64(p)) throw input_error("prime_field: modulus is not prime");
  auto rep = std::make_shared<detail::CtxRep>();
  rep->kind = RingKind::PrimeField;
  rep->p = p;
  return RingContext(std::move(rep));
}

RingContext RingContext::binary_field(u32 b) {
  if (b < 1 || b > 32) throw input_error("binary_field: degree must be in [1, 32]");
  return binary_field(b, gf2x::smallest_irreducible(b));
}

RingContext RingContext::binary_field(u32 b, u64 modulus) {
  Gf2Field check(b, modulus);  // validates degree and irreducibility
  auto rep = std::make_shared<detail::CtxRep>();
  rep->kind = RingKind::BinaryField;
  rep->b = b;
  rep->modulus = modulus;
  return RingContext(std::move(rep));
}

RingContext RingContext::from_tag(const std::string& tag) {
  if (tag == "Z") return integers();
  if (tag.rfind("Fp:", 0) == 0) {
    const std::string digits = tag.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw input_error("ring tag: bad prime in '" + tag + "'");
    mpz_class p(digits, 10);
    if (mpz_sizeinbase(p.get_mpz_t(), 2) > 63)
      throw input_error("ring tag: prime too large in '" + tag + "'");
    return prime_field(mpz_to_u64(p));
  }
  if (tag.rfind("F2e:", 0) == 0) {
    const std::string rest = tag.substr(4);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw input_error("ring tag: expected F2e:<b>:<modulus-hex>");
    const std::string bs = rest.substr(0, colon);
    const std::string hex = rest.substr(colon + 1);
    if (bs.empty() || bs.find_first_not_of("0123456789") != std::string::npos)
      throw input_error("ring tag: bad degree in '" + tag + "'");
    if (hex.empty() || hex.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
      throw input_error("ring tag: bad modulus hex in '" + tag + "'");
    const unsigned long b = std::stoul(bs);
    if (b < 1 || b > 32) throw input_error("ring tag: degree out of range in '" + tag + "'");
    if (hex.size() > 16) throw input_error("ring tag: modulus hex too long in '" + tag + "'");
    const u64 modulus = std::stoull(hex, nullptr, 16);
    return binary_field(static_cast<u32>(b), modulus);
  }
  throw input_error("unknown ring tag '" + tag + "'");
}

std::string RingContext::tag() const {
  switch (rep_->kind) {
    case RingKind::Integers:
      return "Z";
    case RingKind::PrimeField:
      return "Fp:" + std::to_string(rep_->p);
    case RingKind::BinaryField: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%llx", static_cast<unsigned long long>(rep_->modulus));
      return "F2e:" + std::to_string(rep_->b) + ":" + buf;
    }
  }
  throw std::logic_error("unreachable ring kind");
}

void RingContext::check(const RingElement& a) const {
  if (a.ctx_ == nullptr) throw input_error("operation on a detached ring element");
  if (a.ctx_ != rep_.get() && !a.ctx_->same_domain(*rep_))
    throw input_error("ring element belongs to a different context");
}

RingElement RingContext::zero() const {
  if (rep_->kind == RingKind::Integers) return RingElement(rep_.get(), mpz_class(0));
  return RingElement(rep_.get(), u64{0});
}

RingElement RingContext::one() const {
  if (rep_->kind == RingKind::Integers) return RingElement(rep_.get(), mpz_class(1));
  return RingElement(rep_.get(), u64{1});
}

RingElement RingContext::from_int(long v) const {
  switch (rep_->kind) {
    case RingKind::Integers:
      return RingElement(rep_.get(), mpz_class(v));
    case RingKind::PrimeField: {
      const long long m = static_cast<long long>(rep_->p);
      long long r = static_cast<long long>(v) % m;
      if (r < 0) r += m;
      return RingElement(rep_.get(), static_cast<u64>(r));
    }
    case RingKind::BinaryField:
      return RingElement(rep_.get(), static_cast<u64>(((v % 2) + 2) % 2));
  }
  throw std::logic_error("unreachable ring kind");
}

RingElement RingContext::from_bits(u64 bits) const {
  if (rep_->kind != RingKind::BinaryField)
    throw input_error("from_bits: context is not a binary field");
  if (bits >> rep_->b) throw input_error("from_bits: pattern outside the field");
  return RingElement(rep_.get(), bits);
}

RingElement RingContext::from_mpz(const mpz_class& z) const {
  switch (rep_->kind) {
    case RingKind::Integers:
      return RingElement(rep_.get(), z);
    case RingKind::PrimeField: {
      mpz_class r = z % mpz_class(std::to_string(rep_->p));
      if (r < 0) r += mpz_class(std::to_string(rep_->p));
      return RingElement(rep_.get(), mpz_to_u64(r));
    }
    case RingKind::BinaryField: {
      mpz_class r = z % 2;
      if (r < 0) r += 2;
      return RingElement(rep_.get(), mpz_to_u64(r));
    }
  }
  throw std::logic_error("unreachable ring kind");
}

RingElement RingContext::add(const RingElement& a, const RingElement& b) const {
  check(a);
  check(b);
  rep_->counters.bump_add();
  switch (rep_->kind) {
    case RingKind::Integers:
      return RingElement(rep_.get(), mpz_class(big(a) + big(b)));
    case RingKind::PrimeField: {
      u64 s = word(a) + word(b);  // p < 2^63, no overflow
      if (s >= rep_->p) s -= rep_->p;
      return RingElement(rep_.get(), s);
    }
    case RingKind::BinaryField:
      return RingElement(rep_.get(), word(a) ^ word(b));
  }
  throw std::logic_error("unreachable ring kind");
}

RingElement RingContext::sub(const RingElement& a, const RingElement& b) const {
  check(a);
  check(b);
  rep_->counters.bump_sub();
  switch (rep_->kind) {
    case RingKind::Integers:
      return RingElement(rep_.get(), mpz_class(big(a) - big(b)));
    case RingKind::PrimeField: {
      const u64 x = word(a), y = word(b);
      return RingElement(rep_.get(), x >= y ? x - y : x + rep_->p - y);
    }
    case RingKind::BinaryField:
      return RingElement(rep_.get(), word(a) ^ word(b));
  }
  throw std::logic_error("unreachable ring kind");
}

RingElement RingContext::mul(const RingElement& a, const RingElement& b) const {
  check(a);
  check(b);
  rep_->counters.bump_mul();
  switch (rep_->kind) {
    case RingKind::Integers:
      return RingElement(rep_.get(), mpz_class(big(a) * big(b)));
    case RingKind::PrimeField:
      return RingElement(rep_.get(), mulmod_u64(word(a), word(b), rep_->p));
    case RingKind::BinaryField: {
      u64 x = word(a), y = word(b), wide = 0;
      while (y != 0) {
        if (y & 1) wide ^= x;
        x <<= 1;
        y >>= 1;
      }
      return RingElement(rep_.get(), gf2x::mod(wide, rep_->modulus));
    }
  }
  throw std::logic_error("unreachable ring kind");
}

RingElement RingContext::neg(const RingElement& a) const {
  check(a);
  rep_->counters.bump_neg();
  switch (rep_->kind) {
    case RingKind::Integers:
      return RingElement(rep_.get(), mpz_class(-big(a)));
    case RingKind::PrimeField: {
      const u64 x = word(a);
      return RingElement(rep_.get(), x == 0 ? u64{0} : rep_->p - x);
    }
    case RingKind::BinaryField:
      return RingElement(rep_.get(), word(a));  // characteristic 2
  }
  throw std::logic_error("unreachable ring kind");
}

bool RingContext::is_zero(const RingElement& a) const {
  check(a);
  if (rep_->kind == RingKind::Integers) return big(a) == 0;
  return word(a) == 0;
}

bool RingContext::is_one(const RingElement& a) const {
  check(a);
  if (rep_->kind == RingKind::Integers) return big(a) == 1;
  return word(a) == 1;
}

RingElement RingContext::parse(const std::string& text) const {
  if (text.empty()) throw input_error("empty ring value");
  switch (rep_->kind) {
    case RingKind::Integers: {
      const std::size_t start = text[0] == '-' ? 1 : 0;
      if (start == text.size() ||
          text.find_first_not_of("0123456789", start) != std::string::npos)
        throw input_error("bad integer value '" + text + "'");
      if (text.size() > start + 1 && text[start] == '0')
        throw input_error("non-canonical integer value '" + text + "'");
      if (text == "-0") throw input_error("non-canonical integer value '-0'");
      return RingElement(rep_.get(), mpz_class(text, 10));
    }
    case RingKind::PrimeField: {
      if (text.find_first_not_of("0123456789") != std::string::npos)
        throw input_error("bad residue value '" + text + "'");
      if (text.size() > 1 && text[0] == '0')
        throw input_error("non-canonical residue value '" + text + "'");
      if (text.size() > 19) throw input_error("residue value out of range '" + text + "'");
      const u64 v = std::stoull(text);
      if (v >= rep_->p) throw input_error("residue value out of range '" + text + "'");
      return RingElement(rep_.get(), v);
    }
    case RingKind::BinaryField: {
      if (text.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
        throw input_error("bad field value '" + text + "'");
      if (text.size() > 1 && text[0] == '0')
        throw input_error("non-canonical field value '" + text + "'");
      if (text.size() > 16) throw input_error("field value out of range '" + text + "'");
      const u64 v = std::stoull(text, nullptr, 16);
      if (v >> rep_->b) throw input_error("field value out of range '" + text + "'");
      return RingElement(rep_.get(), v);
    }
  }
  throw std::logic_error("unreachable ring kind");
}

std::string RingContext::to_string(const RingElement& a) const {
  check(a);
  switch (rep_->kind) {
    case RingKind::Integers:
      return big(a).get_str(10);
    case RingKind::PrimeField:
      return std::to_string(word(a));
    case RingKind::BinaryField: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%llx", static_cast<unsigned long long>(word(a)));
      return buf;
    }
  }
  throw std::logic_error("unreachable ring kind");
}

}  // namespace osmm
