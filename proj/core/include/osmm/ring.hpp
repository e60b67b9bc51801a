#pragma once

// Exact ring arithmetic: arbitrary-precision integers, prime fields F_p,
// and binary extension fields F_{2^b}. Elements are immutable values in a
// canonical form, so equality is payload comparison. Every arithmetic call
// is tallied in the owning context's operation counters.

#include <gmpxx.h>

#include <atomic>
#include <memory>
#include <string>
#include <variant>

#include "osmm/common.hpp"

namespace osmm {

enum class RingKind { Integers, PrimeField, BinaryField };

struct OpCounts {
  u64 add = 0;
  u64 sub = 0;
  u64 neg = 0;
  u64 mul = 0;
  u64 total() const { return add + sub + neg + mul; }
};

class OpCounters {
 public:
  void reset() {
    add_.store(0, std::memory_order_relaxed);
    sub_.store(0, std::memory_order_relaxed);
    neg_.store(0, std::memory_order_relaxed);
    mul_.store(0, std::memory_order_relaxed);
  }
  OpCounts snapshot() const {
    return OpCounts{add_.load(std::memory_order_relaxed), sub_.load(std::memory_order_relaxed),
                    neg_.load(std::memory_order_relaxed), mul_.load(std::memory_order_relaxed)};
  }
  void bump_add() { add_.fetch_add(1, std::memory_order_relaxed); }
  void bump_sub() { sub_.fetch_add(1, std::memory_order_relaxed); }
  void bump_neg() { neg_.fetch_add(1, std::memory_order_relaxed); }
  void bump_mul() { mul_.fetch_add(1, std::memory_order_relaxed); }

 private:
  std::atomic<u64> add_{0}, sub_{0}, neg_{0}, mul_{0};
};

namespace detail {

struct CtxRep {
  RingKind kind = RingKind::Integers;
  u64 p = 0;         // PrimeField modulus
  u32 b = 0;         // BinaryField extension degree
  u64 modulus = 0;   // BinaryField modulus bit pattern (bit b set)
  mutable OpCounters counters;

  bool same_domain(const CtxRep& o) const {
    return kind == o.kind && p == o.p && b == o.b && modulus == o.modulus;
  }
};

}  // namespace detail

class RingContext;

class RingElement {
 public:
  RingElement() = default;
  bool attached() const { return ctx_ != nullptr; }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    if (a.ctx_ == nullptr && b.ctx_ == nullptr) return true;
    if (a.ctx_ == nullptr || b.ctx_ == nullptr) return false;
    if (a.ctx_ != b.ctx_ && !a.ctx_->same_domain(*b.ctx_))
      throw input_error("ring element comparison across different contexts");
    return a.v_ == b.v_;
  }
  friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

  // Total order on payloads, usable as a map key within one context.
  friend bool payload_less(const RingElement& a, const RingElement& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
    if (std::holds_alternative<u64>(a.v_)) return std::get<u64>(a.v_) < std::get<u64>(b.v_);
    return std::get<mpz_class>(a.v_) < std::get<mpz_class>(b.v_);
  }

 private:
  friend class RingContext;
  RingElement(const detail::CtxRep* ctx, u64 w) : ctx_(ctx), v_(w) {}
  RingElement(const detail::CtxRep* ctx, mpz_class z) : ctx_(ctx), v_(std::move(z)) {}

  const detail::CtxRep* ctx_ = nullptr;
  std::variant<u64, mpz_class> v_ = u64{0};
};

// A shared, immutable arithmetic domain. Contexts must outlive the elements
// they produce. The operation counters are the only mutable state and are
// safe to bump concurrently.
class RingContext {
 public:
  static RingContext integers();
  static RingContext prime_field(u64 p);
  static RingContext binary_field(u32 b);              // smallest-modulus field
  static RingContext binary_field(u32 b, u64 modulus); // explicit modulus, validated
  static RingContext from_tag(const std::string& tag); // "Z", "Fp:<p>", "F2e:<b>:<hex>"
  std::string tag() const;

  RingKind kind() const { return rep_->kind; }
  u64 prime() const { return rep_->p; }
  u32 extension_degree() const { return rep_->b; }
  u64 field_modulus() const { return rep_->modulus; }
  bool same_domain(const RingContext& o) const { return rep_->same_domain(*o.rep_); }

  RingElement zero() const;
  RingElement one() const;
  RingElement from_int(long v) const;            // ring image of a small integer
  RingElement from_bits(u64 bits) const;         // BinaryField element from its bit pattern
  RingElement from_mpz(const mpz_class& z) const;

  RingElement add(const RingElement& a, const RingElement& b) const;
  RingElement sub(const RingElement& a, const RingElement& b) const;
  RingElement mul(const RingElement& a, const RingElement& b) const;
  RingElement neg(const RingElement& a) const;
  bool is_zero(const RingElement& a) const;
  bool is_one(const RingElement& a) const;

  RingElement parse(const std::string& text) const;  // strict canonical text form
  std::string to_string(const RingElement& a) const;

  OpCounters& counters() const { return rep_->counters; }

 private:
  explicit RingContext(std::shared_ptr<const detail::CtxRep> rep) : rep_(std::move(rep)) {}
  void check(const RingElement& a) const;
  u64 word(const RingElement& a) const { return std::get<u64>(a.v_); }
  const mpz_class& big(const RingElement& a) const { return std::get<mpz_class>(a.v_); }

  std::shared_ptr<const detail::CtxRep> rep_;
};

}  // namespace osmm
