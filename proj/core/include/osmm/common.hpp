#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace osmm {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

// Malformed or out-of-contract input (files, CLI arguments, preconditions).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape mismatch between operands.
struct dimension_error : input_error {
  using input_error::input_error;
};

// A promised property of the input turned out to be false at run time.
struct promise_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exhaustive check would exceed its configured enumeration budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smallest e with 2^e >= x, for x >= 1.
inline u32 ceil_log2(u64 x) {
  if (x == 0) throw input_error("ceil_log2: argument must be positive");
  u32 e = 0;
  while ((u64{1} << e) < x) {
    ++e;
    if (e >= 63) throw input_error("ceil_log2: argument too large");
  }
  return e;
}

// Exact fraction with a positive denominator.
struct Rational {
  i64 num = 0;
  i64 den = 1;
};

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const std::string ns = slash == std::string::npos ? text : text.substr(0, slash);
  const std::string ds = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (ns.empty() || ds.empty() || ns.find_first_not_of("0123456789") != std::string::npos ||
      ds.find_first_not_of("0123456789") != std::string::npos || ns.size() > 18 || ds.size() > 18)
    throw input_error("bad rational '" + text + "'");
  Rational r{std::stoll(ns), std::stoll(ds)};
  if (r.den == 0) throw input_error("zero denominator in '" + text + "'");
  return r;
}

inline std::string format_rational(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace osmm
