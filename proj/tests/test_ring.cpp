#include <doctest.h>

#include "support.hpp"

using namespace osmm;
using namespace testsup;

namespace {

RingElement pow_by_mul(const RingContext& ctx, RingElement base, u64 e) {
  RingElement acc = ctx.one();
  while (e != 0) {
    if (e & 1) acc = ctx.mul(acc, base);
    base = ctx.mul(base, base);
    e >>= 1;
  }
  return acc;
}

// Independent GF(2^b) product: schoolbook shift-and-add of bit polynomials,
// then long division by the modulus.
u64 table_mul(u64 a, u64 b, u64 modulus, u32 deg) {
  u64 wide = 0;
  for (u32 i = 0; i < 64 && (b >> i); ++i) {
    if ((b >> i) & 1) wide ^= a << i;
  }
  for (int d = 63; d >= static_cast<int>(deg); --d) {
    if ((wide >> d) & 1) wide ^= modulus << (d - static_cast<int>(deg));
  }
  return wide;
}

}  // namespace

TEST_SUITE("ring") {

TEST_CASE("integers: additive inverses cancel") {
  auto z = RingContext::integers();
  CHECK(z.is_zero(z.add(z.from_int(3), z.from_int(-3))));
  CHECK(z.add(z.from_int(3), z.neg(z.from_int(3))) == z.zero());
}

TEST_CASE("prime field: products reduce") {
  auto f7 = RingContext::prime_field(7);
  CHECK(f7.mul(f7.from_int(3), f7.from_int(5)) == f7.one());  // 15 mod 7
  CHECK(f7.add(f7.from_int(6), f7.from_int(6)) == f7.from_int(5));
  CHECK(f7.sub(f7.from_int(2), f7.from_int(5)) == f7.from_int(4));
}

TEST_CASE("binary field: x * x^2 = x + 1 in GF(8), against a shift-add table") {
  auto gf8 = RingContext::binary_field(3, 0b1011);  // x^3 + x + 1
  const RingElement x = gf8.from_bits(0b010);
  const RingElement x2 = gf8.from_bits(0b100);
  CHECK(gf8.mul(x, x2) == gf8.from_bits(0b011));
  // full multiplication table vs. the independent route
  for (u64 a = 0; a < 8; ++a) {
    for (u64 b = 0; b < 8; ++b) {
      CHECK(gf8.mul(gf8.from_bits(a), gf8.from_bits(b)) ==
            gf8.from_bits(table_mul(a, b, 0b1011, 3)));
    }
  }
}

TEST_CASE("ring laws hold on random triples") {
  for (const RingContext& ctx : test_rings()) {
    PhiloxStream rng(101, 0);
    for (int i = 0; i < 10000; ++i) {
      const RingElement a = random_element(ctx, rng);
      const RingElement b = random_element(ctx, rng);
      const RingElement c = random_element(ctx, rng);
      REQUIRE(ctx.add(a, b) == ctx.add(b, a));
      REQUIRE(ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c)));
      REQUIRE(ctx.mul(a, b) == ctx.mul(b, a));
      REQUIRE(ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c)));
      REQUIRE(ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
      REQUIRE(ctx.add(a, ctx.neg(a)) == ctx.zero());
      REQUIRE(ctx.mul(a, ctx.one()) == a);
      REQUIRE(ctx.sub(a, b) == ctx.add(a, ctx.neg(b)));
    }
  }
}

TEST_CASE("prime field: Fermat exponentiation on random elements") {
  for (u64 p : {7ull, 101ull, 65537ull}) {
    auto f = RingContext::prime_field(p);
    PhiloxStream rng(p, 1);
    for (int i = 0; i < 200; ++i) {
      const RingElement x = random_nonzero(f, rng);
      CHECK(pow_by_mul(f, x, p - 1) == f.one());
    }
  }
}

TEST_CASE("binary field: nonzero element orders divide 2^b - 1, exhaustively") {
  for (u32 b = 1; b <= 8; ++b) {
    auto f = RingContext::binary_field(b);
    const u64 group = (u64{1} << b) - 1;
    for (u64 v = 1; v <= group; ++v) {
      REQUIRE(pow_by_mul(f, f.from_bits(v), group) == f.one());
    }
  }
}

TEST_CASE("mixed contexts are rejected") {
  auto f7 = RingContext::prime_field(7);
  auto f11 = RingContext::prime_field(11);
  CHECK_THROWS_AS(f7.add(f7.one(), f11.one()), input_error);
  CHECK_THROWS_AS(f7.mul(f11.one(), f7.one()), input_error);
  // equal parameters from separate constructions interoperate
  auto f7b = RingContext::prime_field(7);
  CHECK(f7.add(f7.one(), f7b.one()) == f7.from_int(2));
}

TEST_CASE("context construction validates parameters") {
  CHECK_THROWS_AS(RingContext::prime_field(6), input_error);
  CHECK_THROWS_AS(RingContext::prime_field(1), input_error);
  CHECK_THROWS_AS(RingContext::binary_field(3, 0b1111), input_error);  // (x+1)(x^2+x+1)
  CHECK_THROWS_AS(RingContext::binary_field(0), input_error);
  CHECK_THROWS_AS(RingContext::binary_field(33), input_error);
  CHECK_NOTHROW(RingContext::binary_field(3, 0b1101));  // x^3 + x^2 + 1
}

TEST_CASE("tags round-trip") {
  for (const RingContext& ctx : test_rings()) {
    CHECK(RingContext::from_tag(ctx.tag()).same_domain(ctx));
  }
  CHECK(RingContext::from_tag("Z").kind() == RingKind::Integers);
  CHECK(RingContext::from_tag("Fp:101").prime() == 101);
  CHECK(RingContext::from_tag("F2e:3:b").field_modulus() == 0b1011);
  CHECK_THROWS_AS(RingContext::from_tag("Fp:abc"), input_error);
  CHECK_THROWS_AS(RingContext::from_tag("F2e:3"), input_error);
  CHECK_THROWS_AS(RingContext::from_tag("Q"), input_error);
}

TEST_CASE("canonical text forms parse strictly") {
  auto z = RingContext::integers();
  CHECK(z.to_string(z.from_int(-42)) == "-42");
  CHECK(z.parse("-42") == z.from_int(-42));
  CHECK_THROWS_AS(z.parse("007"), input_error);
  CHECK_THROWS_AS(z.parse("-0"), input_error);
  CHECK_THROWS_AS(z.parse(""), input_error);

  auto f101 = RingContext::prime_field(101);
  CHECK(f101.parse("100") == f101.from_int(100));
  CHECK_THROWS_AS(f101.parse("101"), input_error);
  CHECK_THROWS_AS(f101.parse("-1"), input_error);

  auto f256 = RingContext::binary_field(8);
  CHECK(f256.parse("ff") == f256.from_bits(0xff));
  CHECK(f256.to_string(f256.from_bits(0xab)) == "ab");
  CHECK_THROWS_AS(f256.parse("100"), input_error);  // 0x100 outside GF(2^8)
  for (const RingContext& ctx : test_rings()) {
    PhiloxStream rng(5, 0);
    for (int i = 0; i < 100; ++i) {
      const RingElement v = random_element(ctx, rng);
      CHECK(ctx.parse(ctx.to_string(v)) == v);
    }
  }
}

TEST_CASE("operation counters tally every arithmetic call") {
  auto f = RingContext::prime_field(101);
  f.counters().reset();
  const RingElement a = f.from_int(5), b = f.from_int(7);
  (void)f.add(a, b);
  (void)f.mul(a, b);
  (void)f.mul(a, b);
  (void)f.sub(a, b);
  (void)f.neg(a);
  const OpCounts counts = f.counters().snapshot();
  CHECK(counts.add == 1);
  CHECK(counts.mul == 2);
  CHECK(counts.sub == 1);
  CHECK(counts.neg == 1);
  f.counters().reset();
  CHECK(f.counters().snapshot().total() == 0);
}

}  // TEST_SUITE
