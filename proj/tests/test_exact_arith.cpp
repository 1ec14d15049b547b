#include <doctest.h>

#include <vector>

#include "tvlab/error.hpp"
#include "tvlab/exact_arith.hpp"
#include "tvlab/instance_gen.hpp"

using tvlab::BigInt;
using tvlab::Rational;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

}  // namespace

TEST_CASE("rationals are stored in lowest terms with positive denominator") {
  const Rational r(BigInt(6), BigInt(-8));
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 4);
  CHECK(r.str() == "-3/4");

  const Rational zero(BigInt(0), BigInt(17));
  CHECK(zero.numerator() == 0);
  CHECK(zero.denominator() == 1);
  CHECK(zero.str() == "0");
  CHECK(Rational().str() == "0");
}

TEST_CASE("parse and print") {
  CHECK(q("4/8") == q("1/2"));
  CHECK(q("7").str() == "7");
  CHECK(q("-2/6").str() == "-1/3");
  CHECK_THROWS_AS(q("1/0"), tvlab::DomainError);
  CHECK_THROWS_AS(q("a/b"), tvlab::DomainError);
  CHECK_THROWS_AS(q("1/-2"), tvlab::DomainError);
  CHECK_THROWS_AS(q(""), tvlab::DomainError);
  CHECK(q("5/16").decimal(4) == "0.3125");
  CHECK(q("1/3").decimal(5) == "0.33333");
  CHECK(q("2/3").decimal(3) == "0.667");
  CHECK(q("-1/8").decimal(2) == "-0.13");
  CHECK(q("1").decimal(0) == "1");
}

TEST_CASE("is_dyadic") {
  auto d = tvlab::is_dyadic(q("3/8"));
  CHECK(d.dyadic);
  CHECK(d.bits == 3);
  CHECK_FALSE(tvlab::is_dyadic(q("2/3")).dyadic);
  d = tvlab::is_dyadic(q("1"));
  CHECK(d.dyadic);
  CHECK(d.bits == 0);
  d = tvlab::is_dyadic(q("4/8"));
  CHECK(d.bits == 1);
}

TEST_CASE("is_dyadic accepts every a/2^k") {
  for (long k = 0; k <= 8; ++k) {
    const long den = 1L << k;
    for (long a = 0; a <= den; ++a) {
      const Rational r{BigInt(a), BigInt(den)};
      const auto d = tvlab::is_dyadic(r);
      REQUIRE(d.dyadic);
      CHECK(d.bits <= k);
      CHECK((r * tvlab::pow2(static_cast<long>(d.bits))).is_integer());
      if (d.bits > 0) CHECK_FALSE((r * tvlab::pow2(static_cast<long>(d.bits) - 1)).is_integer());
    }
  }
}

TEST_CASE("common_denominator is the product with complements") {
  std::vector<Rational> v{q("1/2"), q("1/3")};
  CHECK(tvlab::common_denominator(v) == 36);  // 2 * 2 * 3 * 3
  v = {q("0"), q("1")};
  CHECK(tvlab::common_denominator(v) == 1);
  v = {q("1/2")};
  CHECK(tvlab::common_denominator(v) == 4);
  v = {q("3/2")};
  CHECK_THROWS_AS(tvlab::common_denominator(v), tvlab::DomainError);
  CHECK_THROWS_AS(tvlab::common_denominator(std::vector<Rational>{}), tvlab::DomainError);
}

TEST_CASE("property: M clears every value and complement") {
  tvlab::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> values;
    const auto len = rng.between(1, 6);
    for (std::uint64_t i = 0; i < len; ++i) {
      values.push_back(tvlab::random_param(rng, tvlab::ParamSpec::general(rng.between(1, 30))));
    }
    const Rational m(tvlab::common_denominator(values));
    for (const Rational& v : values) {
      CHECK((m * v).is_integer());
      CHECK((m * v.complement()).is_integer());
    }
  }
}

TEST_CASE("property: arithmetic is exact") {
  tvlab::Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a(BigInt(static_cast<long>(rng.between(0, 2000)) - 1000),
                     BigInt(static_cast<long>(rng.between(1, 999))));
    const Rational b(BigInt(static_cast<long>(rng.between(0, 2000)) - 1000),
                     BigInt(static_cast<long>(rng.between(1, 999))));
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(tvlab::abs(a - b) == tvlab::abs(b - a));
  }
}

TEST_CASE("pow2 handles negative exponents") {
  CHECK(tvlab::pow2(0) == 1);
  CHECK(tvlab::pow2(3) == 8);
  CHECK(tvlab::pow2(-3) == q("1/8"));
}

TEST_CASE("bit_profile") {
  std::vector<Rational> dyadic{q("1/4"), q("3/8"), q("1")};
  auto prof = tvlab::bit_profile(dyadic);
  CHECK(prof.n == 3);
  CHECK(prof.m == 3);
  CHECK(prof.dyadic);

  const Rational v = q("1/64");
  prof = tvlab::bit_profile(dyadic, std::span<const Rational>(&v, 1));
  CHECK(prof.m == 6);
  CHECK(prof.n == 3);

  std::vector<Rational> mixed{q("1/2"), q("2/3")};
  CHECK_FALSE(tvlab::bit_profile(mixed).dyadic);

  std::vector<Rational> integers{q("0"), q("1")};
  CHECK(tvlab::bit_profile(integers).m == 1);
}
