#include <doctest.h>

#include <vector>

#include "support/brute.hpp"
#include "tvlab/error.hpp"
#include "tvlab/instance_gen.hpp"
#include "tvlab/tv_engine.hpp"

using tvlab::ProductDistribution;
using tvlab::Rational;
using tvlab::testing::params_of;

namespace {

ProductDistribution dist(std::initializer_list<const char*> values) {
  return ProductDistribution(params_of(values));
}

Rational q(const char* s) { return Rational::parse(s); }

tvlab::ParamSpec spec_for(tvlab::Rng& rng, int trial) {
  return trial % 2 ? tvlab::ParamSpec::general(rng.between(1, 12))
                   : tvlab::ParamSpec::dyadic(static_cast<unsigned>(rng.between(1, 6)));
}

}  // namespace

TEST_CASE("half-abs form examples") {
  const auto p = dist({"1/2", "1/2"});
  const auto r = dist({"1/4", "3/4"});
  CHECK(tvlab::tv_half_abs(p, p).is_zero());
  CHECK(tvlab::tv_half_abs(dist({"2/7"}), dist({"5/6"})) == tvlab::abs(q("2/7") - q("5/6")));
  // frozen from the literal 4-outcome sum
  REQUIRE(tvlab::testing::literal_tv(params_of({"1/2", "1/2"}), params_of({"1/4", "3/4"})) ==
          q("5/16"));
  CHECK(tvlab::tv_half_abs(p, r) == q("5/16"));
}

TEST_CASE("positive-part form examples") {
  const auto p = dist({"1/2", "1/2"});
  CHECK(tvlab::tv_positive_part(p, p).is_zero());
  CHECK(tvlab::tv_positive_part(dist({"1", "1"}), dist({"0", "0"})) == 1);
  CHECK(tvlab::tv_positive_part(p, dist({"1/4", "3/4"})) == q("5/16"));
}

TEST_CASE("max-event form examples and witness") {
  const auto p = dist({"1/2", "1/2"});
  auto res = tvlab::tv_max_event(p, p);
  CHECK(res.value.is_zero());
  CHECK(res.witness.empty());

  res = tvlab::tv_max_event(dist({"1"}), dist({"0"}));
  CHECK(res.value == 1);
  CHECK(res.witness == std::vector<std::uint64_t>{1});

  // P(x) = 1/4 everywhere; Q = (3/16, 9/16, 1/16, 3/16) at indices 0..3
  res = tvlab::tv_max_event(p, dist({"1/4", "3/4"}));
  CHECK(res.value == q("5/16"));
  CHECK(res.witness == std::vector<std::uint64_t>{0, 1, 3});
  // the genuine max over all 16 events agrees
  CHECK(tvlab::testing::max_over_all_events(params_of({"1/2", "1/2"}), params_of({"1/4", "3/4"})) ==
        q("5/16"));
}

TEST_CASE("dimension mismatch and cap") {
  CHECK_THROWS_AS(tvlab::tv_half_abs(dist({"1/2"}), dist({"1/2", "1/2"})), tvlab::DomainError);
  std::vector<Rational> big(25, q("1/2"));
  const ProductDistribution d(big);
  CHECK_THROWS_AS(tvlab::tv_half_abs(d, d), tvlab::CapExceeded);
  CHECK_THROWS_AS(tvlab::tv_positive_part(d, d), tvlab::CapExceeded);
  CHECK_THROWS_AS(tvlab::tv_max_event(d, d), tvlab::CapExceeded);
  CHECK_THROWS_AS(tvlab::accepting_path_count(d, d), tvlab::CapExceeded);
  CHECK_THROWS_AS(tvlab::tv_half_abs(dist({"1/2", "1/2"}), dist({"1/2", "1/2"}), {1, 1}),
                  tvlab::CapExceeded);
}

TEST_CASE("membership examples") {
  // two outcomes, each contributing 36 * 1/6
  auto m = tvlab::accepting_path_count(dist({"1/2"}), dist({"1/3"}));
  CHECK(m.M == 36);
  CHECK(m.accepting_paths == 12);
  CHECK(m.tv_from_paths == q("1/6"));

  m = tvlab::accepting_path_count(dist({"1/2"}), dist({"1/2"}));
  CHECK(m.M == 16);
  CHECK(m.accepting_paths == 0);

  m = tvlab::accepting_path_count(dist({"1"}), dist({"0"}));
  CHECK(m.accepting_paths == 2 * m.M);
}

TEST_CASE("property: three forms agree with the literal sum") {
  tvlab::Rng rng(1234);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = rng.between(1, 8);
    const auto spec = spec_for(rng, trial);
    const auto p = tvlab::random_distribution(rng, n, spec);
    const auto r = tvlab::random_distribution(rng, n, spec);
    const Rational expected = tvlab::testing::literal_tv(
        std::vector<Rational>(p.params().begin(), p.params().end()),
        std::vector<Rational>(r.params().begin(), r.params().end()));
    CHECK(tvlab::tv_half_abs(p, r) == expected);
    CHECK(tvlab::tv_positive_part(p, r) == expected);
    const auto ev = tvlab::tv_max_event(p, r);
    CHECK(ev.value == expected);
    CHECK(tvlab::event_mass(p, ev.witness) - tvlab::event_mass(r, ev.witness) == expected);
    CHECK(expected.in_unit_interval());
    CHECK(tvlab::tv_half_abs(r, p) == expected);
    CHECK(expected.is_zero() == (p == r));
    if (expected == 1) {
      CHECK(tvlab::event_mass(p, ev.witness) == 1);
      CHECK(tvlab::event_mass(r, ev.witness).is_zero());
    }
  }
}

TEST_CASE("property: witness beats the best of all events on tiny domains") {
  tvlab::Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = rng.between(1, 3);
    const auto spec = spec_for(rng, trial);
    const auto p = tvlab::random_distribution(rng, n, spec);
    const auto r = tvlab::random_distribution(rng, n, spec);
    CHECK(tvlab::tv_max_event(p, r).value ==
          tvlab::testing::max_over_all_events(
              std::vector<Rational>(p.params().begin(), p.params().end()),
              std::vector<Rational>(r.params().begin(), r.params().end())));
  }
}

TEST_CASE("property: random events never exceed the witness gap") {
  tvlab::Rng rng(7);
  const std::size_t n = 5;
  const auto p = tvlab::random_distribution(rng, n, tvlab::ParamSpec::general(9));
  const auto r = tvlab::random_distribution(rng, n, tvlab::ParamSpec::general(9));
  const Rational best = tvlab::tv_max_event(p, r).value;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::uint64_t> event;
    for (std::uint64_t x = 0; x < (1U << n); ++x) {
      if (rng.coin()) event.push_back(x);
    }
    CHECK(tvlab::event_mass(p, event) - tvlab::event_mass(r, event) <= best);
  }
}

TEST_CASE("property: triangle inequality") {
  tvlab::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = rng.between(1, 7);
    const auto spec = spec_for(rng, trial);
    const auto a = tvlab::random_distribution(rng, n, spec);
    const auto b = tvlab::random_distribution(rng, n, spec);
    const auto c = tvlab::random_distribution(rng, n, spec);
    CHECK(tvlab::tv_half_abs(a, c) <= tvlab::tv_half_abs(a, b) + tvlab::tv_half_abs(b, c));
  }
}

TEST_CASE("property: membership identity") {
  tvlab::Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.between(1, 8);
    const auto spec = spec_for(rng, trial);
    const auto p = tvlab::random_distribution(rng, n, spec);
    const auto r = tvlab::random_distribution(rng, n, spec);
    const auto m = tvlab::accepting_path_count(p, r);
    const Rational scaled = 2 * Rational(m.M) * tvlab::tv_half_abs(p, r);
    CHECK(scaled.is_integer());
    CHECK(scaled.numerator() == m.accepting_paths);
    CHECK(m.tv_from_paths == Rational(m.accepting_paths, 2 * m.M));
  }
}

TEST_CASE("worker partitioning does not change results") {
  tvlab::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = rng.between(1, 12);
    const auto p = tvlab::random_distribution(rng, n, tvlab::ParamSpec::general(10));
    const auto r = tvlab::random_distribution(rng, n, tvlab::ParamSpec::general(10));
    const auto serial = tvlab::tv_max_event(p, r, {24, 1});
    for (unsigned workers : {2U, 3U, 8U}) {
      const auto parallel = tvlab::tv_max_event(p, r, {24, workers});
      CHECK(parallel.value == serial.value);
      CHECK(parallel.witness == serial.witness);
      CHECK(tvlab::tv_half_abs(p, r, {24, workers}) == serial.value);
      CHECK(tvlab::tv_positive_part(p, r, {24, workers}) == serial.value);
      CHECK(tvlab::accepting_path_count(p, r, {24, workers}).tv_from_paths == serial.value);
    }
  }
}
