#include <doctest.h>

#include <vector>

#include "support/brute.hpp"
#include "tvlab/error.hpp"
#include "tvlab/instance_gen.hpp"
#include "tvlab/oracles.hpp"

using tvlab::BigInt;
using tvlab::PmfEqualsInstance;
using tvlab::Rational;
using tvlab::SubsetProdInstance;
using tvlab::testing::params_of;

namespace {

SubsetProdInstance subsetprod(std::initializer_list<long> items, long target) {
  std::vector<BigInt> a;
  for (long v : items) a.emplace_back(v);
  return SubsetProdInstance(std::move(a), BigInt(target));
}

PmfEqualsInstance pmfequals(std::initializer_list<const char*> p, const char* v) {
  return PmfEqualsInstance(params_of(p), Rational::parse(v));
}

}  // namespace

TEST_CASE("subset-product oracle examples") {
  CHECK(tvlab::brute_subsetprod(subsetprod({2, 3}, 6)) == 1);
  CHECK(tvlab::brute_subsetprod(subsetprod({1, 1}, 1)) == 4);  // every subset, empty included
  CHECK(tvlab::brute_subsetprod(subsetprod({5}, 2)) == 0);
  CHECK(tvlab::brute_subsetprod(subsetprod({2, 2, 2}, 4)) == 3);
}

TEST_CASE("pmf-equals oracle examples") {
  CHECK(tvlab::brute_pmfequals(pmfequals({"1/2", "1/2"}, "1/4")) == 4);
  CHECK(tvlab::brute_pmfequals(pmfequals({"1/4", "1/2"}, "1/8")) == 2);
  CHECK(tvlab::brute_pmfequals(pmfequals({"1/2"}, "1/3")) == 0);
  CHECK(tvlab::brute_pmfequals(pmfequals({"1", "1/2"}, "0")) == 2);
}

TEST_CASE("oracles respect their budget") {
  std::vector<BigInt> items(25, BigInt(1));
  CHECK_THROWS_AS(tvlab::brute_subsetprod(SubsetProdInstance(items, BigInt(1))), tvlab::CapExceeded);
  CHECK_THROWS_AS(tvlab::brute_pmfequals(pmfequals({"1/2", "1/2"}, "1/4"), {1}), tvlab::CapExceeded);
}

TEST_CASE("property: oracles agree with literal loops and stay within 2^n") {
  tvlab::Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = rng.between(1, 9);
    const auto sp = tvlab::random_subsetprod(rng, n, 5);
    CHECK(tvlab::brute_subsetprod(sp) <= (std::uint64_t{1} << n));

    const auto spec = trial % 2 ? tvlab::ParamSpec::general(rng.between(2, 10))
                                : tvlab::ParamSpec::dyadic(static_cast<unsigned>(rng.between(1, 5)));
    const auto pe = tvlab::random_pmfequals(rng, n, spec, true);
    const auto params = pe.distribution().params();
    const std::uint64_t count = tvlab::brute_pmfequals(pe);
    CHECK(count >= 1);
    CHECK(count <= (std::uint64_t{1} << n));
    CHECK(count == tvlab::testing::literal_pmf_count({params.begin(), params.end()}, pe.value()));
  }
}
