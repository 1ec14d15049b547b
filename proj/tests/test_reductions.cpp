#include <doctest.h>

#include <vector>

#include "support/brute.hpp"
#include "tvlab/error.hpp"
#include "tvlab/instance_gen.hpp"
#include "tvlab/oracles.hpp"
#include "tvlab/reductions.hpp"

using tvlab::BigInt;
using tvlab::GadgetCase;
using tvlab::PmfEqualsInstance;
using tvlab::ProductDistribution;
using tvlab::Rational;
using tvlab::SubsetProdInstance;
using tvlab::testing::params_of;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

SubsetProdInstance subsetprod(std::initializer_list<long> items, long target) {
  std::vector<BigInt> a;
  for (long v : items) a.emplace_back(v);
  return SubsetProdInstance(std::move(a), BigInt(target));
}

PmfEqualsInstance pmfequals(std::initializer_list<const char*> p, const char* v) {
  return PmfEqualsInstance(params_of(p), q(v));
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(subsetprod({}, 1), tvlab::DomainError);
  CHECK_THROWS_AS(subsetprod({0, 2}, 1), tvlab::DomainError);
  CHECK_THROWS_AS(subsetprod({2}, 0), tvlab::DomainError);
  CHECK_THROWS_AS(pmfequals({"1/2"}, "-1/2"), tvlab::DomainError);
  CHECK_THROWS_AS(pmfequals({"3/2"}, "1/2"), tvlab::DomainError);
  CHECK_NOTHROW(pmfequals({"1/2"}, "0"));
}

TEST_CASE("subset-product transform examples") {
  auto t = tvlab::subsetprod_to_pmfequals(subsetprod({2, 3}, 6));
  CHECK(t.distribution() == ProductDistribution(params_of({"2/3", "3/4"})));
  CHECK(t.value() == q("1/2"));

  t = tvlab::subsetprod_to_pmfequals(subsetprod({1}, 1));
  CHECK(t.value() == q("1/2"));
  CHECK(tvlab::brute_pmfequals(t) == 2);

  t = tvlab::subsetprod_to_pmfequals(subsetprod({2}, 3));
  CHECK(t.value() == 1);
  CHECK(tvlab::brute_pmfequals(t) == 0);
}

TEST_CASE("beta examples") {
  // dyadic, n = 2, bit budget 3 from v = 1/8
  CHECK(tvlab::compute_beta(pmfequals({"1/4", "1/2"}, "1/8")) == tvlab::pow2(-18));
  // general: 1/(4 * 2 * 3 * 4)
  CHECK(tvlab::compute_beta(pmfequals({"2/3", "3/4"}, "1/2")) == q("1/96"));
  // dyadic, n = 1, m = 1
  CHECK(tvlab::compute_beta(pmfequals({"1/2"}, "1/2")) == q("1/8"));
  CHECK_THROWS_AS(tvlab::compute_beta(pmfequals({"1/2"}, "0")), tvlab::DomainError);
}

TEST_CASE("beta separation examples") {
  const auto inst = pmfequals({"1/2"}, "1/2");
  CHECK(tvlab::check_beta_separation(inst, q("1/8")));
  CHECK_FALSE(tvlab::check_beta_separation(inst, q("1/2")));
  CHECK_FALSE(tvlab::check_beta_separation(inst, q("0")));
  // P(x) in {1/8, 3/8}, v = 1/4: beta = 1/4 makes 1/8 * 3/4 = 3/32 vs 1/4 * 1/4 = 1/16 flip
  CHECK_FALSE(tvlab::check_beta_separation(pmfequals({"1/4", "1/2"}, "1/4"), q("1/4")));
}

TEST_CASE("gadget layout, case A") {
  const auto art = tvlab::build_gadgets(pmfequals({"1/4", "1/2"}, "1/8"));
  const Rational beta = tvlab::pow2(-18);
  CHECK(art.case_tag == GadgetCase::kA);
  CHECK(art.beta == beta);
  CHECK(art.hat_p == ProductDistribution(params_of({"1/4", "1/2", "1"})));
  CHECK(art.hat_q == ProductDistribution(params_of({"1/2", "1/2", "1/2"})));
  CHECK(art.prime_p == art.hat_p.extend(q("1/2") + beta));
  CHECK(art.prime_q == art.hat_q.extend(q("1/2") - beta));
  CHECK(art.recovery_coefficient == tvlab::pow2(20));
  CHECK(art.source_dimension() == 2);
}

TEST_CASE("gadget layout, case B and the boundary") {
  auto art = tvlab::build_gadgets(pmfequals({"1/2"}, "1/2"));
  CHECK(art.case_tag == GadgetCase::kB);
  CHECK(art.hat_p == ProductDistribution(params_of({"1/2", "1"})));
  CHECK(art.hat_q == ProductDistribution(params_of({"1/2", "1"})));
  CHECK(art.recovery_coefficient == q("8"));

  // v 2^n = 1 exactly goes to case B
  art = tvlab::build_gadgets(pmfequals({"1/2", "1/2"}, "1/4"));
  CHECK(art.case_tag == GadgetCase::kB);

  art = tvlab::build_gadgets(pmfequals({"2/3", "3/4"}, "1/2"));
  CHECK(art.case_tag == GadgetCase::kB);
  CHECK(art.hat_p == ProductDistribution(params_of({"2/3", "3/4", "1/2"})));

  CHECK_THROWS_AS(tvlab::build_gadgets(pmfequals({"1/2"}, "3/2")), tvlab::DomainError);
  CHECK_THROWS_AS(tvlab::build_gadgets(pmfequals({"1/2"}, "0")), tvlab::DomainError);
}

TEST_CASE("recovery examples") {
  for (const auto& [inst, expected] :
       std::vector<std::pair<PmfEqualsInstance, std::uint64_t>>{
           {pmfequals({"1/2"}, "1/2"), 2},
           {pmfequals({"1/4", "1/2"}, "1/8"), 2},
           {pmfequals({"2/3"}, "1/2"), 0}}) {
    const auto art = tvlab::build_gadgets(inst);
    const Rational tv_prime = tvlab::tv_half_abs(art.prime_p, art.prime_q);
    const Rational tv_hat = tvlab::tv_half_abs(art.hat_p, art.hat_q);
    CHECK(tvlab::recover_count(art, tv_prime, tv_hat) == expected);
    CHECK(tv_hat == tvlab::expected_hat_tv(inst));
  }
}

TEST_CASE("recovery rejects impossible gaps") {
  const auto art = tvlab::build_gadgets(pmfequals({"1/2"}, "1/2"));
  CHECK_THROWS_AS(tvlab::recover_count(art, q("0"), q("1/2")), tvlab::InvariantViolation);
  CHECK_THROWS_AS(tvlab::recover_count(art, q("1/3"), q("0")), tvlab::InvariantViolation);
  CHECK_THROWS_AS(tvlab::recover_count(art, q("1"), q("0")), tvlab::InvariantViolation);
}

TEST_CASE("solve examples") {
  CHECK(tvlab::solve_pmfequals_via_tv(pmfequals({"1/2", "1/2"}, "1/4")) == 4);
  CHECK(tvlab::solve_pmfequals_via_tv(pmfequals({"1/4", "1/2"}, "1/8")) == 2);
  CHECK(tvlab::solve_pmfequals_via_tv(pmfequals({"2/3", "3/4"}, "1/2")) == 1);
  CHECK(tvlab::solve_pmfequals_via_tv(pmfequals({"1", "1/2", "0"}, "0")) == 6);

  CHECK(tvlab::solve_subsetprod_via_tv(subsetprod({2, 3}, 6)) == 1);
  CHECK(tvlab::solve_subsetprod_via_tv(subsetprod({1, 1}, 1)) == 4);
  CHECK(tvlab::solve_subsetprod_via_tv(subsetprod({2, 3, 6}, 6)) == 2);
  CHECK(tvlab::solve_subsetprod_via_tv(subsetprod({5}, 2)) == 0);
  CHECK(tvlab::solve_subsetprod_via_tv(subsetprod({2}, 100)) == 0);
}

TEST_CASE("solve respects the cap on n + 2") {
  std::vector<Rational> p(23, q("1/2"));
  const PmfEqualsInstance inst(p, tvlab::pow2(-23));
  CHECK_THROWS_AS(tvlab::solve_pmfequals_via_tv(inst), tvlab::CapExceeded);
  CHECK_THROWS_AS(tvlab::solve_pmfequals_via_tv(pmfequals({"1/2", "1/2"}, "1/4"), {3, 1}),
                  tvlab::CapExceeded);
}

TEST_CASE("property: transform preserves counts and pointwise equality") {
  tvlab::Rng rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = rng.between(1, 8);
    const auto sp = tvlab::random_subsetprod(rng, n, 6);
    const auto pe = tvlab::subsetprod_to_pmfequals(sp);
    CHECK(tvlab::brute_pmfequals(pe) == tvlab::brute_subsetprod(sp));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      BigInt prod(1);
      for (std::size_t i = 0; i < n; ++i) {
        if ((x >> i) & 1U) prod *= sp.items()[i];
      }
      const auto params = pe.distribution().params();
      const bool hit = tvlab::testing::literal_pmf({params.begin(), params.end()}, x) == pe.value();
      CHECK(hit == (prod == sp.target()));
    }
  }
}

TEST_CASE("property: beta separates every instance") {
  tvlab::Rng rng(41);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = rng.between(1, 8);
    const auto spec = trial % 2 ? tvlab::ParamSpec::general(rng.between(2, 12))
                                : tvlab::ParamSpec::dyadic(static_cast<unsigned>(rng.between(1, 6)));
    const auto inst = tvlab::random_pmfequals(rng, n, spec, rng.coin());
    CHECK(tvlab::check_beta_separation(inst, tvlab::compute_beta(inst)));
  }
}

TEST_CASE("property: recovered count matches the oracle in both cases") {
  tvlab::Rng rng(73);
  int case_a = 0;
  int case_b = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = rng.between(1, 8);
    const auto spec = trial % 2 ? tvlab::ParamSpec::general(rng.between(2, 12))
                                : tvlab::ParamSpec::dyadic(static_cast<unsigned>(rng.between(1, 6)));
    const auto inst = trial % 5 == 0 ? tvlab::boundary_pmfequals(rng, n, spec)
                                     : tvlab::random_pmfequals(rng, n, spec, rng.coin());
    const auto art = tvlab::build_gadgets(inst);
    (art.case_tag == GadgetCase::kA ? case_a : case_b)++;
    CHECK(tvlab::tv_half_abs(art.hat_p, art.hat_q) == tvlab::expected_hat_tv(inst));
    CHECK(tvlab::solve_pmfequals_via_tv(inst) == tvlab::brute_pmfequals(inst));
  }
  CHECK(case_a > 0);
  CHECK(case_b > 0);
}
