#include "tvlab/reductions.hpp"

#include <string>

#include "tvlab/error.hpp"

namespace tvlab {

SubsetProdInstance::SubsetProdInstance(std::vector<BigInt> items, BigInt target)
    : items_(std::move(items)), target_(std::move(target)) {
  if (items_.empty()) throw DomainError("#SubsetProd instance needs n >= 1");
  for (const BigInt& a : items_) {
    if (a < 1) throw DomainError("#SubsetProd items must be positive, got " + a.get_str());
  }
  if (target_ < 1) throw DomainError("#SubsetProd target must be positive, got " + target_.get_str());
}

PmfEqualsInstance::PmfEqualsInstance(std::vector<Rational> p, Rational v)
    : dist_(std::move(p)), value_(std::move(v)) {
  if (value_.sign() < 0) throw DomainError("#PMFEquals target v must be >= 0, got " + value_.str());
}

std::string_view case_name(GadgetCase c) { return c == GadgetCase::kA ? "A" : "B"; }

PmfEqualsInstance subsetprod_to_pmfequals(const SubsetProdInstance& instance) {
  std::vector<Rational> p;
  p.reserve(instance.size());
  Rational v(instance.target());
  for (const BigInt& a : instance.items()) {
    p.emplace_back(a, a + 1);
    v *= Rational(BigInt(1), a + 1);  // 1 - a/(1+a)
  }
  return PmfEqualsInstance(std::move(p), std::move(v));
}

Rational compute_beta(const PmfEqualsInstance& instance) {
  const Rational& v = instance.value();
  if (v.sign() <= 0) throw DomainError("beta is defined only for v > 0");
  const auto params = instance.distribution().params();
  const BitProfile profile = bit_profile(params, std::span<const Rational>(&v, 1));
  if (profile.dyadic) {
    return pow2(-3 * static_cast<long>(profile.n * profile.m));
  }
  // |v - P(x)| is a nonzero multiple of 1/D and v + P(x) <= 2, so the ratio
  // |v - P(x)| / (v + P(x)) exceeds 1/(2D); the order-preservation
  // condition needs beta below half of that ratio.
  BigInt d = v.denominator();
  for (const Rational& p : params) d *= p.denominator();
  return Rational(BigInt(1), 4 * d);
}

bool check_beta_separation(const PmfEqualsInstance& instance, const Rational& beta,
                           std::size_t max_n) {
  const Rational half(BigInt(1), BigInt(2));
  if (beta.sign() <= 0 || beta >= half) return false;
  const Rational up = half + beta;
  const Rational down = half - beta;
  const Rational& v = instance.value();
  for (const Outcome x : enumerate_outcomes(instance.dimension(), max_n)) {
    const Rational px = pmf(instance.distribution(), x);
    const auto order = px <=> v;
    if (order < 0 && !(px * up < v * down)) return false;
    if (order > 0 && !(px * down > v * up)) return false;
    if (order >= 0 && !(px * up >= v * down)) return false;
    if (order <= 0 && !(px * down <= v * up)) return false;
  }
  return true;
}

ReductionArtifacts build_gadgets(const PmfEqualsInstance& instance) {
  const Rational& v = instance.value();
  if (v.sign() <= 0 || v > 1) {
    throw DomainError("gadget construction needs 0 < v <= 1, got v=" + v.str());
  }
  const std::size_t n = instance.dimension();
  const Rational scaled = v * pow2(static_cast<long>(n));  // v 2^n
  const Rational beta = compute_beta(instance);
  const Rational half(BigInt(1), BigInt(2));

  std::vector<Rational> hat_p(instance.distribution().params().begin(),
                              instance.distribution().params().end());
  std::vector<Rational> hat_q(n, half);
  GadgetCase which;
  Rational coefficient;
  if (scaled < 1) {
    which = GadgetCase::kA;
    hat_p.emplace_back(1);
    hat_q.push_back(scaled);
    coefficient = Rational(1) / (2 * beta * v);
  } else {
    which = GadgetCase::kB;
    hat_p.push_back(Rational(1) / scaled);
    hat_q.emplace_back(1);
    coefficient = pow2(static_cast<long>(n) - 1) / beta;
  }
  ProductDistribution hp(std::move(hat_p));
  ProductDistribution hq(std::move(hat_q));
  ProductDistribution pp = hp.extend(half + beta);
  ProductDistribution pq = hq.extend(half - beta);
  return ReductionArtifacts{which,         beta,          std::move(hp), std::move(hq),
                            std::move(pp), std::move(pq), std::move(coefficient)};
}

std::uint64_t recover_count(const ReductionArtifacts& artifacts, const Rational& tv_prime,
                            const Rational& tv_hat) {
  const Rational count = artifacts.recovery_coefficient * (tv_prime - tv_hat);
  if (count.sign() < 0) {
    throw InvariantViolation("negative recovered count " + count.str());
  }
  if (!count.is_integer()) {
    throw InvariantViolation("non-integral recovered count " + count.str());
  }
  const std::size_t n = artifacts.source_dimension();
  if (count > pow2(static_cast<long>(n))) {
    throw InvariantViolation("recovered count " + count.str() + " exceeds 2^" + std::to_string(n));
  }
  return count.numerator().get_ui();
}

std::uint64_t solve_pmfequals_via_tv(const PmfEqualsInstance& instance, const SweepOptions& opts) {
  const std::size_t n = instance.dimension();
  if (instance.value().is_zero()) {
    require_enumerable(n, opts.max_n);
    std::size_t free = 0;
    for (const Rational& p : instance.distribution().params()) {
      if (!p.is_zero() && p != 1) ++free;
    }
    return (std::uint64_t{1} << n) - (std::uint64_t{1} << free);
  }
  const ReductionArtifacts art = build_gadgets(instance);
  require_enumerable(art.prime_p.dimension(), opts.max_n);
  const Rational tv_prime = tv_half_abs(art.prime_p, art.prime_q, opts);
  const Rational tv_hat = tv_half_abs(art.hat_p, art.hat_q, opts);
  return recover_count(art, tv_prime, tv_hat);
}

std::uint64_t solve_subsetprod_via_tv(const SubsetProdInstance& instance, const SweepOptions& opts) {
  const PmfEqualsInstance target = subsetprod_to_pmfequals(instance);
  // v > 1 means T > prod_i (1 + a_i), beyond every subset product.
  if (target.value() > 1) {
    require_enumerable(instance.size() + 2, opts.max_n);
    return 0;
  }
  return solve_pmfequals_via_tv(target, opts);
}

Rational expected_hat_tv(const PmfEqualsInstance& instance, std::size_t max_n) {
  const Rational& v = instance.value();
  const std::size_t n = instance.dimension();
  const Rational scaled = v * pow2(static_cast<long>(n));
  Rational total;
  if (scaled < 1) {
    for (const Outcome x : enumerate_outcomes(n, max_n)) {
      const Rational px = pmf(instance.distribution(), x);
      if (px > v) total += px - v;
    }
    return total;
  }
  const Rational uniform = pow2(-static_cast<long>(n));
  for (const Outcome x : enumerate_outcomes(n, max_n)) {
    const Rational excess = pmf(instance.distribution(), x) / scaled - uniform;
    if (excess.sign() > 0) total += excess;
  }
  return total + 1 - Rational(1) / scaled;
}

}  // namespace tvlab
