#include "tvlab/instance_gen.hpp"

#include <limits>

#include "tvlab/error.hpp"

namespace tvlab {

namespace {

std::seed_seq make_seed(std::uint64_t seed, std::uint64_t stream) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream),
                       static_cast<std::uint32_t>(stream >> 32)};
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  auto seq = make_seed(seed, stream);
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below(0)");
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;  // largest accepted value
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw > limit);
  return draw % bound;
}

std::uint64_t Rng::between(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw DomainError("Rng::between with hi < lo");
  if (hi - lo == std::numeric_limits<std::uint64_t>::max()) return engine_();
  return lo + below(hi - lo + 1);
}

Rational random_param(Rng& rng, const ParamSpec& spec) {
  if (spec.kind == ParamSpec::Kind::kDyadic) {
    if (spec.bits == 0 || spec.bits > 62) throw DomainError("dyadic bits must be in [1, 62]");
    const std::uint64_t den = std::uint64_t{1} << spec.bits;
    return Rational(BigInt(std::to_string(rng.between(0, den))), BigInt(std::to_string(den)));
  }
  if (spec.denom_max == 0) throw DomainError("denom_max must be >= 1");
  const std::uint64_t den = rng.between(1, spec.denom_max);
  return Rational(BigInt(std::to_string(rng.between(0, den))), BigInt(std::to_string(den)));
}

ProductDistribution random_distribution(Rng& rng, std::size_t n, const ParamSpec& spec) {
  std::vector<Rational> params;
  params.reserve(n);
  for (std::size_t i = 0; i < n; ++i) params.push_back(random_param(rng, spec));
  return ProductDistribution(std::move(params));
}

SubsetProdInstance random_subsetprod(Rng& rng, std::size_t n, std::uint64_t a_max) {
  if (a_max == 0) throw DomainError("a_max must be >= 1");
  std::vector<BigInt> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) items.emplace_back(std::to_string(rng.between(1, a_max)));
  BigInt target = 1;
  if (rng.below(4) != 0) {
    for (const BigInt& a : items) {
      if (rng.coin()) target *= a;
    }
  } else {
    target = BigInt(std::to_string(rng.between(1, a_max * a_max)));
  }
  return SubsetProdInstance(std::move(items), std::move(target));
}

namespace {

// P(x) for an x drawn uniformly among outcomes of positive probability.
Rational supported_mass(Rng& rng, const ProductDistribution& dist) {
  Rational mass(1);
  for (const Rational& p : dist.params()) {
    if (p.is_zero()) {
      mass *= p.complement();
    } else if (p == 1) {
      mass *= p;
    } else {
      mass *= rng.coin() ? p : p.complement();
    }
  }
  return mass;
}

}  // namespace

PmfEqualsInstance random_pmfequals(Rng& rng, std::size_t n, const ParamSpec& spec, bool planted) {
  ProductDistribution dist = random_distribution(rng, n, spec);
  Rational v = supported_mass(rng, dist);
  if (!planted) {
    static const char* const kDyadicScales[] = {"1/2", "3/2", "3/4", "5/4"};
    static const char* const kGeneralScales[] = {"1/2", "3/2", "2/3", "4/3"};
    const auto& scales = spec.kind == ParamSpec::Kind::kDyadic ? kDyadicScales : kGeneralScales;
    v *= Rational::parse(scales[rng.below(4)]);
    if (v > 1) v = Rational(BigInt(1), BigInt(2));
  }
  std::vector<Rational> params(dist.params().begin(), dist.params().end());
  return PmfEqualsInstance(std::move(params), std::move(v));
}

PmfEqualsInstance boundary_pmfequals(Rng& rng, std::size_t n, const ParamSpec& spec) {
  std::vector<Rational> params;
  params.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = random_param(rng, spec);
    if (rng.coin()) p = Rational(BigInt(1), BigInt(2));
    params.push_back(std::move(p));
  }
  return PmfEqualsInstance(std::move(params), pow2(-static_cast<long>(n)));
}

}  // namespace tvlab
