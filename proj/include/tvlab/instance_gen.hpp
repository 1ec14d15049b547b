#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "tvlab/product_dist.hpp"
#include "tvlab/reductions.hpp"

namespace tvlab {

/// Deterministic generator keyed by (seed, stream). Bounded draws use
/// rejection sampling on mt19937_64 so streams are identical on every
/// standard library.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi);  // inclusive
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

struct ParamSpec {
  enum class Kind { kDyadic, kGeneral };
  Kind kind = Kind::kDyadic;
  unsigned bits = 4;                // dyadic: params a/2^bits
  std::uint64_t denom_max = 16;     // general: params a/b with 1 <= b <= denom_max

  static ParamSpec dyadic(unsigned bits) { return {Kind::kDyadic, bits, 0}; }
  static ParamSpec general(std::uint64_t denom_max) { return {Kind::kGeneral, 0, denom_max}; }
};

Rational random_param(Rng& rng, const ParamSpec& spec);
ProductDistribution random_distribution(Rng& rng, std::size_t n, const ParamSpec& spec);

/// a_i uniform in [1, a_max]; T is the product of a random subset three times
/// out of four, otherwise uniform in [1, a_max^2].
SubsetProdInstance random_subsetprod(Rng& rng, std::size_t n, std::uint64_t a_max);

/// When `planted`, v = P(x) for a random x in the support of P, so at least one
/// outcome matches. Otherwise v is such a P(x) rescaled by a random factor
/// (kept in (0,1] and dyadic for dyadic specs).
PmfEqualsInstance random_pmfequals(Rng& rng, std::size_t n, const ParamSpec& spec, bool planted);

/// v = 2^-n exactly (the case split boundary), with a random subset of the
/// parameters set to 1/2 so the count is frequently nonzero.
PmfEqualsInstance boundary_pmfequals(Rng& rng, std::size_t n, const ParamSpec& spec);

}  // namespace tvlab
