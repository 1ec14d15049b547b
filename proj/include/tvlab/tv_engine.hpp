#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tvlab/exact_arith.hpp"
#include "tvlab/product_dist.hpp"

namespace tvlab {

struct SweepOptions {
  std::size_t max_n = kDefaultMaxN;
  // Outcome space is split into this many contiguous index ranges, each
  // summed on its own thread. Exact partial sums make the result independent
  // of the split.
  unsigned workers = 1;
};

struct TvResult {
  Rational value;
  std::vector<std::uint64_t> witness;  // sorted {x : P(x) > Q(x)}
};

struct MembershipReport {
  BigInt M;                 // product of all parameter and complement denominators
  BigInt accepting_paths;   // sum_x M |P(x) - Q(x)|
  Rational tv_from_paths;   // accepting_paths / (2M)
};

/// (1/2) sum_x |P(x) - Q(x)|.
Rational tv_half_abs(const ProductDistribution& p, const ProductDistribution& q,
                     const SweepOptions& opts = {});

/// sum_x max(0, P(x) - Q(x)).
Rational tv_positive_part(const ProductDistribution& p, const ProductDistribution& q,
                          const SweepOptions& opts = {});

/// P(S) - Q(S) for the maximising event S = {x : P(x) > Q(x)}; ties excluded.
TvResult tv_max_event(const ProductDistribution& p, const ProductDistribution& q,
                      const SweepOptions& opts = {});

/// Accepting-path count of the counting machine that guesses x and an integer
/// z in [0, M] and accepts iff 1 <= z <= M|P(x) - Q(x)|. Cross-checked against
/// tv_half_abs; a mismatch or a non-integral term throws InvariantViolation.
MembershipReport accepting_path_count(const ProductDistribution& p, const ProductDistribution& q,
                                      const SweepOptions& opts = {});

/// Mass of an event given as outcome indices.
Rational event_mass(const ProductDistribution& dist, std::span<const std::uint64_t> event);

}  // namespace tvlab
