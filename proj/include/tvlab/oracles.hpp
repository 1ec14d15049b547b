#pragma once

#include <cstdint>

#include "tvlab/product_dist.hpp"
#include "tvlab/reductions.hpp"

namespace tvlab {

// Exhaustive counters used as ground truth. They evaluate products directly
// and share nothing with the reduction or TV code beyond the number types.

struct OracleBudget {
  std::size_t max_n = kDefaultMaxN;
};

/// |{S subset of [n] : prod_{i in S} a_i = T}| by enumerating all 2^n subsets.
std::uint64_t brute_subsetprod(const SubsetProdInstance& instance, const OracleBudget& budget = {});

/// |{x in {0,1}^n : P(x) = v}| by enumerating all outcomes.
std::uint64_t brute_pmfequals(const PmfEqualsInstance& instance, const OracleBudget& budget = {});

}  // namespace tvlab
