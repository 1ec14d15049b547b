#pragma once

#include <optional>
#include <string_view>

#include "tvlab/decimal.hpp"
#include "tvlab/exact_arith.hpp"
#include "tvlab/product_dist.hpp"

namespace tvlab {

enum class Measure { kKl, kChi2, kHellinger2 };
enum class LogBase { kNats, kBits };

std::string_view measure_name(Measure m);
/// "kl" | "chi2" | "hellinger2"; throws DomainError otherwise.
Measure parse_measure(std::string_view name);

struct DivergenceOptions {
  unsigned digits = kDefaultDigits;
  LogBase base = LogBase::kNats;  // KL only
  std::size_t max_n = kDefaultMaxN;  // brute-force forms only
};

struct DivergenceValue {
  Measure measure = Measure::kKl;
  bool finite = true;
  std::optional<Rational> exact;  // chi-square only (when finite)
  Decimal value;                  // +inf when !finite
};

// Closed forms, linear in n.

/// sum_i KL(Bern(p_i) || Bern(q_i)), with 0 log(0/.) = 0.
DivergenceValue kl_product(const ProductDistribution& p, const ProductDistribution& q,
                           const DivergenceOptions& opts = {});
/// prod_i (1 + (p_i - q_i)^2 / (q_i (1 - q_i))) - 1, exact.
DivergenceValue chi2_product(const ProductDistribution& p, const ProductDistribution& q,
                             const DivergenceOptions& opts = {});
/// 1 - prod_i (sqrt(p_i q_i) + sqrt((1 - p_i)(1 - q_i))).
DivergenceValue hellinger2_product(const ProductDistribution& p, const ProductDistribution& q,
                                   const DivergenceOptions& opts = {});

// The same quantities by enumerating {0,1}^n.

DivergenceValue kl_bruteforce(const ProductDistribution& p, const ProductDistribution& q,
                              const DivergenceOptions& opts = {});
DivergenceValue chi2_bruteforce(const ProductDistribution& p, const ProductDistribution& q,
                                const DivergenceOptions& opts = {});
DivergenceValue hellinger2_bruteforce(const ProductDistribution& p, const ProductDistribution& q,
                                      const DivergenceOptions& opts = {});

DivergenceValue divergence(Measure m, const ProductDistribution& p, const ProductDistribution& q,
                           const DivergenceOptions& opts = {});
DivergenceValue divergence_bruteforce(Measure m, const ProductDistribution& p,
                                      const ProductDistribution& q,
                                      const DivergenceOptions& opts = {});

}  // namespace tvlab
