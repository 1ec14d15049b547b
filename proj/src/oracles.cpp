#include "tvlab/oracles.hpp"

#include "tvlab/error.hpp"

namespace tvlab {

namespace {

void check_budget(std::size_t n, const OracleBudget& budget) {
  if (budget.max_n < 1) throw DomainError("oracle budget max_n must be >= 1");
  require_enumerable(n, budget.max_n);
}

}  // namespace

std::uint64_t brute_subsetprod(const SubsetProdInstance& instance, const OracleBudget& budget) {
  const std::size_t n = instance.size();
  check_budget(n, budget);
  const auto items = instance.items();
  const BigInt& target = instance.target();
  std::uint64_t count = 0;
  BigInt product;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
    product = 1;
    for (std::size_t i = 0; i < n && product <= target; ++i) {
      if ((subset >> i) & 1U) product *= items[i];
    }
    if (product == target) ++count;
  }
  return count;
}

std::uint64_t brute_pmfequals(const PmfEqualsInstance& instance, const OracleBudget& budget) {
  const std::size_t n = instance.dimension();
  check_budget(n, budget);
  const auto params = instance.distribution().params();
  const mpq_class& v = instance.value().raw();
  std::uint64_t count = 0;
  mpq_class prob;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    prob = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const mpq_class& p = params[i].raw();
      if ((x >> i) & 1U) {
        prob *= p;
      } else {
        prob *= 1 - p;
      }
    }
    if (prob == v) ++count;
  }
  return count;
}

}  // namespace tvlab
