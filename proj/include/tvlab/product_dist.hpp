#pragma once

#include <cstddef>
#include <cstdint>
#include <ranges>
#include <span>
#include <vector>

#include "tvlab/error.hpp"
#include "tvlab/exact_arith.hpp"

namespace tvlab {

/// Largest n for which exact enumeration over {0,1}^n is attempted.
inline constexpr std::size_t kDefaultMaxN = 24;
/// Hard ceiling regardless of configuration; indices must fit in 64 bits.
inline constexpr std::size_t kAbsoluteMaxN = 62;

/// A point of {0,1}^n. Bit j (least significant first) is coordinate j+1.
struct Outcome {
  std::uint64_t index = 0;

  bool bit(std::size_t coordinate) const { return ((index >> coordinate) & 1U) != 0; }
  friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

/// Throws CapExceeded unless 1 <= n <= max_n.
void require_enumerable(std::size_t n, std::size_t max_n);

/// All 2^n outcomes in increasing index order.
inline auto enumerate_outcomes(std::size_t n, std::size_t max_n = kDefaultMaxN) {
  require_enumerable(n, max_n);
  return std::views::iota(std::uint64_t{0}, std::uint64_t{1} << n) |
         std::views::transform([](std::uint64_t i) { return Outcome{i}; });
}

/// Bern(p_1) x ... x Bern(p_n); params[i] is Pr[coordinate i+1 = 1].
class ProductDistribution {
 public:
  explicit ProductDistribution(std::vector<Rational> params);

  std::size_t dimension() const { return params_.size(); }
  std::span<const Rational> params() const { return params_; }
  const Rational& operator[](std::size_t i) const { return params_[i]; }

  /// Appends one coordinate with Pr[1] = p_new.
  ProductDistribution extend(const Rational& p_new) const;

  friend bool operator==(const ProductDistribution&, const ProductDistribution&) = default;

 private:
  std::vector<Rational> params_;
};

/// prod_{i: x_i=1} p_i * prod_{i: x_i=0} (1 - p_i).
Rational pmf(const ProductDistribution& dist, Outcome x);

/// Integer-scaled pmf for fast exhaustive sweeps:
///   dist(x) = weight(x) / denominator()
/// where denominator() is the product of the parameter denominators (times an
/// optional extra scale). The weight is factored as low(x) * high(x) over two
/// half tables, so a sweep costs one big multiplication per outcome and
/// O(2^(n/2)) memory.
class ScaledPmf {
 public:
  ScaledPmf(const ProductDistribution& dist, const BigInt& scale = 1);

  std::size_t dimension() const { return n_; }
  std::size_t low_bits() const { return low_bits_; }
  const BigInt& denominator() const { return denominator_; }
  std::span<const BigInt> low_table() const { return low_; }
  std::span<const BigInt> high_table() const { return high_; }

  void weight(Outcome x, BigInt& out) const;

 private:
  std::size_t n_;
  std::size_t low_bits_;
  BigInt denominator_;
  std::vector<BigInt> low_;
  std::vector<BigInt> high_;
};

/// Product of the reduced parameter denominators.
BigInt parameter_denominator(const ProductDistribution& dist);

}  // namespace tvlab
