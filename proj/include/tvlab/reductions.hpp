#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tvlab/exact_arith.hpp"
#include "tvlab/product_dist.hpp"
#include "tvlab/tv_engine.hpp"

namespace tvlab {

/// Count subsets S of [n] with prod_{i in S} a_i = T (empty product is 1).
/// Items and target are positive integers.
class SubsetProdInstance {
 public:
  SubsetProdInstance(std::vector<BigInt> items, BigInt target);

  std::size_t size() const { return items_.size(); }
  std::span<const BigInt> items() const { return items_; }
  const BigInt& target() const { return target_; }

 private:
  std::vector<BigInt> items_;
  BigInt target_;
};

/// Count x in {0,1}^n with P(x) = v for P = Bern(p_1) x ... x Bern(p_n).
class PmfEqualsInstance {
 public:
  PmfEqualsInstance(std::vector<Rational> p, Rational v);

  std::size_t dimension() const { return dist_.dimension(); }
  const ProductDistribution& distribution() const { return dist_; }
  const Rational& value() const { return value_; }

 private:
  ProductDistribution dist_;
  Rational value_;
};

enum class GadgetCase { kA, kB };

std::string_view case_name(GadgetCase c);

/// The two distribution pairs whose TV gap encodes |{x : P(x) = v}|.
///   Case A (v < 2^-n): hat_p = (p, 1),          hat_q = (1/2,...,1/2, v 2^n)
///   Case B (v >= 2^-n): hat_p = (p, 1/(v 2^n)), hat_q = (1/2,...,1/2, 1)
/// and prime_* append (1/2 + beta) / (1/2 - beta) respectively.
struct ReductionArtifacts {
  GadgetCase case_tag;
  Rational beta;
  ProductDistribution hat_p;
  ProductDistribution hat_q;
  ProductDistribution prime_p;
  ProductDistribution prime_q;
  Rational recovery_coefficient;  // 1/(2 beta v) in case A, 2^(n-1)/beta in case B

  std::size_t source_dimension() const { return hat_p.dimension() - 1; }
};

/// p_i = a_i / (1 + a_i), v = T prod_i (1 - p_i).
PmfEqualsInstance subsetprod_to_pmfequals(const SubsetProdInstance& instance);

/// Separation margin for the extra coordinate pair. Dyadic instances with
/// bit budget m get 2^(-3nm); otherwise 1/(4 D) with D = den(v) prod_i den(p_i).
/// Requires v > 0.
Rational compute_beta(const PmfEqualsInstance& instance);

/// Exhaustively checks, for every x with P(x) != v, that the beta-shifted
/// masses keep their order (both strict directions and the non-strict
/// directions), and that 0 < beta < 1/2.
bool check_beta_separation(const PmfEqualsInstance& instance, const Rational& beta,
                           std::size_t max_n = kDefaultMaxN);

/// Requires 0 < v <= 1.
ReductionArtifacts build_gadgets(const PmfEqualsInstance& instance);

/// coefficient * (tv_prime - tv_hat), validated to be an integer in [0, 2^n].
std::uint64_t recover_count(const ReductionArtifacts& artifacts, const Rational& tv_prime,
                            const Rational& tv_hat);

/// Counts |{x : P(x) = v}| with two TV queries on the gadget pairs
/// (n + 2 coordinates are enumerated, so n + 2 must be within the cap).
/// v = 0 uses the closed form 2^n - 2^{#i: 0 < p_i < 1}.
std::uint64_t solve_pmfequals_via_tv(const PmfEqualsInstance& instance,
                                     const SweepOptions& opts = {});

/// Subset-product transform followed by solve_pmfequals_via_tv. A target that maps to
/// v > 1 has no solutions and returns 0 without building gadgets.
std::uint64_t solve_subsetprod_via_tv(const SubsetProdInstance& instance,
                                      const SweepOptions& opts = {});

/// The value tv(hat_p, hat_q) must take for the case build_gadgets picks,
/// evaluated directly from P:
///   A: sum_{x: P(x) > v} (P(x) - v)
///   B: sum_x max(0, P(x)/(v 2^n) - 2^-n) + 1 - 1/(v 2^n)
Rational expected_hat_tv(const PmfEqualsInstance& instance, std::size_t max_n = kDefaultMaxN);

}  // namespace tvlab
