#include "tvlab/product_dist.hpp"

#include <string>

namespace tvlab {

void require_enumerable(std::size_t n, std::size_t max_n) {
  if (n == 0) throw DomainError("coordinate count must be at least 1");
  const std::size_t cap = max_n < kAbsoluteMaxN ? max_n : kAbsoluteMaxN;
  if (n > cap) throw CapExceeded(n, cap);
}

ProductDistribution::ProductDistribution(std::vector<Rational> params) : params_(std::move(params)) {
  if (params_.empty()) throw DomainError("product distribution needs n >= 1");
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!params_[i].in_unit_interval()) {
      throw DomainError("parameter " + std::to_string(i + 1) + " = " + params_[i].str() +
                        " outside [0,1]");
    }
  }
}

ProductDistribution ProductDistribution::extend(const Rational& p_new) const {
  if (!p_new.in_unit_interval()) {
    throw DomainError("appended parameter " + p_new.str() + " outside [0,1]");
  }
  std::vector<Rational> params = params_;
  params.push_back(p_new);
  return ProductDistribution(std::move(params));
}

Rational pmf(const ProductDistribution& dist, Outcome x) {
  const std::size_t n = dist.dimension();
  if (n < 64 && (x.index >> n) != 0) {
    throw DomainError("outcome index " + std::to_string(x.index) + " invalid for n=" +
                      std::to_string(n));
  }
  mpq_class prob = 1;
  for (std::size_t i = 0; i < n; ++i) {
    prob *= x.bit(i) ? dist[i].raw() : dist[i].complement().raw();
    if (sgn(prob) == 0) break;
  }
  return Rational(prob);
}

BigInt parameter_denominator(const ProductDistribution& dist) {
  BigInt d = 1;
  for (const Rational& p : dist.params()) d *= p.raw().get_den();
  return d;
}

namespace {

// Weights of all 2^(end-begin) sub-outcomes over coordinates [begin, end),
// built by doubling: table for k+1 coordinates = [t * (d-a), t * a].
std::vector<BigInt> expand(std::span<const Rational> params, std::size_t begin, std::size_t end,
                           const BigInt& seed) {
  std::vector<BigInt> table{seed};
  table.reserve(std::size_t{1} << (end - begin));
  for (std::size_t i = begin; i < end; ++i) {
    const BigInt& a = params[i].raw().get_num();
    const BigInt& d = params[i].raw().get_den();
    const BigInt zero_side = d - a;
    const std::size_t half = table.size();
    table.resize(2 * half);
    for (std::size_t j = 0; j < half; ++j) {
      table[half + j] = table[j] * a;
      table[j] *= zero_side;
    }
  }
  return table;
}

}  // namespace

ScaledPmf::ScaledPmf(const ProductDistribution& dist, const BigInt& scale)
    : n_(dist.dimension()), low_bits_((dist.dimension() + 1) / 2) {
  require_enumerable(n_, kAbsoluteMaxN);
  denominator_ = parameter_denominator(dist) * scale;
  low_ = expand(dist.params(), 0, low_bits_, scale);
  high_ = expand(dist.params(), low_bits_, n_, BigInt(1));
}

void ScaledPmf::weight(Outcome x, BigInt& out) const {
  const std::uint64_t mask = (std::uint64_t{1} << low_bits_) - 1;
  mpz_mul(out.get_mpz_t(), low_[x.index & mask].get_mpz_t(), high_[x.index >> low_bits_].get_mpz_t());
}

}  // namespace tvlab
