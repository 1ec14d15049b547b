#include "tvlab/divergences.hpp"

#include <array>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tvlab/error.hpp"

namespace tvlab {

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::kKl:
      return "kl";
    case Measure::kChi2:
      return "chi2";
    case Measure::kHellinger2:
      return "hellinger2";
  }
  return "?";
}

Measure parse_measure(std::string_view name) {
  if (name == "kl") return Measure::kKl;
  if (name == "chi2") return Measure::kChi2;
  if (name == "hellinger2") return Measure::kHellinger2;
  throw DomainError("unknown measure \"" + std::string(name) + "\"");
}

namespace {

void require_same_dimension(const ProductDistribution& p, const ProductDistribution& q) {
  if (p.dimension() != q.dimension()) throw DomainError("dimension mismatch");
}

// Memoised transcendental of a rational argument. Random parameter vectors
// repeat values heavily, and a 50-digit log costs microseconds.
class CachedFn {
 public:
  using Fn = Decimal (*)(const Decimal&);
  CachedFn(unsigned digits, Fn fn) : digits_(digits), fn_(fn) {}

  const Decimal& operator()(const Rational& x) {
    auto it = cache_.find(x);
    if (it == cache_.end()) it = cache_.emplace(x, fn_(Decimal(x, digits_))).first;
    return it->second;
  }

 private:
  unsigned digits_;
  Fn fn_;
  std::unordered_map<Rational, Decimal> cache_;
};

// First index and multiplicity of each distinct (p_i, q_i) with p_i != q_i.
// Parts that fit a machine word are keyed by value; comparing keys that
// point back into the parameter vectors costs a cache miss per probe.
using PairCounts = std::vector<std::pair<std::size_t, unsigned long>>;

struct WordKeyHash {
  std::size_t operator()(const std::array<unsigned long, 4>& k) const {
    std::size_t h = 0;
    for (const unsigned long w : k) h = (h ^ w) * 0x100000001B3ULL;
    return h;
  }
};

using ParamPair = std::pair<const Rational*, const Rational*>;

struct PairHash {
  std::size_t operator()(const ParamPair& v) const {
    const std::hash<Rational> h;
    return h(*v.first) * 31 + h(*v.second);
  }
};

struct PairEq {
  bool operator()(const ParamPair& a, const ParamPair& b) const {
    return *a.first == *b.first && *a.second == *b.second;
  }
};

bool fits_word(const Rational& r) {
  return mpz_fits_ulong_p(r.raw().get_num_mpz_t()) && mpz_fits_ulong_p(r.raw().get_den_mpz_t());
}

template <class Map, class KeyFn>
PairCounts count_pairs(const ProductDistribution& p, const ProductDistribution& q, KeyFn key) {
  Map first;
  PairCounts out;
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    if (p[i] == q[i]) continue;
    const auto [it, fresh] = first.try_emplace(key(i), out.size());
    if (fresh) out.emplace_back(i, 0);
    ++out[it->second].second;
  }
  return out;
}

PairCounts distinct_pairs(const ProductDistribution& p, const ProductDistribution& q) {
  bool words = true;
  for (std::size_t i = 0; i < p.dimension() && words; ++i) words = fits_word(p[i]) && fits_word(q[i]);
  if (words) {
    return count_pairs<std::unordered_map<std::array<unsigned long, 4>, std::size_t, WordKeyHash>>(
        p, q, [&](std::size_t i) {
          return std::array<unsigned long, 4>{
              mpz_get_ui(p[i].raw().get_num_mpz_t()), mpz_get_ui(p[i].raw().get_den_mpz_t()),
              mpz_get_ui(q[i].raw().get_num_mpz_t()), mpz_get_ui(q[i].raw().get_den_mpz_t())};
        });
  }
  return count_pairs<std::unordered_map<ParamPair, std::size_t, PairHash, PairEq>>(
      p, q, [&](std::size_t i) { return ParamPair{&p[i], &q[i]}; });
}

Decimal log_fn(const Decimal& x) { return log(x); }
Decimal sqrt_fn(const Decimal& x) { return sqrt(x); }

DivergenceValue infinite(Measure m, unsigned digits) {
  return DivergenceValue{m, false, std::nullopt, Decimal::infinity(digits)};
}

DivergenceValue finish_kl(Decimal nats, const DivergenceOptions& opts) {
  if (opts.base == LogBase::kBits) nats /= Decimal::ln2(opts.digits);
  return DivergenceValue{Measure::kKl, true, std::nullopt, std::move(nats)};
}

// Product of all entries by pairwise halving; keeps operand sizes balanced.
BigInt product_tree(std::vector<BigInt> values) {
  if (values.empty()) return 1;
  while (values.size() > 1) {
    const std::size_t half = (values.size() + 1) / 2;
    for (std::size_t i = 0; i < values.size() / 2; ++i) {
      mpz_mul(values[i].get_mpz_t(), values[2 * i].get_mpz_t(), values[2 * i + 1].get_mpz_t());
    }
    if (values.size() % 2 == 1) values[half - 1].swap(values.back());
    values.resize(half);
  }
  return values.front();
}

// Exact product of many rationals whose parts are mostly small. Parts below
// 2^64 are split over the primes under 2^16, so cancellation is exponent
// arithmetic; only unfactored cofactors need a gcd on the full product.
class FactoredProduct {
 public:
  void add(const BigInt& value, unsigned long power, int side) {
    if (mpz_fits_ulong_p(value.get_mpz_t())) {
      unsigned long x = value.get_ui();
      for (const unsigned long prime : primes()) {
        if (prime * prime > x) break;
        long e = 0;
        while (x % prime == 0) {
          x /= prime;
          ++e;
        }
        if (e > 0) exponent_[prime] += side * e * static_cast<long>(power);
      }
      if (x == 1) return;
      if (x < kSieveLimit * kSieveLimit) {  // no factor below sqrt(x): prime
        exponent_[x] += side * static_cast<long>(power);
        return;
      }
      push_residual(BigInt(x), power, side);
      return;
    }
    push_residual(value, power, side);
    unfactored_ = true;  // may still hold small primes
  }

  Rational value() const {
    std::vector<BigInt> num;
    std::vector<BigInt> den;
    for (const auto& [prime, e] : exponent_) {
      if (e == 0) continue;
      BigInt f;
      mpz_ui_pow_ui(f.get_mpz_t(), prime, static_cast<unsigned long>(e > 0 ? e : -e));
      (e > 0 ? num : den).push_back(std::move(f));
    }
    if (unfactored_) {
      for (const BigInt& r : residual_num_) num.push_back(r);
      for (const BigInt& r : residual_den_) den.push_back(r);
      return Rational(product_tree(std::move(num)), product_tree(std::move(den)));
    }
    // Residual parts share no prime below 2^16 with the factored parts, but
    // may share larger ones with each other.
    BigInt res_num = product_tree(residual_num_);
    BigInt res_den = product_tree(residual_den_);
    BigInt g;
    mpz_gcd(g.get_mpz_t(), res_num.get_mpz_t(), res_den.get_mpz_t());
    if (g != 1) {
      mpz_divexact(res_num.get_mpz_t(), res_num.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(res_den.get_mpz_t(), res_den.get_mpz_t(), g.get_mpz_t());
    }
    num.push_back(std::move(res_num));
    den.push_back(std::move(res_den));
    return Rational::from_reduced(product_tree(std::move(num)), product_tree(std::move(den)));
  }

 private:
  static constexpr unsigned long kSieveLimit = 1UL << 16;

  static const std::vector<unsigned long>& primes() {
    static const std::vector<unsigned long> table = [] {
      std::vector<bool> composite(kSieveLimit, false);
      std::vector<unsigned long> out;
      for (unsigned long i = 2; i < kSieveLimit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j < kSieveLimit; j += i) composite[j] = true;
      }
      return out;
    }();
    return table;
  }

  void push_residual(const BigInt& value, unsigned long power, int side) {
    BigInt f;
    mpz_pow_ui(f.get_mpz_t(), value.get_mpz_t(), power);
    (side > 0 ? residual_num_ : residual_den_).push_back(std::move(f));
  }

  std::map<unsigned long, long> exponent_;
  std::vector<BigInt> residual_num_;
  std::vector<BigInt> residual_den_;
  bool unfactored_ = false;
};

}  // namespace

DivergenceValue kl_product(const ProductDistribution& p, const ProductDistribution& q,
                           const DivergenceOptions& opts) {
  require_same_dimension(p, q);
  CachedFn ln(opts.digits, log_fn);
  Decimal total(opts.digits);
  Decimal coord(opts.digits);
  Decimal term(opts.digits);
  // a log(a/b) with 0 log(0/b) = 0 and a log(a/0) = inf for a > 0.
  auto accumulate = [&](const Rational& a, const Rational& b) {
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    term = ln(a);
    term -= ln(b);
    term *= a;
    coord += term;
    return true;
  };
  for (const auto& [i, k] : distinct_pairs(p, q)) {
    coord = Decimal(opts.digits);
    if (!accumulate(p[i], q[i]) || !accumulate(p[i].complement(), q[i].complement())) {
      return infinite(Measure::kKl, opts.digits);
    }
    coord *= Rational(static_cast<long>(k));
    total += coord;
  }
  return finish_kl(std::move(total), opts);
}

DivergenceValue chi2_product(const ProductDistribution& p, const ProductDistribution& q,
                             const DivergenceOptions& opts) {
  require_same_dimension(p, q);
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    if (p[i] != q[i] && (q[i].is_zero() || q[i] == 1)) return infinite(Measure::kChi2, opts.digits);
  }
  // Each distinct factor is formed once and raised to its multiplicity.
  FactoredProduct product;
  for (const auto& [i, k] : distinct_pairs(p, q)) {
    const Rational diff = p[i] - q[i];
    const Rational factor = 1 + diff * diff / (q[i] * q[i].complement());
    product.add(factor.numerator(), k, +1);
    product.add(factor.denominator(), k, -1);
  }
  const Rational value = product.value() - 1;
  return DivergenceValue{Measure::kChi2, true, value, Decimal(value, opts.digits)};
}

DivergenceValue hellinger2_product(const ProductDistribution& p, const ProductDistribution& q,
                                   const DivergenceOptions& opts) {
  require_same_dimension(p, q);
  CachedFn root(opts.digits, sqrt_fn);
  Decimal affinity(Rational(1), opts.digits);
  Decimal coord(opts.digits);
  Decimal other(opts.digits);
  for (const auto& [i, k] : distinct_pairs(p, q)) {
    coord = root(p[i]);
    coord *= root(q[i]);
    other = root(p[i].complement());
    other *= root(q[i].complement());
    coord += other;
    affinity *= k == 1 ? coord : pow(coord, k);
  }
  return DivergenceValue{Measure::kHellinger2, true, std::nullopt,
                         Decimal(Rational(1), opts.digits) - affinity};
}

DivergenceValue kl_bruteforce(const ProductDistribution& p, const ProductDistribution& q,
                              const DivergenceOptions& opts) {
  require_same_dimension(p, q);
  Decimal total(opts.digits);
  for (const Outcome x : enumerate_outcomes(p.dimension(), opts.max_n)) {
    const Rational px = pmf(p, x);
    if (px.is_zero()) continue;
    const Rational qx = pmf(q, x);
    if (qx.is_zero()) return infinite(Measure::kKl, opts.digits);
    total += log(Decimal(px / qx, opts.digits)) * px;
  }
  return finish_kl(std::move(total), opts);
}

DivergenceValue chi2_bruteforce(const ProductDistribution& p, const ProductDistribution& q,
                                const DivergenceOptions& opts) {
  require_same_dimension(p, q);
  Rational total;
  for (const Outcome x : enumerate_outcomes(p.dimension(), opts.max_n)) {
    const Rational px = pmf(p, x);
    const Rational qx = pmf(q, x);
    if (qx.is_zero()) {
      if (!px.is_zero()) return infinite(Measure::kChi2, opts.digits);
      continue;
    }
    const Rational diff = px - qx;
    total += diff * diff / qx;
  }
  return DivergenceValue{Measure::kChi2, true, total, Decimal(total, opts.digits)};
}

DivergenceValue hellinger2_bruteforce(const ProductDistribution& p, const ProductDistribution& q,
                                      const DivergenceOptions& opts) {
  require_same_dimension(p, q);
  Decimal affinity(opts.digits);
  for (const Outcome x : enumerate_outcomes(p.dimension(), opts.max_n)) {
    affinity += sqrt(Decimal(pmf(p, x) * pmf(q, x), opts.digits));
  }
  return DivergenceValue{Measure::kHellinger2, true, std::nullopt,
                         Decimal(Rational(1), opts.digits) - affinity};
}

DivergenceValue divergence(Measure m, const ProductDistribution& p, const ProductDistribution& q,
                           const DivergenceOptions& opts) {
  switch (m) {
    case Measure::kKl:
      return kl_product(p, q, opts);
    case Measure::kChi2:
      return chi2_product(p, q, opts);
    case Measure::kHellinger2:
      return hellinger2_product(p, q, opts);
  }
  throw DomainError("unknown measure");
}

DivergenceValue divergence_bruteforce(Measure m, const ProductDistribution& p,
                                      const ProductDistribution& q, const DivergenceOptions& opts) {
  switch (m) {
    case Measure::kKl:
      return kl_bruteforce(p, q, opts);
    case Measure::kChi2:
      return chi2_bruteforce(p, q, opts);
    case Measure::kHellinger2:
      return hellinger2_bruteforce(p, q, opts);
  }
  throw DomainError("unknown measure");
}

}  // namespace tvlab
