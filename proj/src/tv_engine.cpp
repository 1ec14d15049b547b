#include "tvlab/tv_engine.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "tvlab/error.hpp"

namespace tvlab {

namespace {

void require_same_dimension(const ProductDistribution& p, const ProductDistribution& q) {
  if (p.dimension() != q.dimension()) {
    throw DomainError("dimension mismatch: " + std::to_string(p.dimension()) + " vs " +
                      std::to_string(q.dimension()));
  }
}

// Both distributions rescaled onto the shared denominator Dp * Dq, so that
// P(x) - Q(x) = (wp(x) - wq(x)) / denominator.
struct ScaledPair {
  ScaledPair(const ProductDistribution& p, const ProductDistribution& q)
      : p_scaled(p, parameter_denominator(q)), q_scaled(q, parameter_denominator(p)) {}

  const BigInt& denominator() const { return p_scaled.denominator(); }

  ScaledPmf p_scaled;
  ScaledPmf q_scaled;
};

// Calls visit(acc, x, wp, wq) for every outcome; the high-half index range is
// partitioned across workers and accumulators come back in index order.
template <class Acc, class Visit>
std::vector<Acc> sweep(const ScaledPair& pair, unsigned workers, Visit visit) {
  const auto lowP = pair.p_scaled.low_table();
  const auto highP = pair.p_scaled.high_table();
  const auto lowQ = pair.q_scaled.low_table();
  const auto highQ = pair.q_scaled.high_table();
  const std::size_t shift = pair.p_scaled.low_bits();

  const std::size_t chunks = std::clamp<std::size_t>(workers, 1, highP.size());
  std::vector<Acc> acc(chunks);

  auto run = [&](std::size_t chunk) {
    Visit local = visit;
    const std::size_t begin = highP.size() * chunk / chunks;
    const std::size_t end = highP.size() * (chunk + 1) / chunks;
    BigInt wp;
    BigInt wq;
    for (std::size_t hi = begin; hi < end; ++hi) {
      for (std::size_t lo = 0; lo < lowP.size(); ++lo) {
        mpz_mul(wp.get_mpz_t(), lowP[lo].get_mpz_t(), highP[hi].get_mpz_t());
        mpz_mul(wq.get_mpz_t(), lowQ[lo].get_mpz_t(), highQ[hi].get_mpz_t());
        local(acc[chunk], Outcome{(static_cast<std::uint64_t>(hi) << shift) | lo}, wp, wq);
      }
    }
  };

  if (chunks == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) threads.emplace_back(run, c);
  }
  return acc;
}

ScaledPair prepare(const ProductDistribution& p, const ProductDistribution& q,
                   const SweepOptions& opts) {
  require_same_dimension(p, q);
  require_enumerable(p.dimension(), opts.max_n);
  return ScaledPair(p, q);
}

}  // namespace

Rational tv_half_abs(const ProductDistribution& p, const ProductDistribution& q,
                     const SweepOptions& opts) {
  const ScaledPair pair = prepare(p, q, opts);
  const auto partial = sweep<BigInt>(pair, opts.workers,
                                     [diff = BigInt()](BigInt& sum, Outcome, const BigInt& wp,
                                                       const BigInt& wq) mutable {
                                       mpz_sub(diff.get_mpz_t(), wp.get_mpz_t(), wq.get_mpz_t());
                                       mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                                       sum += diff;
                                     });
  BigInt total = 0;
  for (const BigInt& s : partial) total += s;
  return Rational(total, 2 * pair.denominator());
}

Rational tv_positive_part(const ProductDistribution& p, const ProductDistribution& q,
                          const SweepOptions& opts) {
  const ScaledPair pair = prepare(p, q, opts);
  const auto partial = sweep<BigInt>(pair, opts.workers,
                                     [](BigInt& sum, Outcome, const BigInt& wp, const BigInt& wq) {
                                       if (wp > wq) {
                                         sum += wp;
                                         sum -= wq;
                                       }
                                     });
  BigInt total = 0;
  for (const BigInt& s : partial) total += s;
  return Rational(total, pair.denominator());
}

TvResult tv_max_event(const ProductDistribution& p, const ProductDistribution& q,
                      const SweepOptions& opts) {
  struct EventAcc {
    BigInt p_mass = 0;
    BigInt q_mass = 0;
    std::vector<std::uint64_t> members;
  };
  const ScaledPair pair = prepare(p, q, opts);
  auto partial = sweep<EventAcc>(pair, opts.workers,
                                 [](EventAcc& acc, Outcome x, const BigInt& wp, const BigInt& wq) {
                                   if (wp > wq) {
                                     acc.p_mass += wp;
                                     acc.q_mass += wq;
                                     acc.members.push_back(x.index);
                                   }
                                 });
  TvResult result;
  BigInt p_mass = 0;
  BigInt q_mass = 0;
  // Chunks visit increasing index ranges, so the concatenation stays sorted.
  for (EventAcc& acc : partial) {
    p_mass += acc.p_mass;
    q_mass += acc.q_mass;
    result.witness.insert(result.witness.end(), acc.members.begin(), acc.members.end());
  }
  result.value = Rational(p_mass, pair.denominator()) - Rational(q_mass, pair.denominator());
  return result;
}

MembershipReport accepting_path_count(const ProductDistribution& p, const ProductDistribution& q,
                                      const SweepOptions& opts) {
  const ScaledPair pair = prepare(p, q, opts);
  std::vector<Rational> all(p.params().begin(), p.params().end());
  all.insert(all.end(), q.params().begin(), q.params().end());

  MembershipReport report;
  report.M = common_denominator(all);
  const BigInt& den = pair.denominator();

  struct PathAcc {
    BigInt paths = 0;
    bool integral = true;
  };
  const auto partial = sweep<PathAcc>(
      pair, opts.workers,
      [&, term = BigInt()](PathAcc& acc, Outcome, const BigInt& wp, const BigInt& wq) mutable {
        // M |P(x) - Q(x)| = M |wp - wq| / den, which must be an integer.
        mpz_sub(term.get_mpz_t(), wp.get_mpz_t(), wq.get_mpz_t());
        mpz_abs(term.get_mpz_t(), term.get_mpz_t());
        term *= report.M;
        if (!mpz_divisible_p(term.get_mpz_t(), den.get_mpz_t())) {
          acc.integral = false;
          return;
        }
        mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), den.get_mpz_t());
        acc.paths += term;
      });

  report.accepting_paths = 0;
  for (const PathAcc& acc : partial) {
    if (!acc.integral) throw InvariantViolation("M|P(x)-Q(x)| is not an integer for some x");
    report.accepting_paths += acc.paths;
  }
  report.tv_from_paths = Rational(report.accepting_paths, 2 * report.M);
  if (report.tv_from_paths != tv_half_abs(p, q, opts)) {
    throw InvariantViolation("accepting paths / 2M disagrees with the half-sum TV");
  }
  return report;
}

Rational event_mass(const ProductDistribution& dist, std::span<const std::uint64_t> event) {
  Rational mass;
  for (std::uint64_t x : event) mass += pmf(dist, Outcome{x});
  return mass;
}

}  // namespace tvlab
