#include "tvlab/verify.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <string>

#include "tvlab/divergences.hpp"
#include "tvlab/error.hpp"
#include "tvlab/instance_gen.hpp"
#include "tvlab/json_io.hpp"
#include "tvlab/oracles.hpp"
#include "tvlab/reductions.hpp"

namespace tvlab {

bool SuiteReport::all_pass() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.pass; }));
}

std::size_t SuiteReport::count(std::string_view invariant) const {
  return static_cast<std::size_t>(std::count_if(
      verdicts.begin(), verdicts.end(), [&](const Verdict& v) { return v.invariant == invariant; }));
}

std::string SuiteReport::jsonl() const {
  std::string out;
  for (const Verdict& v : verdicts) {
    out += json::json{{"suite", suite},
                      {"invariant", v.invariant},
                      {"trial", v.trial},
                      {"pass", v.pass},
                      {"detail", v.detail}}
               .dump();
    out += '\n';
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"forms",    "membership", "lemma2",   "claim1",
                                              "claims23", "chain",      "tensorize"};
  return names;
}

namespace {

class Recorder {
 public:
  explicit Recorder(SuiteReport& report) : report_(report) {}

  void check(std::string invariant, std::uint64_t trial, bool pass, std::string detail) {
    report_.verdicts.push_back({std::move(invariant), trial, pass, std::move(detail)});
  }

 private:
  SuiteReport& report_;
};

Rng trial_rng(const SuiteConfig& config, std::size_t suite_index, std::uint64_t trial) {
  return Rng(config.seed, (static_cast<std::uint64_t>(suite_index) << 40) | trial);
}

// Even trials draw dyadic parameters (m in [1,6]); odd trials general
// rationals with denominators up to 12.
ParamSpec mixed_spec(Rng& rng, std::uint64_t trial) {
  if (trial % 2 == 0) return ParamSpec::dyadic(static_cast<unsigned>(rng.between(1, 6)));
  return ParamSpec::general(rng.between(2, 12));
}

void forms_trial(Recorder& rec, Rng& rng, std::uint64_t trial, const SuiteConfig& cfg) {
  const std::size_t n = rng.between(1, cfg.max_n);
  const ParamSpec spec = mixed_spec(rng, trial);
  const ProductDistribution p = random_distribution(rng, n, spec);
  const ProductDistribution q = random_distribution(rng, n, spec);

  const Rational half_abs = tv_half_abs(p, q, cfg.sweep);
  const Rational positive = tv_positive_part(p, q, cfg.sweep);
  const TvResult event = tv_max_event(p, q, cfg.sweep);
  const std::string detail = "n=" + std::to_string(n) + " tv=" + half_abs.str();

  rec.check("three_forms_equal", trial, half_abs == positive && positive == event.value, detail);
  rec.check("witness_attains_value", trial,
            event_mass(p, event.witness) - event_mass(q, event.witness) == event.value, detail);
  rec.check("tv_in_unit_interval", trial, half_abs.in_unit_interval(), detail);
  rec.check("symmetry", trial, tv_half_abs(q, p, cfg.sweep) == half_abs, detail);
  rec.check("zero_iff_equal_params", trial, half_abs.is_zero() == (p == q), detail);
}

void membership_trial(Recorder& rec, Rng& rng, std::uint64_t trial, const SuiteConfig& cfg) {
  const std::size_t n = rng.between(1, cfg.max_n);
  const ParamSpec spec = mixed_spec(rng, trial);
  const ProductDistribution p = random_distribution(rng, n, spec);
  const ProductDistribution q = random_distribution(rng, n, spec);

  const MembershipReport report = accepting_path_count(p, q, cfg.sweep);
  const Rational scaled = 2 * Rational(report.M) * tv_half_abs(p, q, cfg.sweep);
  const bool ok = scaled.is_integer() && scaled.sign() >= 0 &&
                  scaled.numerator() == report.accepting_paths;
  rec.check("membership_identity", trial, ok,
            "n=" + std::to_string(n) + " M=" + report.M.get_str() +
                " paths=" + report.accepting_paths.get_str());
}

void transform_trial(Recorder& rec, Rng& rng, std::uint64_t trial, const SuiteConfig& cfg) {
  const std::size_t n = rng.between(1, cfg.max_n);
  const SubsetProdInstance source = random_subsetprod(rng, n, 50);
  const PmfEqualsInstance target = subsetprod_to_pmfequals(source);
  const OracleBudget budget{cfg.sweep.max_n};

  const std::uint64_t subsets = brute_subsetprod(source, budget);
  const std::uint64_t outcomes = brute_pmfequals(target, budget);
  const std::string detail = "n=" + std::to_string(n) + " T=" + source.target().get_str() +
                             " count=" + std::to_string(subsets) + "/" + std::to_string(outcomes);
  rec.check("transform_count_preservation", trial, subsets == outcomes, detail);

  bool pointwise = true;
  for (const Outcome x : enumerate_outcomes(n, cfg.sweep.max_n)) {
    BigInt product = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (x.bit(i)) product *= source.items()[i];
    }
    if ((product == source.target()) != (pmf(target.distribution(), x) == target.value())) {
      pointwise = false;
      break;
    }
  }
  rec.check("transform_pointwise_equivalence", trial, pointwise, detail);
}

void separation_trial(Recorder& rec, Rng& rng, std::uint64_t trial, const SuiteConfig& cfg) {
  const std::size_t n = rng.between(1, cfg.max_n);
  const ParamSpec spec = mixed_spec(rng, trial);
  const PmfEqualsInstance inst = random_pmfequals(rng, n, spec, rng.coin());
  const Rational beta = compute_beta(inst);
  const bool dyadic = bit_profile(inst.distribution().params(),
                                  std::span<const Rational>(&inst.value(), 1))
                          .dyadic;
  rec.check("beta_separation", trial, check_beta_separation(inst, beta, cfg.sweep.max_n),
            "n=" + std::to_string(n) + (dyadic ? " dyadic" : " general") +
                " beta_den_bits=" +
                std::to_string(mpz_sizeinbase(beta.raw().get_den_mpz_t(), 2)));
}

struct CaseTally {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t boundary = 0;
};

void recovery_trial(Recorder& rec, Rng& rng, std::uint64_t trial, const SuiteConfig& cfg,
                    CaseTally& tally) {
  const std::size_t n = rng.between(1, cfg.max_n);
  const ParamSpec spec = (trial / 4) % 2 == 0 ? ParamSpec::dyadic(static_cast<unsigned>(rng.between(1, 6)))
                                              : ParamSpec::general(rng.between(2, 12));
  PmfEqualsInstance inst = [&] {
    switch (trial % 4) {
      case 0:
      case 1:
        return random_pmfequals(rng, n, spec, true);
      case 2:
        return boundary_pmfequals(rng, n, spec);
      default:
        return random_pmfequals(rng, n, spec, false);
    }
  }();

  const ReductionArtifacts art = build_gadgets(inst);
  const Rational tv_prime = tv_half_abs(art.prime_p, art.prime_q, cfg.sweep);
  const Rational tv_hat = tv_half_abs(art.hat_p, art.hat_q, cfg.sweep);
  const std::uint64_t truth = brute_pmfequals(inst, OracleBudget{cfg.sweep.max_n});
  const bool boundary = inst.value() == pow2(-static_cast<long>(n));
  if (art.case_tag == GadgetCase::kA) ++tally.a;
  if (art.case_tag == GadgetCase::kB) ++tally.b;
  if (boundary) ++tally.boundary;

  std::string detail = "n=" + std::to_string(n) + " case=" + std::string(case_name(art.case_tag)) +
                       (boundary ? " boundary" : "") + " oracle=" + std::to_string(truth);
  try {
    const std::uint64_t recovered = recover_count(art, tv_prime, tv_hat);
    detail += " recovered=" + std::to_string(recovered);
    rec.check("recovery_matches_oracle", trial,
              recovered == truth && recovered <= (std::uint64_t{1} << n), detail);
  } catch (const InvariantViolation& e) {
    rec.check("recovery_matches_oracle", trial, false, detail + " error=" + e.what());
  }
  rec.check("monotone_gap", trial, tv_prime >= tv_hat, detail);
  rec.check("boundary_routes_to_case_b", trial, !boundary || art.case_tag == GadgetCase::kB, detail);

  const Rational expected = expected_hat_tv(inst, cfg.sweep.max_n);
  if (art.case_tag == GadgetCase::kA) {
    rec.check("case_a_excess_mass_identity", trial, tv_positive_part(art.hat_p, art.hat_q, cfg.sweep) == expected,
              detail);
  } else {
    rec.check("case_b_hat_identity", trial, tv_hat == expected, detail);
  }
}

void chain_trial(Recorder& rec, Rng& rng, std::uint64_t trial, const SuiteConfig& cfg) {
  const std::size_t n = rng.between(1, cfg.max_n);
  const SubsetProdInstance inst = random_subsetprod(rng, n, 50);
  const std::uint64_t truth = brute_subsetprod(inst, OracleBudget{cfg.sweep.max_n});
  std::string detail = "n=" + std::to_string(n) + " T=" + inst.target().get_str() +
                       " oracle=" + std::to_string(truth);
  try {
    const std::uint64_t via_tv = solve_subsetprod_via_tv(inst, cfg.sweep);
    detail += " via_tv=" + std::to_string(via_tv);
    rec.check("end_to_end", trial, via_tv == truth, detail);
  } catch (const InvariantViolation& e) {
    rec.check("end_to_end", trial, false, detail + " error=" + e.what());
  }
}

bool within(const Decimal& a, const Decimal& b, const Rational& tol) {
  if (!a.is_finite() || !b.is_finite()) return a.is_finite() == b.is_finite();
  return abs(a - b) <= Decimal(tol, a.digits());
}

void tensorize_trial(Recorder& rec, Rng& rng, std::uint64_t trial, const SuiteConfig& cfg) {
  const std::size_t n = rng.between(1, std::min<std::size_t>(cfg.max_n, 10));
  const ParamSpec spec = mixed_spec(rng, trial);
  const ProductDistribution p = random_distribution(rng, n, spec);
  const ProductDistribution q = random_distribution(rng, n, spec);
  DivergenceOptions opts;
  opts.max_n = cfg.sweep.max_n;
  const Rational tol(BigInt(1), BigInt("1000000000000"));  // 1e-12
  const std::string detail = "n=" + std::to_string(n);

  const DivergenceValue chi_closed = chi2_product(p, q, opts);
  const DivergenceValue chi_brute = chi2_bruteforce(p, q, opts);
  rec.check("chi2_exact", trial,
            chi_closed.finite == chi_brute.finite && chi_closed.exact == chi_brute.exact,
            detail + " chi2=" + (chi_closed.exact ? chi_closed.exact->str() : std::string("inf")));

  const DivergenceValue kl_closed = kl_product(p, q, opts);
  const DivergenceValue kl_brute = kl_bruteforce(p, q, opts);
  rec.check("kl_within_1e-12", trial,
            kl_closed.finite == kl_brute.finite && within(kl_closed.value, kl_brute.value, tol),
            detail);

  const DivergenceValue h_closed = hellinger2_product(p, q, opts);
  const DivergenceValue h_brute = hellinger2_bruteforce(p, q, opts);
  rec.check("hellinger2_within_1e-12", trial, within(h_closed.value, h_brute.value, tol), detail);

  // H^2 <= TV <= sqrt(2 H^2), up to rounding of the 50-digit evaluation.
  const Decimal tv(tv_half_abs(p, q, cfg.sweep), opts.digits);
  const Decimal slack(Rational(BigInt(1), BigInt("10000000000000000000000000000000000000000")),
                      opts.digits);
  const Decimal two(Rational(2), opts.digits);
  rec.check("hellinger_tv_sandwich", trial,
            h_closed.value <= tv + slack && tv <= sqrt(two * h_closed.value) + slack, detail);
}

}  // namespace

SuiteReport run_suite(std::string_view name, const SuiteConfig& config) {
  const auto& names = suite_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DomainError("unknown suite \"" + std::string(name) + "\"");
  if (config.max_n < 1) throw DomainError("suite max_n must be >= 1");
  const std::size_t index = static_cast<std::size_t>(it - names.begin());

  SuiteReport report;
  report.suite = std::string(name);
  Recorder rec(report);
  CaseTally tally;

  using TrialFn = std::function<void(Recorder&, Rng&, std::uint64_t, const SuiteConfig&)>;
  TrialFn fn;
  if (name == "forms") fn = forms_trial;
  if (name == "membership") fn = membership_trial;
  if (name == "lemma2") fn = transform_trial;
  if (name == "claim1") fn = separation_trial;
  if (name == "chain") fn = chain_trial;
  if (name == "tensorize") fn = tensorize_trial;
  if (name == "claims23") {
    fn = [&tally](Recorder& r, Rng& g, std::uint64_t t, const SuiteConfig& c) {
      recovery_trial(r, g, t, c, tally);
    };
  }

  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    Rng rng = trial_rng(config, index, trial);
    try {
      fn(rec, rng, trial, config);
    } catch (const InvariantViolation& e) {
      rec.check("no_invariant_violation", trial, false, e.what());
    }
  }

  if (name == "claims23" && config.trials >= 4) {
    rec.check("covers_case_a_case_b_and_boundary", config.trials,
              tally.a > 0 && tally.b > 0 && tally.boundary > 0,
              "A=" + std::to_string(tally.a) + " B=" + std::to_string(tally.b) +
                  " boundary=" + std::to_string(tally.boundary));
  }
  return report;
}

}  // namespace tvlab
