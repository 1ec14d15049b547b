// tvlab: exact total variation distance between product distributions, the
// #SubsetProd -> #PMFEquals -> TV reduction chain, and its verification suites.
//
// Exit codes: 0 success, 2 input error, 3 enumeration cap, 4 invariant
// failure, 5 oracle mismatch.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "tvlab/divergences.hpp"
#include "tvlab/error.hpp"
#include "tvlab/instance_gen.hpp"
#include "tvlab/json_io.hpp"
#include "tvlab/oracles.hpp"
#include "tvlab/reductions.hpp"
#include "tvlab/tv_engine.hpp"
#include "tvlab/verify.hpp"

namespace {

using tvlab::json::json;

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kCapExceeded = 3,
  kInvariantFailure = 4,
  kOracleMismatch = 5,
};

std::size_t default_cap() {
  if (const char* env = std::getenv("TVLAB_MAX_N"); env != nullptr && *env != '\0') {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      throw tvlab::DomainError(std::string("TVLAB_MAX_N is not a number: ") + env);
    }
  }
  return tvlab::kDefaultMaxN;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tvlab::FormatError("cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class RunReport {
 public:
  RunReport(std::string command, std::string input)
      : command_(std::move(command)),
        digest_(input.empty() ? "" : fnv1a_hex(input)),
        start_(std::chrono::steady_clock::now()) {}

  json& outputs() { return outputs_; }

  void verdict(const std::string& invariant, bool pass, const std::string& detail = {}) {
    json v{{"invariant", invariant}, {"pass", pass}};
    if (!detail.empty()) v["detail"] = detail;
    verdicts_.push_back(std::move(v));
  }

  void emit() const {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    json line{{"command", command_}, {"outputs", outputs_}, {"verdicts", verdicts_}};
    if (!digest_.empty()) line["input_digest"] = digest_;
    line["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    std::cout << line.dump() << '\n';
  }

 private:
  std::string command_;
  std::string digest_;
  std::chrono::steady_clock::time_point start_;
  json outputs_ = json::object();
  json verdicts_ = json::array();
};

struct CommonFlags {
  std::string input = "-";
  std::size_t max_n = 0;
  unsigned jobs = 1;
  int digits = 20;

  tvlab::SweepOptions sweep() const { return {max_n, jobs}; }
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_input = true) {
  if (with_input) cmd->add_option("input", flags.input, "input JSON file, '-' for stdin");
  cmd->add_option("--max-n", flags.max_n, "enumeration cap (default TVLAB_MAX_N or 24)");
  cmd->add_option("--jobs", flags.jobs, "worker threads for outcome sweeps")->check(CLI::Range(1, 256));
  cmd->add_option("--digits", flags.digits, "digits in decimal renderings")->check(CLI::Range(0, 1000));
}

// ---------------------------------------------------------------------------

int cmd_tv(const std::string& echo, const CommonFlags& f, bool all_forms, bool witness) {
  const std::string text = read_input(f.input);
  const auto [p, q] = tvlab::json::pair_from_json(tvlab::json::parse(text));
  RunReport report(echo, text);

  const tvlab::TvResult event = tvlab::tv_max_event(p, q, f.sweep());
  report.outputs()["n"] = p.dimension();
  report.outputs()["tv"] = event.value.str();
  report.outputs()["tv_decimal"] = event.value.decimal(f.digits);
  int code = kOk;
  if (all_forms) {
    const tvlab::Rational half_abs = tvlab::tv_half_abs(p, q, f.sweep());
    const tvlab::Rational positive = tvlab::tv_positive_part(p, q, f.sweep());
    report.outputs()["forms"] = json{{"max_event", event.value.str()},
                                     {"half_abs", half_abs.str()},
                                     {"positive_part", positive.str()}};
    const bool agree = half_abs == positive && positive == event.value;
    report.verdict("three_forms_equal", agree);
    if (!agree) code = kInvariantFailure;
  }
  if (witness) report.outputs()["witness"] = event.witness;
  report.emit();
  std::cerr << "tv = " << event.value.str() << " ~ " << event.value.decimal(f.digits) << '\n';
  return code;
}

int cmd_membership(const std::string& echo, const CommonFlags& f) {
  const std::string text = read_input(f.input);
  const auto [p, q] = tvlab::json::pair_from_json(tvlab::json::parse(text));
  RunReport report(echo, text);
  const tvlab::MembershipReport m = tvlab::accepting_path_count(p, q, f.sweep());
  report.outputs() = tvlab::json::to_json(m);
  report.outputs()["n"] = p.dimension();
  report.verdict("accepting_paths_equal_2M_tv", true);
  report.emit();
  std::cerr << "M = " << m.M.get_str() << ", accepting paths = " << m.accepting_paths.get_str()
            << ", tv = " << m.tv_from_paths.str() << '\n';
  return kOk;
}

int cmd_divergence(const std::string& echo, const CommonFlags& f, const std::string& measure_name,
                   bool bits, unsigned precision, bool brute) {
  const std::string text = read_input(f.input);
  const auto [p, q] = tvlab::json::pair_from_json(tvlab::json::parse(text));
  RunReport report(echo, text);

  tvlab::DivergenceOptions opts;
  opts.digits = precision;
  opts.base = bits ? tvlab::LogBase::kBits : tvlab::LogBase::kNats;
  opts.max_n = f.max_n;
  const tvlab::Measure measure = tvlab::parse_measure(measure_name);
  const tvlab::DivergenceValue value = tvlab::divergence(measure, p, q, opts);

  json& out = report.outputs();
  out["measure"] = std::string(tvlab::measure_name(measure));
  out["n"] = p.dimension();
  out["finite"] = value.finite;
  out["value"] = value.value.str(f.digits);
  out["precision_digits"] = precision;
  if (measure == tvlab::Measure::kKl) out["unit"] = bits ? "bits" : "nats";
  if (value.exact) out["exact"] = value.exact->str();

  int code = kOk;
  if (brute) {
    const tvlab::DivergenceValue check = tvlab::divergence_bruteforce(measure, p, q, opts);
    bool agree = check.finite == value.finite;
    if (agree && value.finite) {
      agree = value.exact ? value.exact == check.exact
                          : abs(value.value - check.value) <=
                                tvlab::Decimal(tvlab::Rational(tvlab::BigInt(1),
                                                               tvlab::BigInt("1000000000000")),
                                               precision);
    }
    out["bruteforce_value"] = check.value.str(f.digits);
    report.verdict("closed_form_matches_enumeration", agree);
    if (!agree) code = kInvariantFailure;
  }
  report.emit();
  std::cerr << tvlab::measure_name(measure) << " = "
            << (value.finite ? value.value.str(f.digits) : std::string("inf (not absolutely continuous)"))
            << '\n';
  return code;
}

int cmd_reduce(const std::string& echo, const CommonFlags& f, const std::string& kind, bool solve,
               bool verify) {
  const std::string text = read_input(f.input);
  const json doc = tvlab::json::parse(text);
  RunReport report(echo, text);
  const tvlab::OracleBudget budget{f.max_n};

  std::optional<std::uint64_t> count;
  std::optional<std::uint64_t> oracle;
  if (kind == "subsetprod") {
    const tvlab::SubsetProdInstance inst = tvlab::json::subsetprod_from_json(doc);
    report.outputs()["pmfequals"] = tvlab::json::to_json(tvlab::subsetprod_to_pmfequals(inst));
    if (solve || verify) count = tvlab::solve_subsetprod_via_tv(inst, f.sweep());
    if (verify) oracle = tvlab::brute_subsetprod(inst, budget);
  } else {
    const tvlab::PmfEqualsInstance inst = tvlab::json::pmfequals_from_json(doc);
    if (inst.value().is_zero()) {
      report.outputs()["artifacts"] = nullptr;  // closed-form path, no gadget
    } else {
      report.outputs()["artifacts"] = tvlab::json::to_json(tvlab::build_gadgets(inst));
    }
    if (solve || verify) count = tvlab::solve_pmfequals_via_tv(inst, f.sweep());
    if (verify) oracle = tvlab::brute_pmfequals(inst, budget);
  }

  int code = kOk;
  if (count) report.outputs()["count"] = *count;
  if (oracle) {
    report.outputs()["oracle_count"] = *oracle;
    const bool agree = *oracle == *count;
    report.verdict("recovered_count_matches_oracle", agree);
    if (!agree) code = kOracleMismatch;
  }
  report.emit();
  if (count) std::cerr << "count via TV = " << *count << '\n';
  if (oracle) {
    std::cerr << "oracle count  = " << *oracle << (code == kOk ? "  (pass)" : "  (MISMATCH)") << '\n';
  }
  return code;
}

int cmd_oracle(const std::string& echo, const CommonFlags& f, const std::string& kind) {
  const std::string text = read_input(f.input);
  const json doc = tvlab::json::parse(text);
  RunReport report(echo, text);
  const tvlab::OracleBudget budget{f.max_n};
  const std::uint64_t count =
      kind == "subsetprod" ? tvlab::brute_subsetprod(tvlab::json::subsetprod_from_json(doc), budget)
                           : tvlab::brute_pmfequals(tvlab::json::pmfequals_from_json(doc), budget);
  report.outputs()["kind"] = kind;
  report.outputs()["count"] = count;
  report.emit();
  std::cerr << kind << " solutions: " << count << '\n';
  return kOk;
}

struct GenFlags {
  std::string kind;
  std::size_t n = 8;
  std::optional<unsigned> bits;
  std::optional<std::uint64_t> denom_max;
  std::uint64_t seed = 1;
  std::optional<unsigned> planted;
  std::uint64_t a_max = 50;
};

int cmd_gen(const GenFlags& g) {
  if (g.bits && g.denom_max) throw tvlab::DomainError("--bits and --denom-max are mutually exclusive");
  if (g.planted && g.kind != "pmfequals") throw tvlab::DomainError("--planted applies to --kind pmfequals only");
  if ((g.bits || g.denom_max) && g.kind == "subsetprod") {
    throw tvlab::DomainError("--bits/--denom-max do not apply to --kind subsetprod");
  }
  if (g.n == 0) throw tvlab::DomainError("--n must be >= 1");
  const tvlab::ParamSpec spec =
      g.denom_max ? tvlab::ParamSpec::general(*g.denom_max) : tvlab::ParamSpec::dyadic(g.bits.value_or(4));
  tvlab::Rng rng(g.seed);
  json out;
  if (g.kind == "pair") {
    const tvlab::ProductDistribution p = tvlab::random_distribution(rng, g.n, spec);
    const tvlab::ProductDistribution q = tvlab::random_distribution(rng, g.n, spec);
    out = tvlab::json::pair_to_json(p, q);
  } else if (g.kind == "pmfequals") {
    out = tvlab::json::to_json(tvlab::random_pmfequals(rng, g.n, spec, g.planted.value_or(0) >= 1));
  } else {
    if (g.a_max == 0 || g.a_max > (std::uint64_t{1} << 31)) throw tvlab::DomainError("--a-max must be in [1, 2^31]");
    out = tvlab::json::to_json(tvlab::random_subsetprod(rng, g.n, g.a_max));
  }
  std::cout << out.dump() << '\n';
  return kOk;
}

struct VerifyFlags {
  std::string suite;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t max_n = 10;
  unsigned jobs = 1;
};

bool oracle_invariant(const std::string& name) {
  return name == "recovery_matches_oracle" || name == "end_to_end" ||
         name == "transform_count_preservation";
}

int cmd_verify(const std::string& echo, const VerifyFlags& v) {
  std::vector<std::string> suites;
  if (v.suite == "all") {
    suites = tvlab::suite_names();
  } else {
    suites.push_back(v.suite);
  }
  tvlab::SuiteConfig cfg;
  cfg.trials = v.trials;
  cfg.seed = v.seed;
  cfg.max_n = v.max_n;
  cfg.sweep = {default_cap(), v.jobs};
  if (cfg.max_n + 2 > cfg.sweep.max_n) {
    throw tvlab::CapExceeded(cfg.max_n + 2, cfg.sweep.max_n);
  }

  RunReport report(echo, "");
  int code = kOk;
  for (const std::string& name : suites) {
    const tvlab::SuiteReport suite = tvlab::run_suite(name, cfg);
    std::cout << suite.jsonl();
    for (const tvlab::Verdict& verdict : suite.verdicts) {
      if (verdict.pass) continue;
      code = oracle_invariant(verdict.invariant) ? kOracleMismatch
                                                 : std::max<int>(code, kInvariantFailure);
    }
    report.verdict("suite:" + name, suite.all_pass(),
                   std::to_string(suite.verdicts.size() - suite.failures()) + "/" +
                       std::to_string(suite.verdicts.size()) + " checks passed");
    std::cerr << name << ": " << (suite.all_pass() ? "PASS" : "FAIL") << " ("
              << suite.verdicts.size() - suite.failures() << "/" << suite.verdicts.size() << ")\n";
  }
  report.outputs()["suites"] = suites;
  report.outputs()["trials"] = v.trials;
  report.outputs()["seed"] = v.seed;
  report.emit();
  return code;
}

std::string join_args(int argc, char** argv) {
  std::string s = "tvlab";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact total variation distance between product distributions"};
  app.require_subcommand(1);

  CommonFlags common;
  bool all_forms = false;
  bool witness = false;
  auto* tv = app.add_subcommand("tv", "exact TV distance of a {\"P\",\"Q\"} pair");
  add_common(tv, common);
  tv->add_flag("--all-forms", all_forms, "compute and cross-check all three TV forms");
  tv->add_flag("--witness", witness, "emit the maximising event {x : P(x) > Q(x)}");

  auto* membership = app.add_subcommand("membership", "accepting-path count and 2M normalisation");
  add_common(membership, common);

  std::string measure;
  bool bits = false;
  unsigned precision = tvlab::kDefaultDigits;
  bool brute = false;
  auto* divergence = app.add_subcommand("divergence", "closed-form KL / chi-square / squared Hellinger");
  add_common(divergence, common);
  divergence->add_option("--measure", measure, "kl | chi2 | hellinger2")
      ->required()
      ->check(CLI::IsMember({"kl", "chi2", "hellinger2"}));
  divergence->add_flag("--bits", bits, "report KL in bits instead of nats");
  divergence->add_option("--precision", precision, "working precision in decimal digits")
      ->check(CLI::Range(10U, 10000U));
  divergence->add_flag("--brute", brute, "cross-check against enumeration");

  std::string reduce_kind;
  bool solve = false;
  bool verify_flag = false;
  auto* reduce = app.add_subcommand("reduce", "build reduction instances and gadgets");
  reduce->add_option("kind", reduce_kind, "subsetprod | pmfequals")
      ->required()
      ->check(CLI::IsMember({"subsetprod", "pmfequals"}));
  add_common(reduce, common);
  reduce->add_flag("--solve", solve, "run the full chain and report the recovered count");
  reduce->add_flag("--verify", verify_flag, "also run the brute-force oracle and compare");

  std::string oracle_kind;
  auto* oracle = app.add_subcommand("oracle", "brute-force solution count");
  oracle->add_option("kind", oracle_kind, "subsetprod | pmfequals")
      ->required()
      ->check(CLI::IsMember({"subsetprod", "pmfequals"}));
  add_common(oracle, common);

  GenFlags gen_flags;
  auto* gen = app.add_subcommand("gen", "seeded random instance on stdout");
  gen->add_option("--kind", gen_flags.kind, "subsetprod | pmfequals | pair")
      ->required()
      ->check(CLI::IsMember({"subsetprod", "pmfequals", "pair"}));
  gen->add_option("--n", gen_flags.n, "coordinate / item count");
  gen->add_option("--bits", gen_flags.bits, "dyadic parameters a/2^bits")->check(CLI::Range(1U, 62U));
  gen->add_option("--denom-max", gen_flags.denom_max, "general rationals a/b with b <= denom-max")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 32));
  gen->add_option("--seed", gen_flags.seed, "generator seed");
  gen->add_option("--planted", gen_flags.planted, "k >= 1: v is attained by some outcome");
  gen->add_option("--a-max", gen_flags.a_max, "subsetprod item bound");

  VerifyFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "run invariant suites over seeded instances");
  verify->add_option("--suite", verify_flags.suite,
                     "forms | membership | claim1 | claims23 | lemma2 | chain | tensorize | all")
      ->required();
  verify->add_option("--trials", verify_flags.trials, "instances per suite");
  verify->add_option("--seed", verify_flags.seed, "seed");
  verify->add_option("--max-n", verify_flags.max_n, "largest instance dimension")->check(CLI::Range(1, 60));
  verify->add_option("--jobs", verify_flags.jobs, "worker threads")->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  const std::string echo = join_args(argc, argv);
  try {
    if (common.max_n == 0) common.max_n = default_cap();
    if (*tv) return cmd_tv(echo, common, all_forms, witness);
    if (*membership) return cmd_membership(echo, common);
    if (*divergence) return cmd_divergence(echo, common, measure, bits, precision, brute);
    if (*reduce) return cmd_reduce(echo, common, reduce_kind, solve, verify_flag);
    if (*oracle) return cmd_oracle(echo, common, oracle_kind);
    if (*gen) return cmd_gen(gen_flags);
    if (*verify) {
      const auto& names = tvlab::suite_names();
      if (verify_flags.suite != "all" &&
          std::find(names.begin(), names.end(), verify_flags.suite) == names.end()) {
        std::cerr << "error: unknown suite \"" << verify_flags.suite << "\"\n";
        return kInputError;
      }
      return cmd_verify(echo, verify_flags);
    }
  } catch (const tvlab::CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const tvlab::InvariantViolation& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kInvariantFailure;
  } catch (const tvlab::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const tvlab::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
