#include <doctest.h>

#include "tvlab/error.hpp"
#include "tvlab/verify.hpp"

TEST_CASE("every suite passes on a small budget") {
  tvlab::SuiteConfig cfg;
  cfg.trials = 12;
  cfg.seed = 3;
  cfg.max_n = 6;
  for (const std::string& name : tvlab::suite_names()) {
    CAPTURE(name);
    const auto report = tvlab::run_suite(name, cfg);
    CHECK(report.suite == name);
    CHECK_FALSE(report.verdicts.empty());
    CHECK(report.failures() == 0);
  }
}

TEST_CASE("unknown suite is rejected") {
  CHECK_THROWS_AS(tvlab::run_suite("nope", {}), tvlab::DomainError);
}

TEST_CASE("suite output is reproducible") {
  tvlab::SuiteConfig cfg;
  cfg.trials = 20;
  cfg.seed = 77;
  cfg.max_n = 6;
  const auto first = tvlab::run_suite("claims23", cfg).jsonl();
  CHECK(first == tvlab::run_suite("claims23", cfg).jsonl());
  cfg.seed = 78;
  CHECK(first != tvlab::run_suite("claims23", cfg).jsonl());
}
