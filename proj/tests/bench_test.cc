#include <gtest/gtest.h>

#include <cmath>

#include "mmspace/bench.h"
#include "mmspace/family.h"
#include "oracles/brute_force.h"
#include "test_util.h"

using namespace mmspace;

namespace {

// k arcs of m points on C_n; every class change around the circle needs a
// gap of sep - 1 unassigned points, and equal gaps achieve the bound.
double cycle_sep(int n, int k, int m) { return std::floor((n - k * m) / static_cast<double>(k)) + 1; }

TEST(Probe, TwoPointNotApplicable) {
  const double grid[] = {0.1, 0.25, 0.4};
  const ProbeResult p = sep_reduction_probe(two_point(1.0), 2, grid);
  EXPECT_FALSE(p.applicable());
  EXPECT_TRUE(std::isinf(p.d_emp));
  EXPECT_TRUE(std::isnan(p.c_emp));
  for (double v : p.sep_k_plus) EXPECT_EQ(v, 0.0);
  const Json j = probe_to_json(p);
  EXPECT_TRUE(j["D_emp"].is_null());
  EXPECT_TRUE(j["c_emp"].is_null());
  EXPECT_EQ(j["applicable"], false);
}

TEST(Probe, Cycle12MatchesClosedForm) {
  const double grid[] = {1.0 / 12, 2.0 / 12};
  const ProbeResult p = sep_reduction_probe(cycle(12), 2, grid);
  ASSERT_TRUE(p.applicable());
  for (int m : {1, 2}) {
    EXPECT_DOUBLE_EQ(p.sep_k[m - 1], cycle_sep(12, 2, m));
    EXPECT_DOUBLE_EQ(p.sep_k_plus[m - 1], cycle_sep(12, 3, m));
  }
  const double d = std::min(std::log(12.0) / 4, std::log(6.0) / 3);
  EXPECT_NEAR(p.d_emp, d, 1e-15);
  const double c = std::max(6 * d / std::log(12.0), 5 * d / std::log(6.0));
  EXPECT_NEAR(p.c_emp, c, 1e-15);
  EXPECT_NEAR(p.d_emp, 0.59725315640935, 1e-12);
  EXPECT_NEAR(p.c_emp, 5.0 / 3.0, 1e-12);
}

TEST(Probe, Cycle8MatchesBruteForce) {
  const Space c8 = cycle(8);
  const double grid[] = {0.125, 0.25};
  const ProbeResult p = sep_reduction_probe(c8, 2, grid);
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_DOUBLE_EQ(p.sep_k[i], oracle::separation(c8, {grid[i], grid[i]}));
    EXPECT_DOUBLE_EQ(p.sep_k_plus[i], oracle::separation(c8, {grid[i], grid[i], grid[i]}));
  }
}

TEST(Probe, ScaleInvariantConstant) {
  const double grid[] = {1.0 / 12, 2.0 / 12, 3.0 / 12};
  const ProbeResult a = sep_reduction_probe(cycle(12), 2, grid);
  const ProbeResult b = sep_reduction_probe(scaled(cycle(12), 2.5), 2, grid);
  EXPECT_NEAR(a.c_emp, b.c_emp, 1e-12);
  EXPECT_NEAR(a.d_emp, 2.5 * b.d_emp, 1e-12);
}

TEST(Probe, Errors) {
  const double bad[] = {0.1, 0.6};
  EXPECT_MM_ERROR(sep_reduction_probe(cycle(6), 2, bad), ErrorCode::kBadGrid);
  EXPECT_MM_ERROR(sep_reduction_probe(cycle(6), 2, std::span<const double>{}),
                  ErrorCode::kBadGrid);
  const double ok[] = {0.1};
  EXPECT_MM_ERROR(sep_reduction_probe(cycle(6), 1, ok), ErrorCode::kBadParameter);
  EXPECT_MM_ERROR(sep_reduction_probe(cycle(16), 2, ok), ErrorCode::kTooLargeForExact);
}

TEST(Probe, DefaultGrid) {
  EXPECT_EQ(default_kappa_grid(cycle(4)), (std::vector<double>{0.25}));
  EXPECT_EQ(default_kappa_grid(two_point(1.0)), std::vector<double>{});
  EXPECT_EQ(default_kappa_grid(cycle(6)).size(), 2u);
}

TEST(Suites, Names) {
  EXPECT_EQ(suite_names(),
            (std::vector<std::string>{"strassen", "separation_lemmas", "conc_sep",
                                      "spectral_sanity", "cgy_family", "cd_diagnostic", "all"}));
  EXPECT_MM_ERROR(verify_suite("nope"), ErrorCode::kUnknownSuite);
}

TEST(Suites, SmallConfigsPass) {
  SuiteConfig config;
  config.seeds = 6;
  for (const std::string& name : suite_names()) {
    const CheckReport r = verify_suite(name, config);
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_EQ(r.suite, name);
    EXPECT_GT(r.checks.size(), 0u);
    EXPECT_TRUE(std::is_sorted(r.checks.begin(), r.checks.end(),
                               [](const Check& a, const Check& b) { return a.name < b.name; }));
  }
}

TEST(Suites, Deterministic) {
  SuiteConfig config;
  config.seeds = 5;
  config.base_seed = 17;
  for (const char* name : {"strassen", "conc_sep", "cd_diagnostic"}) {
    EXPECT_EQ(canonical_dump(report_to_json(verify_suite(name, config), false)),
              canonical_dump(report_to_json(verify_suite(name, config), false)));
  }
  EXPECT_EQ(verify_suite("strassen", config).seed, 17u);
}

TEST(Suites, DiagnosticsNeverFail) {
  const CheckReport r = verify_suite("cd_diagnostic");
  EXPECT_GT(r.count(CheckStatus::kDiagnostic), 0);
  EXPECT_EQ(r.count(CheckStatus::kFail), 0);
}

TEST(Report, Json) {
  CheckReport r;
  r.suite = "demo";
  r.checks.push_back({"b", CheckStatus::kPass, {{"x", 1.0}}, std::nullopt});
  r.checks.push_back({"a", CheckStatus::kFail, {}, Json{{"space", "s"}}});
  r.sort_checks();
  EXPECT_FALSE(r.passed());
  const Json j = report_to_json(r, false);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["checks"][0]["name"], "a");
  EXPECT_EQ(j["checks"][0]["witness"]["space"], "s");
  EXPECT_EQ(j["counts"]["fail"], 1);
  EXPECT_FALSE(j.contains("runtime_ms"));
  EXPECT_TRUE(report_to_json(r).contains("runtime_ms"));
}

}  // namespace
