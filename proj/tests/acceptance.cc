// Acceptance criteria, one PASS/FAIL line each. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "golden_util.h"
#include "mmspace/bench.h"
#include "mmspace/family.h"
#include "mmspace/spectral.h"
#include "mmspace/transport.h"

using namespace mmspace;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<const Check*> with_prefix(const CheckReport& r, const std::string& needle) {
  std::vector<const Check*> out;
  for (const Check& c : r.checks) {
    if (c.name.find(needle) != std::string::npos) out.push_back(&c);
  }
  return out;
}

int count_failed(const std::vector<const Check*>& checks) {
  int failed = 0;
  for (const Check* c : checks) failed += c->status == CheckStatus::kFail;
  return failed;
}

std::string cli(const std::vector<std::string>& args, const std::string& input, int* code) {
  std::istringstream in(input);
  std::ostringstream out, err;
  *code = run_cli(args, in, out, err);
  return out.str();
}

// Shared by criteria 2, 3 and 5.
const CheckReport& lemma_report() {
  static const CheckReport report = verify_suite("separation_lemmas");
  return report;
}

Outcome strassen() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const CheckReport r = verify_suite("strassen");
  const double secs = seconds_since(t0);
  const auto inst = with_prefix(r, "/lambda=");
  double max_gap = 0.0;
  int max_n = 0;
  for (const Check* c : inst) {
    max_gap = std::max(max_gap, c->measured.at("gap"));
    max_n = std::max(max_n, static_cast<int>(c->measured.at("n")));
  }
  o.require(inst.size() >= 150, "fewer than 50 spaces x 3 lambdas");
  o.require(max_n <= 8, "space larger than 8 points");
  o.require(r.passed() && count_failed(inst) == 0, "a strassen check failed");
  o.require(max_gap <= 1e-6, fmt("max gap %.3g", max_gap));
  o.require(secs < 120, fmt("runtime %.1fs", secs));
  o.detail = o.ok ? fmt("%g instances, max gap %.3g", inst.size(), max_gap) +
                        fmt(", %.2fs", secs)
                  : o.detail;
  return o;
}

Outcome union_bound() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto checks = with_prefix(lemma_report(), "/union_bound_k");
  const double secs = seconds_since(t0);
  double worst = 1.0;
  double families = 0;
  for (const Check* c : checks) {
    worst = std::min(worst, c->measured.at("min_margin"));
    families += c->measured.at("families");
  }
  o.require(checks.size() >= 200, "fewer than 100 spaces x k in {1,2}");
  o.require(count_failed(checks) == 0, "union bound failed");
  o.require(worst >= -1e-12, fmt("min margin %.3g", worst));
  o.require(secs < 120, fmt("runtime %.1fs", secs));
  if (o.ok) o.detail = fmt("%g instances, %g families", checks.size(), families) + fmt(", min margin %.3g", worst);
  return o;
}

Outcome levy() {
  Outcome o;
  const auto checks = with_prefix(lemma_report(), "/levy_kappa=");
  o.require(checks.size() >= 300, "fewer than 100 spaces x 3 kappas");
  o.require(count_failed(checks) == 0, "lower bound above sep(kappa/2, kappa/2)");
  for (const Check* c : checks) {
    o.require(c->measured.at("lower") <= c->measured.at("upper") + 1e-12, c->name);
  }
  if (o.ok) o.detail = fmt("%g intervals", checks.size());
  return o;
}

Outcome conc_sep() {
  Outcome o;
  const CheckReport r = verify_suite("conc_sep");
  const auto first = with_prefix(r, "/concentration_implies_separation");
  const auto second = with_prefix(r, "/separation_implies_concentration");
  double evaluated = 0;
  for (const Check& c : r.checks) evaluated += c.measured.at("evaluated");
  o.require(first.size() >= 100 && second.size() >= 100, "fewer than 100 spaces");
  o.require(r.count(CheckStatus::kFail) == 0, "a proof-level inequality failed");
  if (o.ok) o.detail = fmt("%g spaces, %g grid evaluations", first.size(), evaluated);
  return o;
}

Outcome structure() {
  Outcome o;
  const auto checks = with_prefix(lemma_report(), "/structure");
  int counts[4] = {0, 0, 0, 0};
  for (const Check* c : checks) {
    counts[0] += c->measured.at("monotone") == 1.0;
    counts[1] += c->measured.at("permutation") == 1.0;
    counts[2] += c->measured.at("pigeonhole") == 1.0 && c->measured.at("pigeonhole_total") > 1.0;
    counts[3] += c->measured.at("scaling") == 1.0;
  }
  o.require(count_failed(checks) == 0, "a structure property failed");
  for (int k : counts) o.require(k >= 50, "a property holds on fewer than 50 instances");
  if (o.ok) {
    o.detail = "monotone " + std::to_string(counts[0]) + ", permutation " +
               std::to_string(counts[1]) + ", pigeonhole " + std::to_string(counts[2]) +
               ", scaling " + std::to_string(counts[3]);
  }
  return o;
}

Outcome spectral_golden() {
  Outcome o;
  const Spectrum c4 = spectrum(cycle(4));
  const double want4[] = {0, 2, 2, 4};
  double err = 0.0;
  for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(c4.eigenvalues(i) - want4[i]));
  const Spectrum x2 = spectrum(two_point(1.0));
  err = std::max({err, std::abs(x2.eigenvalues(0)), std::abs(x2.eigenvalues(1) - 2.0)});
  o.require(err <= 1e-9, fmt("eigenvalue error %.3g", err));
  double heat = 0.0;
  for (const Space& s : {cycle(4), two_point(1.0), random_space(9, 3, true)}) {
    const Spectrum spec = spectrum(s);
    Eigen::VectorXd mu(s.size());
    for (int x = 0; x < s.size(); ++x) mu(x) = s.mu(x);
    for (double t : {0.1, 1.0, 10.0}) {
      const HeatKernel p = heat_kernel(spec, t);
      heat = std::max(heat, ((p.values * mu).array() - 1.0).abs().maxCoeff());
      heat = std::max(heat, (p.values - p.values.transpose()).cwiseAbs().maxCoeff());
      for (double u : {0.1, 1.0, 10.0}) {
        const HeatKernel q = heat_kernel(spec, u);
        heat = std::max(heat, (p.values * mu.asDiagonal() * q.values -
                               heat_kernel(spec, t + u).values)
                                  .cwiseAbs()
                                  .maxCoeff());
      }
    }
  }
  o.require(heat <= 1e-8, fmt("heat kernel error %.3g", heat));
  o.require(verify_suite("spectral_sanity").passed(), "spectral_sanity suite failed");
  if (o.ok) o.detail = fmt("eigenvalue error %.3g, heat kernel error %.3g", err, heat);
  return o;
}

Outcome entropy() {
  Outcome o;
  const CheckReport r = verify_suite("cd_diagnostic");
  const Check* nonneg = r.find("cd_diagnostic/entropy/nonnegative");
  o.require(nonneg && nonneg->status == CheckStatus::kPass, "entropy sign check failed");
  const Space x2 = two_point(1.0);
  const double e = relative_entropy(x2, Measure::delta(x2, 0));
  o.require(std::abs(e - std::log(2.0)) <= 1e-12, fmt("Ent(delta_a) = %.17g", e));
  o.require(r.count(CheckStatus::kFail) == 0, "cd_diagnostic had a hard failure");
  if (o.ok && nonneg) {
    o.detail = fmt("min Ent %.3g, Ent at mu %.3g", nonneg->measured.at("min_entropy"),
                   nonneg->measured.at("max_entropy_at_reference"));
  }
  return o;
}

Outcome cgy() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const CheckReport r = verify_suite("cgy_family");
  std::string values;
  for (int n : {8, 16, 32}) {
    const std::string base = "cgy_family/cycle(" + std::to_string(n) + ")";
    const Check* band = r.find(base + "/band");
    const Check* scale = r.find(base + "/scale_invariance");
    o.require(band && band->status == CheckStatus::kPass, base + " band");
    o.require(scale && scale->status == CheckStatus::kPass, base + " scale invariance");
    if (band) values += fmt(" %.4f", band->measured.at("c_emp"));
  }
  const Space c4 = cycle(4);
  const Subset sets[] = {Subset::from_indices(c4, std::vector<int>{0}),
                         Subset::from_indices(c4, std::vector<int>{2})};
  const double c = cgy_constant(c4, sets);
  const double oracle = 8.0 / std::pow(std::log(16.0), 2);
  o.require(std::abs(c - oracle) <= 1e-4, fmt("C4 c_emp %.6f vs %.6f", c, oracle));
  const double secs = seconds_since(t0);
  o.require(secs < 60, fmt("runtime %.1fs", secs));
  if (o.ok) o.detail = "c_emp" + values + fmt(", C4 %.6f", c);
  return o;
}

Outcome golden_reports() {
  Outcome o;
  int code = 0;
  const std::string c12 = cli({"gen", "cycle", "--n", "12"}, "", &code);
  const std::string c16 = cli({"gen", "cycle", "--n", "16"}, "", &code);
  struct Case {
    const char* file;
    std::vector<std::string> args;
    const std::string* input;
  } cases[] = {
      {"probe_cycle12.json", {"probe32", "--k", "2", "--grid", "1/12,2/12"}, &c12},
      {"ratios_cycle16.json", {"ratios", "--kmax", "8"}, &c16},
  };
  for (const Case& c : cases) {
    int a = 0, b = 0;
    const std::string first = cli(c.args, *c.input, &a);
    const std::string second = cli(c.args, *c.input, &b);
    o.require(a == 0 && b == 0, std::string(c.file) + " exit code");
    o.require(first == second, std::string(c.file) + " not byte-identical across reruns");
    const std::string golden = read_file(golden_path(c.file));
    o.require(!golden.empty(), std::string("missing ") + c.file);
    if (golden.empty()) continue;
    const std::string diff = json_mismatch(Json::parse(first), Json::parse(golden), 1e-9);
    o.require(diff.empty(), std::string(c.file) + " " + diff);
  }
  if (o.ok) o.detail = "probe cycle(12), ratios cycle(16) match golden, reruns identical";
  return o;
}

Outcome davies_gaffney() {
  Outcome o;
  const Space x2 = two_point(1.0);
  const double ts[] = {0.1, 1.0};
  const CheckReport r = davies_gaffney_check(x2, Subset::from_indices(x2, std::vector<int>{0}),
                                             Subset::from_indices(x2, std::vector<int>{1}), ts);
  const auto& small = r.checks.at(0).measured;
  const auto& large = r.checks.at(1).measured;
  const double lhs_small = 0.25 * (1 - std::exp(-0.2)), rhs_small = 0.5 * std::exp(-2.5);
  const double lhs_large = 0.25 * (1 - std::exp(-2.0)), rhs_large = 0.5 * std::exp(-0.25);
  o.require(std::abs(small.at("lhs") - lhs_small) <= 1e-5 &&
                std::abs(small.at("rhs") - rhs_small) <= 1e-5,
            "t=0.1 values off closed form");
  o.require(small.at("lhs") > small.at("rhs"), "t=0.1 violation not reproduced");
  o.require(std::abs(large.at("lhs") - lhs_large) <= 1e-5 &&
                std::abs(large.at("rhs") - rhs_large) <= 1e-5,
            "t=1 values off closed form");
  o.require(large.at("lhs") <= large.at("rhs"), "t=1 bound not satisfied");
  o.require(r.count(CheckStatus::kFail) == 0, "diagnostic reported as failure");
  if (o.ok) {
    o.detail = fmt("t=0.1: %.5f > %.5f", small.at("lhs"), small.at("rhs")) +
               fmt("; t=1: %.4f <= %.4f", large.at("lhs"), large.at("rhs"));
  }
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"strassen duality", strassen},
      {"neighborhood union bound", union_bound},
      {"levy radius below separation", levy},
      {"concentration/separation inequalities", conc_sep},
      {"separation structure", structure},
      {"spectral golden values and heat kernel", spectral_golden},
      {"relative entropy", entropy},
      {"cgy empirical constants", cgy},
      {"probe and ratio golden reports", golden_reports},
      {"davies-gaffney on two points", davies_gaffney},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2d %s: %s\n", o.ok ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    failed += !o.ok;
  }
  std::printf("%d/%d criteria passed\n", 10 - failed, 10);
  return failed;
}
