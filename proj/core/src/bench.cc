#include "mmspace/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>

#include "masks.h"
#include "mmspace/error.h"
#include "mmspace/family.h"
#include "mmspace/rng.h"
#include "mmspace/spectral.h"
#include "mmspace/transport.h"

namespace mmspace {

using detail::bit;
using detail::full_mask;
using detail::Mask;

namespace {

constexpr double kStrassenTol = 1e-6;
constexpr double kSpectralTol = 1e-8;
constexpr double kEigenGoldenTol = 1e-9;
constexpr double kEntropyTol = 1e-10;

std::string seeded(const std::string& prefix, uint64_t seed, const std::string& suffix = "") {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "/seed=%03llu", static_cast<unsigned long long>(seed));
  return prefix + buf + (suffix.empty() ? "" : "/" + suffix);
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

Check make_check(std::string name, bool ok, std::map<std::string, double> measured) {
  Check c;
  c.name = std::move(name);
  c.status = ok ? CheckStatus::kPass : CheckStatus::kFail;
  c.measured = std::move(measured);
  return c;
}

Check diagnostic(std::string name, std::map<std::string, double> measured) {
  Check c;
  c.name = std::move(name);
  c.status = CheckStatus::kDiagnostic;
  c.measured = std::move(measured);
  return c;
}

std::string weights_arg(const Measure& m) {
  std::string out;
  char buf[40];
  for (int i = 0; i < m.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", m[i]);
    if (i) out += ",";
    out += buf;
  }
  return out;
}

std::string kappas_arg(std::span<const double> kappas) {
  std::string out;
  char buf[40];
  for (size_t i = 0; i < kappas.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", kappas[i]);
    if (i) out += ",";
    out += buf;
  }
  return out;
}

Measure random_measure(Rng& rng, int n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = static_cast<double>(rng.below(8));
    total += x;
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (double& x : w) x /= total;
  return Measure::from_weights(std::move(w));
}

int count_seeds(const SuiteConfig& config, int fallback) {
  return config.seeds >= 0 ? config.seeds : fallback;
}

// ---------------------------------------------------------------------------
// strassen

void run_strassen(const SuiteConfig& config, CheckReport& report) {
  const int seeds = count_seeds(config, 50);
  double max_gap = 0.0;
  for (int i = 0; i < seeds; ++i) {
    const uint64_t seed = config.base_seed + static_cast<uint64_t>(i);
    const int n = 3 + static_cast<int>(seed % 6);
    const Space space = random_space(n, seed, seed % 2 == 0);
    Rng rng(seed ^ 0x5deece66dULL);
    const Measure mu = random_measure(rng, n);
    const Measure nu = random_measure(rng, n);
    for (double lambda : config.lambdas) {
      const double di = prohorov(space, mu, nu, lambda);
      const TransportDistance tra = transportation_distance(space, mu, nu, lambda);
      const double gap = std::abs(tra.value - di);
      max_gap = std::max(max_gap, gap);
      auto violation = plan_violation(space, tra.plan, mu, nu);
      const bool deficiency_ok = tra.plan.deficiency <= lambda * tra.value + 1e-12;
      Check c = make_check(seeded("strassen", seed, "lambda=" + fixed(lambda)),
                           gap <= kStrassenTol && !violation && deficiency_ok,
                           {{"n", n}, {"lambda", lambda}, {"prohorov", di},
                            {"transportation", tra.value}, {"gap", gap},
                            {"deficiency", tra.plan.deficiency}});
      if (c.status == CheckStatus::kFail) {
        const std::string args = " --lambda " + fixed(lambda) + " --nu0 " +
                                 weights_arg(mu) + " --nu1 " + weights_arg(nu);
        c.witness = Json{{"space", space_to_json(space)},
                         {"mu", std::vector<double>(mu.weights().begin(), mu.weights().end())},
                         {"nu", std::vector<double>(nu.weights().begin(), nu.weights().end())},
                         {"lambda", lambda},
                         {"plan_violation", violation.value_or("")},
                         {"replay", {"prohorov" + args, "transport" + args}}};
      }
      report.checks.push_back(std::move(c));
    }
  }
  report.checks.push_back(make_check("strassen/max_gap", max_gap <= kStrassenTol,
                                     {{"max_gap", max_gap}, {"tolerance", kStrassenTol}}));
}

// ---------------------------------------------------------------------------
// separation_lemmas

// Exhaustive check of the neighborhood union bound over every family of
// k in {1, 2} sets satisfying its hypotheses.
Check union_bound_instance(const Space& space, const std::vector<double>& kappas,
                       const std::string& name) {
  const int n = space.size();
  const int k = static_cast<int>(kappas.size()) - 1;
  const double r = separation_distance(space, kappas).value;
  const auto balls = detail::ball_masks(space, r, Closure::kClosed);
  std::vector<Mask> far(n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (space.dist(x, y) > r) far[x] |= bit(y);
    }
  }
  const Mask full = full_mask(n);
  std::vector<double> measure(size_t{1} << n, 0.0);
  for (Mask m = 1; m <= full; ++m) measure[m] = detail::mask_measure(space, m);

  const double bound = 1.0 - kappas.back();
  double worst = std::numeric_limits<double>::infinity();
  std::vector<Mask> worst_sets;
  long families = 0;
  for (Mask a0 = 1; a0 <= full; ++a0) {
    if (measure[a0] < kappas[0] - kMeasureTol) continue;
    const Mask cover0 = detail::neighborhood_mask(balls, a0);
    if (k == 1) {
      ++families;
      const double margin = measure[cover0] - bound;
      if (margin < worst) {
        worst = margin;
        worst_sets = {a0};
      }
      continue;
    }
    Mask allowed = full;
    for (Mask m = a0; m; m &= m - 1) allowed &= far[std::countr_zero(m)];
    for (Mask a1 = allowed; a1; a1 = (a1 - 1) & allowed) {
      if (measure[a1] < kappas[1] - kMeasureTol) continue;
      ++families;
      const Mask cover = cover0 | detail::neighborhood_mask(balls, a1);
      const double margin = measure[cover] - bound;
      if (margin < worst) {
        worst = margin;
        worst_sets = {a0, a1};
      }
    }
  }
  bool ok = families == 0 || worst >= -kMeasureTol;
  if (families > 0) {
    // Replay the tightest family through the public check.
    std::vector<Subset> sets;
    for (Mask m : worst_sets) sets.push_back(Subset::from_mask(space, m));
    ok = ok && check_neighborhood_bound(space, kappas, sets).passed();
  }
  Check c = make_check(name, ok,
                       {{"k", k}, {"r", r}, {"families", static_cast<double>(families)},
                        {"min_margin", families ? worst : 0.0}});
  if (!ok) {
    Json sets = Json::array();
    for (Mask m : worst_sets) sets.push_back(Subset::from_mask(space, m).indices());
    c.witness = Json{{"space", space_to_json(space)}, {"kappas", kappas},
                     {"sets", std::move(sets)},
                     {"replay", {"sep --kappas " + kappas_arg(kappas)}}};
  }
  return c;
}

std::vector<double> draw_kappas(Rng& rng, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(0.05 * static_cast<double>(1 + rng.below(8)));
  return out;
}

Check structure_instance(const Space& space, Rng& rng, const std::string& name) {
  auto sep = [&space](const std::vector<double>& kappas, SepMode mode = SepMode::kExact) {
    SeparationOptions options;
    options.mode = mode;
    return separation_distance(space, kappas, options).value;
  };
  const int count = 2 + static_cast<int>(rng.below(2));
  std::vector<double> kappas = draw_kappas(rng, count);
  std::vector<double> larger = kappas;
  for (double& k : larger) k += 0.05 * static_cast<double>(rng.below(3));
  const double base = sep(kappas);

  const bool monotone = sep(larger) <= base + kMeasureTol;
  std::vector<double> reversed(kappas.rbegin(), kappas.rend());
  std::vector<double> rotated = kappas;
  std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
  const bool permutation = std::abs(sep(reversed) - base) <= kMeasureTol &&
                           std::abs(sep(rotated) - base) <= kMeasureTol;
  std::vector<double> heavy = draw_kappas(rng, count);
  double total = 0.0;
  for (double k : heavy) total += k;
  heavy.back() = std::min(1.0, heavy.back() + (1.0 - total) + 0.05 + 0.05 * rng.below(4));
  total = 0.0;
  for (double k : heavy) total += k;
  const bool pigeonhole = total <= 1.0 || sep(heavy) == 0.0;
  const double s = 2.5;
  const double scaled_value =
      separation_distance(scaled(space, s), kappas).value;
  const bool scaling = std::abs(scaled_value - s * base) <= 1e-9 * std::max(1.0, s * base);
  const double heuristic = sep(kappas, SepMode::kHeuristic);
  const bool heuristic_ok = heuristic <= base + kMeasureTol;

  Check c = make_check(name, monotone && permutation && pigeonhole && scaling && heuristic_ok,
                       {{"sep", base},
                        {"monotone", monotone},
                        {"permutation", permutation},
                        {"pigeonhole", pigeonhole},
                        {"pigeonhole_total", total},
                        {"scaling", scaling},
                        {"heuristic", heuristic},
                        {"heuristic_le_exact", heuristic_ok}});
  if (c.status == CheckStatus::kFail) {
    c.witness = Json{{"space", space_to_json(space)}, {"kappas", kappas},
                     {"larger", larger}, {"heavy", heavy},
                     {"replay", {"sep --kappas " + kappas_arg(kappas),
                                 "sep --kappas " + kappas_arg(larger)}}};
  }
  return c;
}

Space lemma_space(uint64_t seed) {
  const int n = 4 + static_cast<int>(seed % 7);
  return random_space(n, seed, seed % 2 == 1);
}

void run_separation_lemmas(const SuiteConfig& config, CheckReport& report) {
  const int seeds = count_seeds(config, 100);
  for (int i = 0; i < seeds; ++i) {
    const uint64_t seed = config.base_seed + static_cast<uint64_t>(i);
    const Space space = lemma_space(seed);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int k : {1, 2}) {
      report.checks.push_back(union_bound_instance(
          space, draw_kappas(rng, k + 1),
          seeded("separation_lemmas", seed, "union_bound_k" + std::to_string(k))));
    }
    for (double kappa : {0.1, 0.25, 0.4}) {
      const LevyInterval levy = levy_radius_bounds(space, kappa);
      Check c = make_check(
          seeded("separation_lemmas", seed, "levy_kappa=" + fixed(kappa)),
          levy.lower <= levy.upper + kMeasureTol,
          {{"kappa", kappa}, {"lower", levy.lower}, {"upper", levy.upper}});
      if (c.status == CheckStatus::kFail) {
        c.witness = Json{{"space", space_to_json(space)}, {"kappa", kappa},
                         {"replay", {"levy --kappa " + fixed(kappa)}}};
      }
      report.checks.push_back(std::move(c));
    }
    report.checks.push_back(
        structure_instance(space, rng, seeded("separation_lemmas", seed, "structure")));
  }
}

// ---------------------------------------------------------------------------
// conc_sep

void run_conc_sep(const SuiteConfig& config, CheckReport& report) {
  const int seeds = count_seeds(config, 100);
  for (int i = 0; i < seeds; ++i) {
    const uint64_t seed = config.base_seed + static_cast<uint64_t>(i);
    const Space space = lemma_space(seed);
    CheckReport sub = conc_sep_checks(space);
    for (Check& c : sub.checks) {
      c.name = seeded("conc_sep", seed, c.name);
      if (c.witness) (*c.witness)["replay"] = {"conc --r " + fixed((*c.witness).value("r", 0.0))};
      report.checks.push_back(std::move(c));
    }
  }
}

// ---------------------------------------------------------------------------
// spectral_sanity

Check spectrum_invariants(const Space& space, const std::string& name) {
  const Spectrum spec = spectrum(space);
  const Eigen::MatrixXd lap = laplacian(space);
  const int n = space.size();
  Eigen::VectorXd mu(n);
  for (int x = 0; x < n; ++x) mu(x) = space.mu(x);
  const Eigen::MatrixXd& phi = spec.eigenfunctions;
  const double ortho =
      (phi.transpose() * mu.asDiagonal() * phi - Eigen::MatrixXd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXd r = lap * phi.col(j) - spec.eigenvalues(j) * phi.col(j);
    residual = std::max(residual, std::sqrt((r.array().square() * mu.array()).sum()));
  }
  const double lambda0 = std::abs(spec.eigenvalues(0));
  const double constant =
      (phi.col(0).array() - phi(0, 0)).abs().maxCoeff();
  const double gap = n > 1 ? spec.eigenvalues(1) : 0.0;
  const bool ok = lambda0 <= kEigenGoldenTol && constant <= kSpectralTol &&
                  ortho <= kSpectralTol && residual <= kSpectralTol && gap > 1e-9;
  Check c = make_check(name, ok,
                       {{"lambda0", spec.eigenvalues(0)}, {"lambda1", gap},
                        {"orthonormality_error", ortho}, {"residual", residual},
                        {"phi0_spread", constant}});
  if (!ok) c.witness = Json{{"space", space_to_json(space)}, {"replay", {"spectrum"}}};
  return c;
}

Check heat_kernel_invariants(const Space& space, const std::string& name) {
  const Spectrum spec = spectrum(space);
  const int n = space.size();
  Eigen::VectorXd mu(n);
  for (int x = 0; x < n; ++x) mu(x) = space.mu(x);
  const double ts[] = {0.1, 1.0, 10.0};
  double stochastic = 0.0, symmetric = 0.0, semigroup = 0.0;
  for (double t : ts) {
    const HeatKernel p = heat_kernel(spec, t);
    stochastic = std::max(stochastic, ((p.values * mu).array() - 1.0).abs().maxCoeff());
    symmetric = std::max(symmetric, (p.values - p.values.transpose()).cwiseAbs().maxCoeff());
    for (double s : ts) {
      const HeatKernel q = heat_kernel(spec, s);
      const HeatKernel sum = heat_kernel(spec, s + t);
      semigroup = std::max(
          semigroup,
          (q.values * mu.asDiagonal() * p.values - sum.values).cwiseAbs().maxCoeff());
    }
  }
  const bool ok = stochastic <= kSpectralTol && symmetric <= kSpectralTol &&
                  semigroup <= kSpectralTol;
  Check c = make_check(name, ok,
                       {{"stochasticity_error", stochastic},
                        {"symmetry_error", symmetric},
                        {"semigroup_error", semigroup}});
  if (!ok) c.witness = Json{{"space", space_to_json(space)}, {"replay", {"heatkernel --t 1"}}};
  return c;
}

Check eigen_golden(const Space& space, const std::vector<double>& expected,
                   const std::string& name) {
  const Spectrum spec = spectrum(space);
  double err = 0.0;
  for (size_t i = 0; i < expected.size(); ++i) {
    err = std::max(err, std::abs(spec.eigenvalues(static_cast<int>(i)) - expected[i]));
  }
  std::map<std::string, double> measured{{"max_error", err}};
  for (size_t i = 0; i < expected.size(); ++i) {
    measured["lambda" + std::to_string(i)] = spec.eigenvalues(static_cast<int>(i));
  }
  Check c = make_check(name, err <= kEigenGoldenTol, std::move(measured));
  if (c.status == CheckStatus::kFail) {
    c.witness = Json{{"space", space_to_json(space)}, {"replay", {"spectrum"}}};
  }
  return c;
}

void run_spectral_sanity(const SuiteConfig& config, CheckReport& report) {
  std::vector<Space> spaces = {two_point(1.0), cycle(4), cycle(8), path(5),
                               torus(3, 4), hypercube(3)};
  const int seeds = count_seeds(config, 10);
  for (int i = 0; i < seeds; ++i) {
    const uint64_t seed = config.base_seed + static_cast<uint64_t>(i);
    spaces.push_back(random_space(5 + static_cast<int>(seed % 8), seed, true));
  }
  for (const Space& space : spaces) {
    report.checks.push_back(
        spectrum_invariants(space, "spectral_sanity/" + space.name() + "/spectrum"));
    report.checks.push_back(
        heat_kernel_invariants(space, "spectral_sanity/" + space.name() + "/heat_kernel"));
  }
  report.checks.push_back(eigen_golden(cycle(4), {0.0, 2.0, 2.0, 4.0},
                                       "spectral_sanity/golden/cycle(4)"));
  report.checks.push_back(eigen_golden(two_point(1.0), {0.0, 2.0},
                                       "spectral_sanity/golden/two_point(1)"));

  // Davies-Gaffney on the two-point space: closed forms
  // lhs = (1 - exp(-2t)) / 4, rhs = exp(-1/(4t)) / 2.
  const Space x2 = two_point(1.0);
  const double ts[] = {0.1, 1.0};
  const CheckReport dg = davies_gaffney_check(x2, Subset::from_indices(x2, std::vector<int>{0}),
                                              Subset::from_indices(x2, std::vector<int>{1}), ts);
  for (size_t i = 0; i < dg.checks.size(); ++i) {
    Check d = dg.checks[i];
    const double t = ts[i];
    const double lhs = d.measured.at("lhs");
    const double rhs = d.measured.at("rhs");
    const double lhs_closed = 0.25 * (1.0 - std::exp(-2.0 * t));
    const double rhs_closed = 0.5 * std::exp(-1.0 / (4.0 * t));
    const bool expect_violation = t < 0.5;
    d.name = "spectral_sanity/davies_gaffney/two_point(1)/" + d.name;
    report.checks.push_back(d);
    report.checks.push_back(make_check(
        d.name + "/closed_form",
        std::abs(lhs - lhs_closed) <= 1e-5 && std::abs(rhs - rhs_closed) <= 1e-5 &&
            (lhs > rhs) == expect_violation,
        {{"lhs", lhs}, {"rhs", rhs}, {"lhs_closed", lhs_closed}, {"rhs_closed", rhs_closed}}));
  }
  // Diagnostic on a coarse cycle as well.
  const Space c8 = cycle(8);
  const double grid[] = {0.1, 0.5, 1.0, 4.0};
  CheckReport dg8 = davies_gaffney_check(c8, Subset::from_indices(c8, std::vector<int>{0}),
                                         Subset::from_indices(c8, std::vector<int>{4}), grid);
  for (Check& d : dg8.checks) {
    d.name = "spectral_sanity/davies_gaffney/cycle(8)/" + d.name;
    report.checks.push_back(std::move(d));
  }
}

// ---------------------------------------------------------------------------
// cgy_family

std::vector<Subset> antipodal(const Space& space) {
  const int n = space.size();
  return {Subset::from_indices(space, std::vector<int>{0}),
          Subset::from_indices(space, std::vector<int>{n / 2})};
}

void run_cgy_family(const SuiteConfig& config, CheckReport& report) {
  constexpr double kBandLow = 0.1;
  constexpr double kBandHigh = 16.0;
  for (int n : config.cycle_sizes) {
    const Space space = cycle(n);
    const double c = cgy_constant(space, antipodal(space));
    const Space big = scaled(space, 3.0);
    const double c_scaled = cgy_constant(big, antipodal(big));
    const std::string base = "cgy_family/cycle(" + std::to_string(n) + ")";
    Check band = make_check(base + "/band", c >= kBandLow && c <= kBandHigh,
                            {{"c_emp", c}, {"low", kBandLow}, {"high", kBandHigh}});
    if (band.status == CheckStatus::kFail) {
      band.witness = Json{{"space", space_to_json(space)},
                          {"replay", {"cgy --sets 0/" + std::to_string(n / 2)}}};
    }
    report.checks.push_back(std::move(band));
    report.checks.push_back(make_check(base + "/scale_invariance",
                                       std::abs(c - c_scaled) <= 1e-9 * std::max(1.0, c),
                                       {{"c_emp", c}, {"c_emp_scaled", c_scaled}, {"scale", 3.0}}));
    const Spectrum spec = spectrum(space);
    if (n >= 4) {
      report.checks.push_back(diagnostic(
          base + "/thm1_k2", {{"c_emp", thm1_constant(space, spec, antipodal(space), 2)}}));
    }
    const int kmax = std::min(6, n - 2);
    const auto ratios = eigen_ratio_probe(spec, kmax);
    std::map<std::string, double> measured;
    for (size_t i = 0; i < ratios.size(); ++i) {
      measured["ratio" + std::to_string(i + 2) + "_" + std::to_string(i + 1)] = ratios[i];
    }
    report.checks.push_back(diagnostic(base + "/eigen_ratios", std::move(measured)));
  }
  // C4 against its closed form 2 * 2^2 / (log 16)^2.
  const Space c4 = cycle(4);
  const double c4_value = cgy_constant(c4, antipodal(c4));
  const double c4_closed = 8.0 / std::pow(std::log(16.0), 2);
  report.checks.push_back(make_check("cgy_family/cycle(4)/closed_form",
                                     std::abs(c4_value - c4_closed) <= 1e-4,
                                     {{"c_emp", c4_value}, {"closed_form", c4_closed}}));
  // Separation-reduction probe on cycle(12).
  const Space c12 = cycle(12);
  const double grid[] = {1.0 / 12.0, 2.0 / 12.0};
  const ProbeResult probe = sep_reduction_probe(c12, 2, grid);
  report.checks.push_back(diagnostic("cgy_family/cycle(12)/sep_reduction_probe",
                                     {{"D_emp", probe.d_emp}, {"c_emp", probe.c_emp}}));
}

// ---------------------------------------------------------------------------
// cd_diagnostic

Subset arc(const Space& space, int start, int length) {
  std::vector<int> members;
  for (int i = 0; i < length; ++i) members.push_back((start + i) % space.size());
  return Subset::from_indices(space, members);
}

void run_cd_diagnostic(const SuiteConfig& config, CheckReport& report) {
  const double t_grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int n : config.cycle_sizes) {
    const Space space = cycle(n);
    const int len = std::max(1, n / 4);
    const Measure nu0 = restrict_normalize(space, arc(space, 0, len));
    const Measure nu1 = restrict_normalize(space, arc(space, n / 2, len));
    CheckReport sub = cd_convexity_check(space, nu0, nu1, 0.0, t_grid);
    for (Check& c : sub.checks) {
      c.name = "cd_diagnostic/cycle(" + std::to_string(n) + ")/" + c.name;
      report.checks.push_back(std::move(c));
    }
  }

  // Entropy is nonnegative and vanishes exactly at the reference measure.
  const int seeds = count_seeds(config, 20);
  double min_entropy = std::numeric_limits<double>::infinity();
  double max_at_reference = 0.0;
  double worst_pinsker = std::numeric_limits<double>::infinity();
  for (int i = 0; i < seeds; ++i) {
    const uint64_t seed = config.base_seed + static_cast<uint64_t>(i);
    const Space space = random_space(3 + static_cast<int>(seed % 8), seed, true);
    Rng rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
    max_at_reference = std::max(
        max_at_reference, std::abs(relative_entropy(space, Measure::reference(space))));
    for (int j = 0; j < 5; ++j) {
      const Measure nu = random_measure(rng, space.size());
      const double ent = relative_entropy(space, nu);
      double tv = 0.0;
      for (int x = 0; x < space.size(); ++x) tv += std::abs(nu[x] - space.mu(x));
      tv *= 0.5;
      min_entropy = std::min(min_entropy, ent);
      // Pinsker: Ent >= 2 TV^2, so a measure away from mu has positive entropy.
      if (tv > 1e-6) worst_pinsker = std::min(worst_pinsker, ent - 2.0 * tv * tv);
    }
  }
  report.checks.push_back(make_check(
      "cd_diagnostic/entropy/nonnegative",
      min_entropy >= -kEntropyTol && max_at_reference <= kEntropyTol &&
          worst_pinsker >= -kEntropyTol,
      {{"min_entropy", min_entropy}, {"max_entropy_at_reference", max_at_reference},
       {"min_pinsker_margin", worst_pinsker}}));
  const Space x2 = two_point(1.0);
  const double ent = relative_entropy(x2, Measure::delta(x2, 0));
  report.checks.push_back(make_check("cd_diagnostic/entropy/two_point_delta",
                                     std::abs(ent - std::log(2.0)) <= 1e-12,
                                     {{"entropy", ent}, {"expected", std::log(2.0)}}));
}

using SuiteFn = std::function<void(const SuiteConfig&, CheckReport&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"strassen", run_strassen},
      {"separation_lemmas", run_separation_lemmas},
      {"conc_sep", run_conc_sep},
      {"spectral_sanity", run_spectral_sanity},
      {"cgy_family", run_cgy_family},
      {"cd_diagnostic", run_cd_diagnostic},
  };
  return suites;
}

}  // namespace

bool ProbeResult::applicable() const { return std::isfinite(d_emp); }

ProbeResult sep_reduction_probe(const Space& space, int k,
                                std::span<const double> kappa_grid,
                                const SeparationOptions& options) {
  if (k < 2 || k + 1 > kMaxExactClasses) {
    throw Error(ErrorCode::kBadParameter,
                "probe needs 2 <= k <= " + std::to_string(kMaxExactClasses - 1));
  }
  if (kappa_grid.empty()) throw Error(ErrorCode::kBadGrid, "empty kappa grid");
  for (double kappa : kappa_grid) {
    if (!(kappa > 0.0 && kappa < 0.5)) {
      throw Error(ErrorCode::kBadGrid, "grid kappas must lie in (0, 1/2)");
    }
  }
  ProbeResult out;
  out.k = k;
  out.kappa_grid.assign(kappa_grid.begin(), kappa_grid.end());
  out.d_emp = std::numeric_limits<double>::infinity();
  for (double kappa : kappa_grid) {
    const std::vector<double> few(k, kappa);
    const std::vector<double> many(k + 1, kappa);
    out.sep_k.push_back(separation_distance(space, few, options).value);
    out.sep_k_plus.push_back(separation_distance(space, many, options).value);
    if (out.sep_k_plus.back() > 0.0) {
      out.d_emp = std::min(out.d_emp, std::log(1.0 / kappa) / out.sep_k_plus.back());
    }
  }
  if (!out.applicable()) {
    out.c_emp = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.c_emp = 0.0;
  for (size_t i = 0; i < kappa_grid.size(); ++i) {
    out.c_emp = std::max(out.c_emp,
                         out.sep_k[i] * out.d_emp / std::log(1.0 / kappa_grid[i]));
  }
  return out;
}

Json probe_to_json(const ProbeResult& probe) {
  return Json{{"k", probe.k},
              {"kappa_grid", probe.kappa_grid},
              {"sep_k", probe.sep_k},
              {"sep_k_plus_1", probe.sep_k_plus},
              {"D_emp", probe.applicable() ? Json(probe.d_emp) : Json(nullptr)},
              {"c_emp", probe.applicable() ? Json(probe.c_emp) : Json(nullptr)},
              {"applicable", probe.applicable()}};
}

std::vector<double> default_kappa_grid(const Space& space) {
  std::vector<double> out;
  for (double g : measure_grid(space)) {
    if (g > 0.0 && g < 0.5 - kMeasureTol) out.push_back(g);
  }
  return out;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  names.push_back("all");
  return names;
}

CheckReport verify_suite(std::string_view name, const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  report.suite = std::string(name);
  report.seed = config.base_seed;
  bool found = false;
  for (const auto& [suite, fn] : registry()) {
    if (name == "all" || name == suite) {
      fn(config, report);
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::kUnknownSuite, "unknown suite: " + std::string(name));
  report.sort_checks();
  report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace mmspace
