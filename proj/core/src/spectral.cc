#include "mmspace/spectral.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mmspace/error.h"

namespace mmspace {
namespace {

void check_sets(const Space& space, std::span<const Subset> sets) {
  if (sets.size() < 2) throw Error(ErrorCode::kDegenerateSets, "need at least two sets");
  for (size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].universe_size() != space.size() || sets[i].is_empty()) {
      throw Error(ErrorCode::kDegenerateSets,
                  "set " + std::to_string(i) + " is empty or from another space");
    }
    for (size_t j = i + 1; j < sets.size(); ++j) {
      for (int x : sets[i].indices()) {
        if (sets[j].contains(x)) {
          throw Error(ErrorCode::kDegenerateSets,
                      "sets " + std::to_string(i) + " and " + std::to_string(j) +
                          " overlap");
        }
      }
    }
  }
}

// lambda * min d^2 / (max log)^2 for the given eigenvalue.
double base_ratio(const Space& space, double eigenvalue, std::span<const Subset> sets) {
  check_sets(space, sets);
  double min_d = std::numeric_limits<double>::infinity();
  double max_log = 0.0;
  for (size_t i = 0; i < sets.size(); ++i) {
    for (size_t j = i + 1; j < sets.size(); ++j) {
      min_d = std::min(min_d, set_distance(space, sets[i], sets[j]));
      max_log = std::max(max_log,
                         std::log(1.0 / (sets[i].measure() * sets[j].measure())));
    }
  }
  if (!(max_log > 0.0)) {
    throw Error(ErrorCode::kDegenerateSets, "log 1/(mu(A_i) mu(A_j)) vanishes");
  }
  return eigenvalue * min_d * min_d / (max_log * max_log);
}

}  // namespace

double edge_conductance(const Space& space, const Edge& edge) {
  if (edge.conductance) return *edge.conductance;
  return 1.0 / (static_cast<double>(space.size()) * edge.length * edge.length);
}

Eigen::MatrixXd laplacian(const Space& space) {
  if (!space.has_graph()) throw Error(ErrorCode::kNoGraphData, "space has no graph data");
  const int n = space.size();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : space.edges()) {
    const double w = edge_conductance(space, e);
    lap(e.u, e.u) += w / space.mu(e.u);
    lap(e.u, e.v) -= w / space.mu(e.u);
    lap(e.v, e.v) += w / space.mu(e.v);
    lap(e.v, e.u) -= w / space.mu(e.v);
  }
  return lap;
}

Spectrum spectrum(const Space& space) {
  if (!space.has_graph()) throw Error(ErrorCode::kNoGraphData, "space has no graph data");
  const int n = space.size();
  // S = M^{1/2} L M^{-1/2} = M^{-1/2} (D - W) M^{-1/2} is symmetric; its
  // eigenvectors g give eigenfunctions phi = M^{-1/2} g.
  Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : space.edges()) {
    const double w = edge_conductance(space, e);
    const double su = std::sqrt(space.mu(e.u));
    const double sv = std::sqrt(space.mu(e.v));
    sym(e.u, e.u) += w / space.mu(e.u);
    sym(e.v, e.v) += w / space.mu(e.v);
    sym(e.u, e.v) -= w / (su * sv);
    sym(e.v, e.u) -= w / (su * sv);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kSolverFailure, "eigensolver failed");
  }
  Spectrum out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenfunctions = solver.eigenvectors();
  for (int x = 0; x < n; ++x) {
    out.eigenfunctions.row(x) /= std::sqrt(space.mu(x));
  }
  for (int j = 0; j < n; ++j) {
    for (int x = 0; x < n; ++x) {
      const double v = out.eigenfunctions(x, j);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) out.eigenfunctions.col(j) *= -1.0;
        break;
      }
    }
  }
  return out;
}

Json spectrum_to_json(const Spectrum& spectrum, int count) {
  const int n = static_cast<int>(spectrum.eigenvalues.size());
  const int limit = count < 0 ? n : std::min(count, n);
  Json values = Json::array();
  for (int i = 0; i < limit; ++i) values.push_back(spectrum.eigenvalues(i));
  return Json{{"eigenvalues", std::move(values)},
              {"conductance_convention", kConductanceConvention}};
}

HeatKernel heat_kernel(const Spectrum& spectrum, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::kBadTime, "t must be > 0");
  const Eigen::VectorXd decay = (-t * spectrum.eigenvalues.array()).exp();
  HeatKernel out;
  out.t = t;
  out.values = spectrum.eigenfunctions * decay.asDiagonal() *
               spectrum.eigenfunctions.transpose();
  return out;
}

HeatKernel heat_kernel(const Space& space, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::kBadTime, "t must be > 0");
  return heat_kernel(spectrum(space), t);
}

CheckReport davies_gaffney_check(const Space& space, const Subset& a,
                                 const Subset& b, std::span<const double> t_grid) {
  if (a.is_empty() || b.is_empty()) {
    throw Error(ErrorCode::kEmptySubset, "Davies-Gaffney needs nonempty sets");
  }
  for (int x : a.indices()) {
    if (b.contains(x)) {
      throw Error(ErrorCode::kPreconditionViolated, "sets must be disjoint");
    }
  }
  const Spectrum spec = spectrum(space);
  const double d = set_distance(space, a, b);
  const auto ai = a.indices();
  const auto bi = b.indices();
  CheckReport report;
  report.suite = "davies_gaffney";
  for (double t : t_grid) {
    const HeatKernel p = heat_kernel(spec, t);
    double lhs = 0.0;
    for (int x : ai) {
      for (int y : bi) lhs += p.values(x, y) * space.mu(x) * space.mu(y);
    }
    const double rhs = std::sqrt(a.measure() * b.measure()) * std::exp(-d * d / (4.0 * t));
    Check check;
    char name[32];
    std::snprintf(name, sizeof(name), "t=%.6g", t);
    check.name = name;
    check.status = CheckStatus::kDiagnostic;
    check.measured = {{"t", t},
                      {"lhs", lhs},
                      {"rhs", rhs},
                      {"margin", rhs - lhs},
                      {"violated", lhs > rhs ? 1.0 : 0.0}};
    report.checks.push_back(std::move(check));
  }
  return report;
}

double cgy_constant(const Space& space, const Spectrum& spec,
                    std::span<const Subset> sets) {
  const int k = static_cast<int>(sets.size()) - 1;
  if (k < 1 || k >= spec.eigenvalues.size()) {
    throw Error(ErrorCode::kDegenerateSets, "need between 2 and n sets");
  }
  return base_ratio(space, spec.eigenvalues(k), sets);
}

double cgy_constant(const Space& space, std::span<const Subset> sets) {
  return cgy_constant(space, spectrum(space), sets);
}

double thm1_constant(const Space& space, const Spectrum& spec,
                     std::span<const Subset> sets, int k) {
  const int l = static_cast<int>(sets.size()) - 1;
  if (l > k) throw Error(ErrorCode::kBadOrder, "need l <= k");
  if (k >= spec.eigenvalues.size()) {
    throw Error(ErrorCode::kBadParameter, "eigenvalue index out of range");
  }
  const double ratio = base_ratio(space, spec.eigenvalues(k), sets);
  const int exponent = k - l + 1;
  return exponent == 1 ? ratio : std::pow(ratio, 1.0 / exponent);
}

double thm1_constant(const Space& space, std::span<const Subset> sets, int k) {
  const int l = static_cast<int>(sets.size()) - 1;
  if (l > k) throw Error(ErrorCode::kBadOrder, "need l <= k");
  return thm1_constant(space, spectrum(space), sets, k);
}

std::vector<double> eigen_ratio_probe(const Spectrum& spec, int kmax) {
  const int n = static_cast<int>(spec.eigenvalues.size());
  if (kmax < 1 || kmax + 1 > n - 1) {
    throw Error(ErrorCode::kBadParameter, "need 1 <= kmax <= n - 2");
  }
  if (!(spec.eigenvalues(1) > 1e-9)) {
    throw Error(ErrorCode::kZeroGap, "lambda_1 vanishes: graph is disconnected");
  }
  std::vector<double> ratios;
  for (int k = 1; k <= kmax; ++k) {
    ratios.push_back(spec.eigenvalues(k + 1) / spec.eigenvalues(k));
  }
  return ratios;
}

std::vector<double> eigen_ratio_probe(const Space& space, int kmax) {
  return eigen_ratio_probe(spectrum(space), kmax);
}

}  // namespace mmspace
