#include "mmspace/transport.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "masks.h"
#include "max_flow.h"
#include "mmspace/error.h"
#include "transport_simplex.h"

namespace mmspace {

using detail::bit;
using detail::Mask;

namespace {

void require_same_size(const Space& space, const Measure& a, const Measure& b) {
  if (a.size() != space.size() || b.size() != space.size()) {
    throw Error(ErrorCode::kBadParameter, "measure size differs from point count");
  }
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kBadLambda, "lambda must be positive and finite");
  }
}

// 0 followed by the distinct positive distances.
std::vector<double> support_thresholds(const Space& space) {
  std::vector<double> t{0.0};
  const auto d = distinct_distances(space);
  t.insert(t.end(), d.begin(), d.end());
  return t;
}

}  // namespace

Measure Measure::from_weights(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorCode::kBadParameter, "empty measure");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::kBadParameter, "measure weights must be finite and >= 0");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kMeasureNormTol) {
    std::ostringstream os;
    os.precision(17);
    os << "measure weights sum to " << total;
    throw Error(ErrorCode::kBadParameter, os.str());
  }
  return Measure(std::move(weights));
}

Measure Measure::reference(const Space& space) {
  return Measure(std::vector<double>(space.weights().begin(), space.weights().end()));
}

Measure Measure::delta(const Space& space, int point) {
  if (point < 0 || point >= space.size()) {
    throw Error(ErrorCode::kBadParameter, "delta point out of range");
  }
  std::vector<double> w(space.size(), 0.0);
  w[point] = 1.0;
  return Measure(std::move(w));
}

std::vector<int> Measure::support() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (weights_[i] > 0.0) out.push_back(i);
  }
  return out;
}

Measure restrict_normalize(const Space& space, const Subset& a) {
  if (a.universe_size() != space.size()) {
    throw Error(ErrorCode::kBadParameter, "subset from another space");
  }
  if (!(a.measure() > 0.0)) throw Error(ErrorCode::kNullSet, "set has measure 0");
  if (a.count() == space.size()) return Measure::reference(space);
  std::vector<double> w(space.size(), 0.0);
  for (int x : a.indices()) w[x] = space.mu(x) / a.measure();
  return Measure::from_weights(std::move(w));
}

double TransportPlan::total() const {
  return std::accumulate(mass.begin(), mass.end(), 0.0);
}

std::vector<double> TransportPlan::row_sums() const {
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i] += at(i, j);
  }
  return out;
}

std::vector<double> TransportPlan::col_sums() const {
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[j] += at(i, j);
  }
  return out;
}

Json plan_to_json(const TransportPlan& plan) {
  Json mass = Json::array();
  for (int i = 0; i < plan.n; ++i) {
    for (int j = 0; j < plan.n; ++j) {
      if (plan.at(i, j) > 0.0) mass.push_back(Json{i, j, plan.at(i, j)});
    }
  }
  return Json{{"epsilon", plan.epsilon},
              {"deficiency", plan.deficiency},
              {"mass", std::move(mass)}};
}

std::optional<std::string> plan_violation(const Space& space,
                                          const TransportPlan& plan,
                                          const Measure& source,
                                          const Measure& target) {
  const int n = space.size();
  if (plan.n != n || static_cast<int>(plan.mass.size()) != n * n) {
    return "plan has the wrong shape";
  }
  for (double m : plan.mass) {
    if (!(m >= 0.0)) return "negative mass";
  }
  const auto rows = plan.row_sums();
  const auto cols = plan.col_sums();
  const bool full = plan.kind == PlanKind::kFullCoupling;
  for (int i = 0; i < n; ++i) {
    if (rows[i] > source[i] + kPlanTol) return "row " + std::to_string(i) + " exceeds source";
    if (cols[i] > target[i] + kPlanTol) return "column " + std::to_string(i) + " exceeds target";
    if (full && rows[i] < source[i] - kPlanTol) return "row " + std::to_string(i) + " short";
    if (full && cols[i] < target[i] - kPlanTol) return "column " + std::to_string(i) + " short";
  }
  if (std::abs(plan.deficiency - (1.0 - plan.total())) > kPlanTol) {
    return "deficiency does not match total mass";
  }
  if (plan.kind == PlanKind::kPartial) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (plan.at(i, j) > 0.0 && space.dist(i, j) > plan.epsilon + 1e-12) {
          return "mass moved farther than epsilon";
        }
      }
    }
  }
  return std::nullopt;
}

W2Result wasserstein2(const Space& space, const Measure& nu0, const Measure& nu1) {
  require_same_size(space, nu0, nu1);
  const int n = space.size();
  const std::vector<int> rows = nu0.support();
  const std::vector<int> cols = nu1.support();
  std::vector<double> supply, demand, cost;
  for (int i : rows) supply.push_back(nu0[i]);
  for (int j : cols) demand.push_back(nu1[j]);
  // Absorb rounding so the problem is exactly balanced.
  const double imbalance = std::accumulate(supply.begin(), supply.end(), 0.0) -
                           std::accumulate(demand.begin(), demand.end(), 0.0);
  demand.back() += imbalance;
  for (int i : rows) {
    for (int j : cols) cost.push_back(space.dist(i, j) * space.dist(i, j));
  }
  const auto solution = detail::solve_transportation(supply, demand, cost);

  W2Result result;
  result.plan.n = n;
  result.plan.kind = PlanKind::kFullCoupling;
  result.plan.mass.assign(static_cast<size_t>(n) * n, 0.0);
  for (size_t a = 0; a < rows.size(); ++a) {
    for (size_t b = 0; b < cols.size(); ++b) {
      const double m = solution.flow[a * cols.size() + b];
      if (m <= 0.0) continue;
      result.plan.mass[static_cast<size_t>(rows[a]) * n + cols[b]] = m;
      result.plan.epsilon = std::max(result.plan.epsilon, space.dist(rows[a], cols[b]));
    }
  }
  result.plan.deficiency = 1.0 - result.plan.total();
  result.value = std::sqrt(std::max(0.0, solution.cost));
  return result;
}

double prohorov(const Space& space, const Measure& mu, const Measure& nu,
                double lambda, int exact_limit) {
  require_same_size(space, mu, nu);
  require_lambda(lambda);
  const int n = space.size();
  if (n > exact_limit || n > 62) {
    throw Error(ErrorCode::kTooLargeForExact,
                "Prohorov distance enumerates subsets of at most " +
                    std::to_string(exact_limit) + " points");
  }
  // Only subsets of supp(nu) can bind: extra points enlarge C_eps(A) without
  // adding nu-mass.
  Mask nu_support = 0;
  for (int i : nu.support()) nu_support |= bit(i);

  double best = std::numeric_limits<double>::infinity();
  for (double d : support_thresholds(space)) {
    if (d >= best) break;
    const auto balls = detail::ball_masks(space, d, Closure::kClosed);
    // g = max_A nu(A) - mu(C_d(A)); A = empty gives 0.
    double g = 0.0;
    for (Mask a = nu_support; a; a = (a - 1) & nu_support) {
      const double gain = detail::mask_measure(nu.weights(), a) -
                          detail::mask_measure(mu.weights(),
                                               detail::neighborhood_mask(balls, a));
      g = std::max(g, gain);
    }
    best = std::min(best, std::max(d, g / lambda));
  }
  return best;
}

TransportDistance transportation_distance(const Space& space, const Measure& mu,
                                          const Measure& nu, double lambda) {
  require_same_size(space, mu, nu);
  require_lambda(lambda);
  const int n = space.size();
  const std::vector<int> src = mu.support();
  const std::vector<int> dst = nu.support();

  TransportDistance best;
  best.value = std::numeric_limits<double>::infinity();
  for (double d : support_thresholds(space)) {
    if (d > best.value) break;
    const int source = 0;
    const int sink = 1;
    detail::MaxFlow flow(2 + 2 * n);
    for (int x : src) flow.add_edge(source, 2 + x, mu[x]);
    for (int y : dst) flow.add_edge(2 + n + y, sink, nu[y]);
    struct Link {
      int x, y, id;
    };
    std::vector<Link> links;
    for (int x : src) {
      for (int y : dst) {
        if (space.dist(x, y) <= d) links.push_back({x, y, flow.add_edge(2 + x, 2 + n + y, 2.0)});
      }
    }
    flow.run(source, sink);

    TransportPlan plan;
    plan.n = n;
    plan.kind = PlanKind::kPartial;
    plan.mass.assign(static_cast<size_t>(n) * n, 0.0);
    for (const Link& l : links) {
      plan.mass[static_cast<size_t>(l.x) * n + l.y] = flow.flow(l.id);
    }
    plan.deficiency = std::max(0.0, 1.0 - plan.total());
    const double eps = std::max(d, plan.deficiency / lambda);
    // On ties keep the plan that moves more mass.
    const bool better = eps < best.value - kMeasureTol ||
                        (eps <= best.value + kMeasureTol &&
                         plan.deficiency < best.plan.deficiency - kMeasureTol);
    if (better) {
      plan.epsilon = eps;
      best.value = std::min(eps, best.value);
      best.plan = std::move(plan);
    }
  }
  return best;
}

double strassen_gap(const Space& space, const Measure& mu, const Measure& nu,
                    double lambda, int exact_limit) {
  const double di = prohorov(space, mu, nu, lambda, exact_limit);
  const double tra = transportation_distance(space, mu, nu, lambda).value;
  return std::abs(tra - di);
}

double relative_entropy(const Space& space, const Measure& nu) {
  if (nu.size() != space.size()) {
    throw Error(ErrorCode::kBadParameter, "measure size differs from point count");
  }
  double total = 0.0;
  for (int x = 0; x < space.size(); ++x) {
    if (nu[x] > 0.0) total += nu[x] * std::log(nu[x] / space.mu(x));
  }
  return total;
}

PathTable PathTable::from_graph(const Space& space) {
  if (!space.has_graph()) {
    throw Error(ErrorCode::kNoGraphData, "space has no graph data");
  }
  const int n = space.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Shortest parallel edge per neighbor; neighbor lists in index order.
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  {
    std::vector<double> len(static_cast<size_t>(n) * n, kInf);
    for (const Edge& e : space.edges()) {
      auto& a = len[static_cast<size_t>(e.u) * n + e.v];
      auto& b = len[static_cast<size_t>(e.v) * n + e.u];
      a = std::min(a, e.length);
      b = std::min(b, e.length);
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        const double l = len[static_cast<size_t>(x) * n + y];
        if (l < kInf) adj[x].emplace_back(y, l);
      }
    }
  }
  PathTable table;
  table.n_ = n;
  table.paths_.resize(static_cast<size_t>(n) * n);
  for (int from = 0; from < n; ++from) {
    for (int to = 0; to < n; ++to) {
      std::vector<int>& p = table.paths_[static_cast<size_t>(from) * n + to];
      p.push_back(from);
      int cur = from;
      while (cur != to) {
        int next = -1;
        for (const auto& [v, l] : adj[cur]) {
          if (std::abs(l + space.dist(v, to) - space.dist(cur, to)) <= kMetricTol) {
            next = v;
            break;
          }
        }
        if (next < 0) throw Error(ErrorCode::kNoGraphData, "graph does not realize dist");
        p.push_back(next);
        cur = next;
      }
    }
  }
  return table;
}

PathTable PathTable::endpoints(const Space& space) {
  const int n = space.size();
  PathTable table;
  table.n_ = n;
  table.paths_.resize(static_cast<size_t>(n) * n);
  for (int from = 0; from < n; ++from) {
    for (int to = 0; to < n; ++to) {
      auto& p = table.paths_[static_cast<size_t>(from) * n + to];
      p.push_back(from);
      if (to != from) p.push_back(to);
    }
  }
  return table;
}

Measure interpolate(const Space& space, const TransportPlan& plan, double t,
                    const PathTable* table) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kBadParameter, "interpolation time must lie in [0, 1]");
  }
  if (plan.kind != PlanKind::kFullCoupling || plan.n != space.size()) {
    throw Error(ErrorCode::kBadParameter, "interpolation needs a full coupling");
  }
  const int n = space.size();
  if (t == 0.0) return Measure::from_weights(plan.row_sums());
  if (t == 1.0) return Measure::from_weights(plan.col_sums());
  if (table == nullptr) {
    throw Error(ErrorCode::kMissingPathTable, "0 < t < 1 needs a path table");
  }
  std::vector<double> w(n, 0.0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const double m = plan.at(x, y);
      if (m <= 0.0) continue;
      const double goal = t * space.dist(x, y);
      int best = x;
      double best_err = std::numeric_limits<double>::infinity();
      for (int v : table->path(x, y)) {
        const double err = std::abs(space.dist(x, v) - goal);
        if (err < best_err) {
          best_err = err;
          best = v;
        }
      }
      w[best] += m;
    }
  }
  return Measure::from_weights(std::move(w));
}

CheckReport cd_convexity_check(const Space& space, const Measure& nu0,
                               const Measure& nu1, double curvature,
                               std::span<const double> t_grid, double tol) {
  require_same_size(space, nu0, nu1);
  const W2Result w = wasserstein2(space, nu0, nu1);
  const PathTable table =
      space.has_graph() ? PathTable::from_graph(space) : PathTable::endpoints(space);
  const double e0 = relative_entropy(space, nu0);
  const double e1 = relative_entropy(space, nu1);
  const double w2sq = w.value * w.value;

  const Subset supp0 = Subset::from_indices(space, nu0.support());
  const Subset supp1 = Subset::from_indices(space, nu1.support());
  const double w_sets = wasserstein2(space, restrict_normalize(space, supp0),
                                     restrict_normalize(space, supp1))
                            .value;
  const double log_a = std::log(supp0.measure());
  const double log_b = std::log(supp1.measure());

  auto positive = [tol](double gap) { return gap > tol ? gap : 0.0; };

  CheckReport report;
  report.suite = "cd_convexity";
  double max_cd = 0.0, max_jensen = 0.0, max_sets = 0.0;
  for (double t : t_grid) {
    const Measure nut = interpolate(space, w.plan, t, &table);
    const double et = relative_entropy(space, nut);
    const double log_supp =
        std::log(Subset::from_indices(space, nut.support()).measure());
    const double bend = 0.5 * curvature * t * (1.0 - t);
    const double cd_gap = et - ((1.0 - t) * e0 + t * e1 - bend * w2sq);
    const double jensen_gap = (-(1.0 - t) * e0 - t * e1 + bend * w2sq) - log_supp;
    const double sets_gap =
        ((1.0 - t) * log_a + t * log_b + bend * w_sets * w_sets) - log_supp;

    Check check;
    char name[32];
    std::snprintf(name, sizeof(name), "t=%.6f", t);
    check.name = name;
    check.status = CheckStatus::kDiagnostic;
    check.measured = {{"t", t},
                      {"entropy", et},
                      {"cd_defect", positive(cd_gap)},
                      {"jensen_defect", positive(jensen_gap)},
                      {"jensen_sets_defect", positive(sets_gap)}};
    max_cd = std::max(max_cd, positive(cd_gap));
    max_jensen = std::max(max_jensen, positive(jensen_gap));
    max_sets = std::max(max_sets, positive(sets_gap));
    report.checks.push_back(std::move(check));
  }
  Check summary;
  summary.name = "summary";
  summary.status = CheckStatus::kDiagnostic;
  summary.measured = {{"w2", w.value},
                      {"entropy0", e0},
                      {"entropy1", e1},
                      {"curvature", curvature},
                      {"max_cd_defect", max_cd},
                      {"max_jensen_defect", max_jensen},
                      {"max_jensen_sets_defect", max_sets}};
  report.checks.push_back(std::move(summary));
  return report;
}

}  // namespace mmspace
