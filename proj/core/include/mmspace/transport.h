#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmspace/json_io.h"
#include "mmspace/report.h"
#include "mmspace/space.h"

namespace mmspace {

inline constexpr double kMeasureNormTol = 1e-12;
inline constexpr double kPlanTol = 1e-10;

// A probability vector over the points of a space.
class Measure {
 public:
  // Throws BadParameter unless the weights are finite, nonnegative and sum
  // to 1 within kMeasureNormTol.
  static Measure from_weights(std::vector<double> weights);
  static Measure reference(const Space& space);
  static Measure delta(const Space& space, int point);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  std::vector<int> support() const;

  bool operator==(const Measure&) const = default;

 private:
  explicit Measure(std::vector<double> weights) : weights_(std::move(weights)) {}
  std::vector<double> weights_;
};

// mu restricted to A and renormalized. Throws NullSet if mu(A) = 0.
Measure restrict_normalize(const Space& space, const Subset& a);

enum class PlanKind { kFullCoupling, kPartial };

struct TransportPlan {
  int n = 0;
  std::vector<double> mass;  // row-major n x n, source rows, target columns
  double deficiency = 0.0;   // 1 - total mass
  double epsilon = 0.0;      // largest transported distance (partial: bound)
  PlanKind kind = PlanKind::kFullCoupling;

  double at(int i, int j) const { return mass[static_cast<size_t>(i) * n + j]; }
  double total() const;
  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
};

// {"epsilon", "deficiency", "mass": [[i, j, m], ...]} with nonzero entries.
Json plan_to_json(const TransportPlan& plan);

// Returns a description of the first violated plan invariant (marginal
// bounds, deficiency bookkeeping, support radius), or nullopt.
std::optional<std::string> plan_violation(const Space& space,
                                          const TransportPlan& plan,
                                          const Measure& source,
                                          const Measure& target);

struct W2Result {
  double value = 0.0;
  TransportPlan plan;
};

// L2-Wasserstein distance by a dense transportation simplex; the plan is an
// optimal full coupling. Throws SolverFailure if the simplex does not
// converge.
W2Result wasserstein2(const Space& space, const Measure& nu0,
                      const Measure& nu1);

// Smallest eps with mu(C_eps(A)) >= nu(A) - lambda * eps for every A, by
// exhaustive enumeration of A. Throws BadLambda unless lambda > 0 and
// TooLargeForExact above `exact_limit` points.
double prohorov(const Space& space, const Measure& mu, const Measure& nu,
                double lambda, int exact_limit = 14);

struct TransportDistance {
  double value = 0.0;
  TransportPlan plan;  // partial plan with deficiency <= lambda * value
};

// Smallest eps admitting an eps-transportation from mu to nu with
// deficiency <= lambda * eps, via a maximum flow per distance threshold.
// When several thresholds attain the minimum the plan with the smallest
// deficiency is returned.
// Throws BadLambda unless lambda > 0.
TransportDistance transportation_distance(const Space& space, const Measure& mu,
                                          const Measure& nu, double lambda);

// |tra_lambda - di_lambda|.
double strassen_gap(const Space& space, const Measure& mu, const Measure& nu,
                    double lambda, int exact_limit = 14);

// sum nu(x) log(nu(x) / mu(x)) with 0 log 0 = 0.
double relative_entropy(const Space& space, const Measure& nu);

// One representative path per ordered pair of points. On graph spaces each
// path is the lexicographically least shortest path; for metric-only
// spaces the "path" is just the two endpoints.
class PathTable {
 public:
  // Throws NoGraphData for spaces without graph data.
  static PathTable from_graph(const Space& space);
  static PathTable endpoints(const Space& space);

  int size() const { return n_; }
  const std::vector<int>& path(int from, int to) const {
    return paths_[static_cast<size_t>(from) * n_ + to];
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> paths_;
};

// Path-snapping displacement interpolation: each atom pi(x, y) moves to the
// vertex v on path(x, y) minimizing |d(x, v) - t d(x, y)|, ties to the vertex
// closer to x. t = 0 and t = 1 return the exact marginals. Requires a full
// coupling; throws MissingPathTable when 0 < t < 1 and `table` is null.
Measure interpolate(const Space& space, const TransportPlan& plan, double t,
                    const PathTable* table);

// Diagnostic evaluation, along the interpolation of an optimal coupling, of
// the entropy convexity inequality with curvature K and of its Jensen
// consequences (the support form and the two-set form with A = supp nu0,
// B = supp nu1). Every check is a diagnostic; defects at or below `tol` are
// reported as 0.
CheckReport cd_convexity_check(const Space& space, const Measure& nu0,
                               const Measure& nu1, double curvature,
                               std::span<const double> t_grid, double tol = 1e-12);

}  // namespace mmspace
