#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mmspace {

// Absolute tolerances shared by every module.
inline constexpr double kMetricTol = 1e-9;
inline constexpr double kProbabilityTol = 1e-9;
inline constexpr double kMeasureTol = 1e-12;

// An undirected edge of the graph underlying a space. Without an explicit
// conductance the spectral module uses 1/(n * length^2), which is 1/n on
// unit edges.
struct Edge {
  int u = 0;
  int v = 0;
  double length = 1.0;
  std::optional<double> conductance;

  bool operator==(const Edge&) const = default;
};

// A finite metric measure space. Immutable once built; obtain instances
// through build_space, build_graph_space or the family builders.
class Space {
 public:
  int size() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double dist(int i, int j) const { return dist_[index(i, j)]; }
  double mu(int i) const { return mu_[i]; }
  std::span<const double> weights() const { return mu_; }

  bool has_graph() const { return has_graph_; }
  const std::vector<Edge>& edges() const { return edges_; }

  double diameter() const;

  bool operator==(const Space&) const = default;

 private:
  friend Space build_space(std::vector<std::string>,
                           std::vector<std::vector<double>>,
                           std::vector<double>, std::string);
  friend Space build_graph_space(std::vector<std::string>, std::vector<Edge>,
                                 std::vector<double>, std::string);
  friend Space scaled(const Space&, double);
  friend Space with_name(const Space&, std::string);

  size_t index(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(n_) +
           static_cast<size_t>(j);
  }

  int n_ = 0;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<double> dist_;  // row-major n x n
  std::vector<double> mu_;
  bool has_graph_ = false;
  std::vector<Edge> edges_;
};

// Validates and returns a space. Throws AsymmetricDistance,
// DegenerateDistance, TriangleViolation (witness i, j, k with
// d(i,k) > d(i,j) + d(j,k)), NotProbability or BadParameter.
Space build_space(std::vector<std::string> labels,
                  std::vector<std::vector<double>> dist,
                  std::vector<double> mu, std::string name = "");

// Shortest-path metric of a connected graph with positive edge lengths.
Space build_graph_space(std::vector<std::string> labels,
                        std::vector<Edge> edges, std::vector<double> mu,
                        std::string name = "");

// Multiplies every distance (and edge length) by s > 0. Explicit
// conductances are divided by s^2 so that Laplacian eigenvalues scale by
// 1/s^2 under either conductance convention.
Space scaled(const Space& space, double s);

Space with_name(const Space& space, std::string name);

// Re-checks every Space invariant; returns false on the first violation.
bool satisfies_invariants(const Space& space);

// Sorted, de-duplicated positive pairwise distances.
std::vector<double> distinct_distances(const Space& space);

// A set of points of a given space together with its measure.
class Subset {
 public:
  Subset() = default;

  static Subset empty(const Space& space);
  static Subset all(const Space& space);
  static Subset from_indices(const Space& space, std::span<const int> indices);
  // Requires space.size() <= 64.
  static Subset from_mask(const Space& space, uint64_t mask);

  int universe_size() const { return static_cast<int>(members_.size()); }
  bool contains(int i) const { return members_[i]; }
  bool is_empty() const { return count_ == 0; }
  int count() const { return count_; }
  double measure() const { return measure_; }
  std::vector<int> indices() const;
  uint64_t mask() const;

  bool operator==(const Subset& other) const {
    return members_ == other.members_;
  }

 private:
  Subset(const Space& space, std::vector<bool> members);

  std::vector<bool> members_;
  int count_ = 0;
  double measure_ = 0.0;
};

enum class Closure { kClosed, kOpen };

// Closed: {x : d(x, A) <= r}. Open: {x : d(x, A) < r}.
Subset neighborhood(const Space& space, const Subset& a, double r,
                    Closure closure = Closure::kClosed);

// min over a in A, b in B of d(a, b).
double set_distance(const Space& space, const Subset& a, const Subset& b);

}  // namespace mmspace
