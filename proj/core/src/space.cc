#include "mmspace/space.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmspace/error.h"

namespace mmspace {
namespace {

std::string pair_str(int i, int j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

void check_probability(std::span<const double> mu) {
  double total = 0.0;
  for (size_t i = 0; i < mu.size(); ++i) {
    if (!std::isfinite(mu[i]) || mu[i] <= 0.0) {
      throw Error(ErrorCode::kNotProbability,
                  "weight of point " + std::to_string(i) +
                      " must be strictly positive",
                  {static_cast<int>(i)});
    }
    total += mu[i];
  }
  if (std::abs(total - 1.0) > kProbabilityTol) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << total << ", expected 1";
    throw Error(ErrorCode::kNotProbability, os.str());
  }
}

std::vector<std::vector<double>> shortest_paths(int n,
                                                const std::vector<Edge>& edges) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const Edge& e : edges) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.length);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.length);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (d[i][k] == kInf) continue;
      for (int j = 0; j < n; ++j) {
        const double via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  }
  return d;
}

}  // namespace

double Space::diameter() const {
  double best = 0.0;
  for (double d : dist_) best = std::max(best, d);
  return best;
}

Space build_space(std::vector<std::string> labels,
                  std::vector<std::vector<double>> dist,
                  std::vector<double> mu, std::string name) {
  const int n = static_cast<int>(mu.size());
  if (n == 0) throw Error(ErrorCode::kBadParameter, "space has no points");
  if (static_cast<int>(labels.size()) != n ||
      static_cast<int>(dist.size()) != n) {
    throw Error(ErrorCode::kBadParameter,
                "labels, dist and mu must have the same length");
  }
  for (const auto& row : dist) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::kBadParameter, "dist must be square");
    }
    for (double d : row) {
      if (!std::isfinite(d)) {
        throw Error(ErrorCode::kBadParameter, "dist entries must be finite");
      }
    }
  }

  Space space;
  space.n_ = n;
  space.name_ = std::move(name);
  space.labels_ = std::move(labels);
  space.dist_.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (std::abs(dist[i][i]) > kMetricTol) {
      throw Error(ErrorCode::kDegenerateDistance,
                  "nonzero diagonal at point " + std::to_string(i), {i});
    }
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(dist[i][j] - dist[j][i]) > kMetricTol) {
        throw Error(ErrorCode::kAsymmetricDistance,
                    "d" + pair_str(i, j) + " != d" + pair_str(j, i), {i, j});
      }
      const double d = 0.5 * (dist[i][j] + dist[j][i]);
      if (d <= 0.0) {
        throw Error(ErrorCode::kDegenerateDistance,
                    "distinct points at distance <= 0: " + pair_str(i, j),
                    {i, j});
      }
      space.dist_[space.index(i, j)] = d;
      space.dist_[space.index(j, i)] = d;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        if (space.dist(i, k) > space.dist(i, j) + space.dist(j, k) + kMetricTol) {
          throw Error(ErrorCode::kTriangleViolation,
                      "d(" + std::to_string(i) + "," + std::to_string(k) +
                          ") exceeds the path through " + std::to_string(j),
                      {i, j, k});
        }
      }
    }
  }
  check_probability(mu);
  space.mu_ = std::move(mu);
  return space;
}

Space build_graph_space(std::vector<std::string> labels,
                        std::vector<Edge> edges, std::vector<double> mu,
                        std::string name) {
  const int n = static_cast<int>(mu.size());
  if (n == 0) throw Error(ErrorCode::kBadParameter, "space has no points");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v) {
      throw Error(ErrorCode::kBadParameter,
                  "edge endpoints out of range or a loop: " +
                      pair_str(e.u, e.v));
    }
    if (!std::isfinite(e.length) || e.length <= 0.0) {
      throw Error(ErrorCode::kNonpositiveEdgeLength,
                  "edge " + pair_str(e.u, e.v) + " has nonpositive length",
                  {e.u, e.v});
    }
    if (e.conductance && (!std::isfinite(*e.conductance) || *e.conductance <= 0.0)) {
      throw Error(ErrorCode::kBadParameter,
                  "edge " + pair_str(e.u, e.v) + " has nonpositive conductance",
                  {e.u, e.v});
    }
  }
  auto dist = shortest_paths(n, edges);
  for (int j = 1; j < n; ++j) {
    if (!std::isfinite(dist[0][j])) {
      throw Error(ErrorCode::kDisconnectedGraph,
                  "point " + std::to_string(j) + " unreachable from point 0",
                  {0, j});
    }
  }
  Space space = build_space(std::move(labels), std::move(dist), std::move(mu),
                            std::move(name));
  space.has_graph_ = true;
  space.edges_ = std::move(edges);
  return space;
}

Space scaled(const Space& space, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::kBadParameter, "scale factor must be positive");
  }
  Space out = space;
  for (double& d : out.dist_) d *= s;
  for (Edge& e : out.edges_) {
    e.length *= s;
    if (e.conductance) *e.conductance /= s * s;
  }
  return out;
}

Space with_name(const Space& space, std::string name) {
  Space out = space;
  out.name_ = std::move(name);
  return out;
}

bool satisfies_invariants(const Space& space) {
  const int n = space.size();
  if (n == 0 || static_cast<int>(space.labels().size()) != n) return false;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(space.mu(i) > 0.0)) return false;
    total += space.mu(i);
    if (space.dist(i, i) != 0.0) return false;
    for (int j = 0; j < n; ++j) {
      if (space.dist(i, j) != space.dist(j, i)) return false;
      if (i != j && !(space.dist(i, j) > 0.0)) return false;
      for (int k = 0; k < n; ++k) {
        if (space.dist(i, k) > space.dist(i, j) + space.dist(j, k) + kMetricTol) {
          return false;
        }
      }
    }
  }
  if (std::abs(total - 1.0) > kProbabilityTol) return false;
  if (space.has_graph()) {
    const auto sp = shortest_paths(n, space.edges());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (std::abs(sp[i][j] - space.dist(i, j)) > kMetricTol) return false;
      }
    }
  }
  return true;
}

std::vector<double> distinct_distances(const Space& space) {
  std::vector<double> out;
  const int n = space.size();
  out.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.push_back(space.dist(i, j));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Subset::Subset(const Space& space, std::vector<bool> members)
    : members_(std::move(members)) {
  for (int i = 0; i < space.size(); ++i) {
    if (members_[i]) {
      ++count_;
      measure_ += space.mu(i);
    }
  }
}

Subset Subset::empty(const Space& space) {
  return Subset(space, std::vector<bool>(space.size(), false));
}

Subset Subset::all(const Space& space) {
  return Subset(space, std::vector<bool>(space.size(), true));
}

Subset Subset::from_indices(const Space& space, std::span<const int> indices) {
  std::vector<bool> members(space.size(), false);
  for (int i : indices) {
    if (i < 0 || i >= space.size()) {
      throw Error(ErrorCode::kBadParameter,
                  "point index " + std::to_string(i) + " out of range");
    }
    members[i] = true;
  }
  return Subset(space, std::move(members));
}

Subset Subset::from_mask(const Space& space, uint64_t mask) {
  if (space.size() > 64) {
    throw Error(ErrorCode::kBadParameter, "bit masks need at most 64 points");
  }
  std::vector<bool> members(space.size(), false);
  for (int i = 0; i < space.size(); ++i) members[i] = (mask >> i) & 1u;
  return Subset(space, std::move(members));
}

std::vector<int> Subset::indices() const {
  std::vector<int> out;
  out.reserve(count_);
  for (int i = 0; i < universe_size(); ++i) {
    if (members_[i]) out.push_back(i);
  }
  return out;
}

uint64_t Subset::mask() const {
  uint64_t m = 0;
  for (int i = 0; i < universe_size() && i < 64; ++i) {
    if (members_[i]) m |= uint64_t{1} << i;
  }
  return m;
}

Subset neighborhood(const Space& space, const Subset& a, double r,
                    Closure closure) {
  if (a.is_empty()) throw Error(ErrorCode::kEmptySubset, "neighborhood of empty set");
  if (!(r >= 0.0)) throw Error(ErrorCode::kBadParameter, "radius must be >= 0");
  std::vector<int> members;
  const auto centers = a.indices();
  for (int x = 0; x < space.size(); ++x) {
    for (int c : centers) {
      const double d = space.dist(x, c);
      if (closure == Closure::kClosed ? d <= r : d < r) {
        members.push_back(x);
        break;
      }
    }
  }
  return Subset::from_indices(space, members);
}

double set_distance(const Space& space, const Subset& a, const Subset& b) {
  if (a.is_empty() || b.is_empty()) {
    throw Error(ErrorCode::kEmptySubset, "set distance needs nonempty sets");
  }
  double best = std::numeric_limits<double>::infinity();
  const auto bi = b.indices();
  for (int x : a.indices()) {
    for (int y : bi) best = std::min(best, space.dist(x, y));
  }
  return best;
}

}  // namespace mmspace
