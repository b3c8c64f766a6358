#include "mmspace/family.h"

#include <cmath>
#include <string>
#include <vector>

#include "mmspace/error.h"
#include "mmspace/rng.h"

namespace mmspace {
namespace {

std::vector<double> uniform_weights(int n) {
  return std::vector<double>(n, 1.0 / n);
}

std::vector<std::string> index_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kBadParameter, what);
}

std::string format_number(double d) {
  std::string s = std::to_string(d);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

Space two_point(double d) {
  require(std::isfinite(d) && d > 0.0, "two_point needs d > 0");
  return build_graph_space({"a", "b"}, {Edge{0, 1, d, std::nullopt}},
                           uniform_weights(2),
                           "two_point(" + format_number(d) + ")");
}

Space cycle(int n) {
  require(n >= 3 && n <= 4096, "cycle needs 3 <= n <= 4096");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0, std::nullopt});
  return build_graph_space(index_labels(n), std::move(edges), uniform_weights(n),
                           "cycle(" + std::to_string(n) + ")");
}

Space path(int n) {
  require(n >= 2 && n <= 4096, "path needs 2 <= n <= 4096");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0, std::nullopt});
  return build_graph_space(index_labels(n), std::move(edges), uniform_weights(n),
                           "path(" + std::to_string(n) + ")");
}

Space torus(int n1, int n2) {
  require(n1 >= 3 && n2 >= 3 && n1 * n2 <= 4096,
          "torus needs sides >= 3 and at most 4096 points");
  const int n = n1 * n2;
  auto id = [n2](int i, int j) { return i * n2 + j; };
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      labels.push_back(std::to_string(i) + "_" + std::to_string(j));
      edges.push_back({id(i, j), id((i + 1) % n1, j), 1.0, std::nullopt});
      edges.push_back({id(i, j), id(i, (j + 1) % n2), 1.0, std::nullopt});
    }
  }
  return build_graph_space(std::move(labels), std::move(edges), uniform_weights(n),
                           "torus(" + std::to_string(n1) + "," +
                               std::to_string(n2) + ")");
}

Space hypercube(int dim) {
  require(dim >= 1 && dim <= 12, "hypercube needs 1 <= dim <= 12");
  const int n = 1 << dim;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (int x = 0; x < n; ++x) {
    std::string bits;
    for (int b = dim - 1; b >= 0; --b) bits.push_back(((x >> b) & 1) ? '1' : '0');
    labels.push_back(std::move(bits));
    for (int b = 0; b < dim; ++b) {
      const int y = x ^ (1 << b);
      if (x < y) edges.push_back({x, y, 1.0, std::nullopt});
    }
  }
  return build_graph_space(std::move(labels), std::move(edges), uniform_weights(n),
                           "hypercube(" + std::to_string(dim) + ")");
}

Space random_space(int n, uint64_t seed, bool random_mu) {
  require(n >= 2 && n <= 512, "random needs 2 <= n <= 512");
  Rng rng(seed);
  auto draw_length = [&rng] {
    return static_cast<double>(1 + rng.below(8)) / 4.0;
  };
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    const int j = static_cast<int>(rng.below(static_cast<uint64_t>(i)));
    edges.push_back({j, i, draw_length(), std::nullopt});
    adjacent[i][j] = adjacent[j][i] = true;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (adjacent[i][j]) continue;
      if (rng.bernoulli(0.25)) edges.push_back({i, j, draw_length(), std::nullopt});
    }
  }
  std::vector<double> mu = uniform_weights(n);
  if (random_mu) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      mu[i] = static_cast<double>(1 + rng.below(16));
      total += mu[i];
    }
    for (double& w : mu) w /= total;
  }
  return build_graph_space(index_labels(n), std::move(edges), std::move(mu),
                           "random(" + std::to_string(n) + "," +
                               std::to_string(seed) +
                               (random_mu ? ",mu" : "") + ")");
}

Space family(std::string_view kind, const FamilyParams& p) {
  if (kind == "two_point") return two_point(p.d);
  if (kind == "cycle") return cycle(p.n);
  if (kind == "path") return path(p.n);
  if (kind == "torus") return torus(p.n1, p.n2);
  if (kind == "hypercube") return hypercube(p.dim);
  if (kind == "random") return random_space(p.n, p.seed, p.random_mu);
  throw Error(ErrorCode::kBadParameter, "unknown family kind: " + std::string(kind));
}

}  // namespace mmspace
