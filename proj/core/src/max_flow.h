#pragma once

#include <vector>

namespace mmspace::detail {

// Dinic's algorithm on real capacities. Residual capacities at or below
// `eps` are treated as saturated.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes, double eps = 1e-14);

  // Returns an edge id usable with flow().
  int add_edge(int from, int to, double capacity);
  double run(int source, int sink);
  double flow(int edge) const;

 private:
  struct Arc {
    int to;
    int rev;
    double cap;
    double original;
  };

  bool bfs(int source, int sink);
  double dfs(int u, int sink, double pushed);

  double eps_;
  std::vector<std::vector<Arc>> graph_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> level_;
  std::vector<size_t> next_;
};

}  // namespace mmspace::detail
