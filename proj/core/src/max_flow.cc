#include "max_flow.h"

#include <algorithm>
#include <limits>
#include <queue>

namespace mmspace::detail {

MaxFlow::MaxFlow(int nodes, double eps)
    : eps_(eps), graph_(nodes), level_(nodes), next_(nodes) {}

int MaxFlow::add_edge(int from, int to, double capacity) {
  graph_[from].push_back({to, static_cast<int>(graph_[to].size()), capacity, capacity});
  graph_[to].push_back({from, static_cast<int>(graph_[from].size()) - 1, 0.0, 0.0});
  edges_.emplace_back(from, static_cast<int>(graph_[from].size()) - 1);
  return static_cast<int>(edges_.size()) - 1;
}

bool MaxFlow::bfs(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Arc& a : graph_[u]) {
      if (a.cap > eps_ && level_[a.to] < 0) {
        level_[a.to] = level_[u] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

double MaxFlow::dfs(int u, int sink, double pushed) {
  if (u == sink) return pushed;
  for (size_t& i = next_[u]; i < graph_[u].size(); ++i) {
    Arc& a = graph_[u][i];
    if (a.cap <= eps_ || level_[a.to] != level_[u] + 1) continue;
    const double got = dfs(a.to, sink, std::min(pushed, a.cap));
    if (got > 0.0) {
      a.cap -= got;
      graph_[a.to][a.rev].cap += got;
      return got;
    }
  }
  return 0.0;
}

double MaxFlow::run(int source, int sink) {
  double total = 0.0;
  while (bfs(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (true) {
      const double got = dfs(source, sink, std::numeric_limits<double>::infinity());
      if (got <= 0.0) break;
      total += got;
    }
  }
  return total;
}

double MaxFlow::flow(int edge) const {
  const auto [from, idx] = edges_[edge];
  const Arc& a = graph_[from][idx];
  return std::max(0.0, a.original - a.cap);
}

}  // namespace mmspace::detail
