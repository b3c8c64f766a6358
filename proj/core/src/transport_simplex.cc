#include "transport_simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mmspace/error.h"

namespace mmspace::detail {
namespace {

constexpr int kNone = -1;

struct Basis {
  int m = 0;
  int n = 0;
  std::vector<int> row;    // per basic cell
  std::vector<int> col;
  std::vector<double> x;
  std::vector<int> cell_of;  // m * n -> basic index or kNone

  int add(int i, int j, double value) {
    row.push_back(i);
    col.push_back(j);
    x.push_back(value);
    const int id = static_cast<int>(row.size()) - 1;
    cell_of[static_cast<size_t>(i) * n + j] = id;
    return id;
  }
};

Basis northwest_corner(std::span<const double> supply,
                       std::span<const double> demand) {
  Basis basis;
  basis.m = static_cast<int>(supply.size());
  basis.n = static_cast<int>(demand.size());
  basis.cell_of.assign(static_cast<size_t>(basis.m) * basis.n, kNone);
  std::vector<double> a(supply.begin(), supply.end());
  std::vector<double> b(demand.begin(), demand.end());
  int i = 0;
  int j = 0;
  while (true) {
    const double q = std::min(a[i], b[j]);
    basis.add(i, j, std::max(q, 0.0));
    a[i] -= q;
    b[j] -= q;
    if (i == basis.m - 1 && j == basis.n - 1) break;
    if (i == basis.m - 1) {
      ++j;
    } else if (j == basis.n - 1) {
      ++i;
    } else if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return basis;
}

}  // namespace

TransportSolution solve_transportation(std::span<const double> supply,
                                       std::span<const double> demand,
                                       std::span<const double> cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  if (m == 0 || n == 0 || cost.size() != static_cast<size_t>(m) * n) {
    throw Error(ErrorCode::kSolverFailure, "transportation problem has bad shape");
  }
  Basis basis = northwest_corner(supply, demand);
  const int nodes = m + n;

  double cost_scale = 1.0;
  for (double c : cost) cost_scale = std::max(cost_scale, std::abs(c));
  const double rc_tol = 1e-12 * cost_scale;

  std::vector<double> potential(nodes);
  std::vector<bool> seen(nodes);
  std::vector<std::vector<int>> incident(nodes);  // basic cells per node
  std::vector<int> parent_cell(nodes);
  std::vector<int> queue;
  queue.reserve(nodes);

  const long budget = 50L * nodes * nodes + 1000;
  const long bland_after = budget / 2;
  TransportSolution solution;

  for (long iter = 0;; ++iter) {
    if (iter >= budget) {
      throw Error(ErrorCode::kSolverFailure, "transportation simplex did not converge");
    }
    for (auto& list : incident) list.clear();
    for (int id = 0; id < static_cast<int>(basis.row.size()); ++id) {
      incident[basis.row[id]].push_back(id);
      incident[m + basis.col[id]].push_back(id);
    }

    // Potentials u (rows) and v (columns) with u_i + v_j = c_ij on the tree.
    std::fill(seen.begin(), seen.end(), false);
    queue.clear();
    potential[0] = 0.0;
    seen[0] = true;
    queue.push_back(0);
    for (size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      for (int id : incident[u]) {
        const int i = basis.row[id];
        const int j = basis.col[id];
        const int other = u < m ? m + j : i;
        if (seen[other]) continue;
        const double c = cost[static_cast<size_t>(i) * n + j];
        potential[other] = c - potential[u];
        seen[other] = true;
        queue.push_back(other);
      }
    }
    if (static_cast<int>(queue.size()) != nodes) {
      throw Error(ErrorCode::kSolverFailure, "transportation basis is not a spanning tree");
    }

    // Pricing.
    const bool bland = iter >= bland_after;
    int enter_i = kNone;
    int enter_j = kNone;
    double best_rc = -rc_tol;
    for (int i = 0; i < m && !(bland && enter_i != kNone); ++i) {
      for (int j = 0; j < n; ++j) {
        if (basis.cell_of[static_cast<size_t>(i) * n + j] != kNone) continue;
        const double rc =
            cost[static_cast<size_t>(i) * n + j] - potential[i] - potential[m + j];
        if (rc < best_rc) {
          best_rc = rc;
          enter_i = i;
          enter_j = j;
          if (bland) break;
        }
      }
    }
    if (enter_i == kNone) {
      solution.iterations = static_cast<int>(iter);
      break;
    }

    // Tree path from row node enter_i to column node m + enter_j.
    std::fill(seen.begin(), seen.end(), false);
    std::fill(parent_cell.begin(), parent_cell.end(), kNone);
    queue.clear();
    seen[enter_i] = true;
    queue.push_back(enter_i);
    const int target = m + enter_j;
    for (size_t head = 0; head < queue.size() && !seen[target]; ++head) {
      const int u = queue[head];
      for (int id : incident[u]) {
        const int other = u < m ? m + basis.col[id] : basis.row[id];
        if (seen[other]) continue;
        seen[other] = true;
        parent_cell[other] = id;
        queue.push_back(other);
      }
    }
    // Walking back from the column node, cells alternate -, +, -, ...
    std::vector<int> cycle;
    for (int node = target; node != enter_i;) {
      const int id = parent_cell[node];
      cycle.push_back(id);
      node = node < m ? m + basis.col[id] : basis.row[id];
    }
    double theta = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < cycle.size(); k += 2) theta = std::min(theta, basis.x[cycle[k]]);
    int leave = kNone;
    size_t leave_key = std::numeric_limits<size_t>::max();
    for (size_t k = 0; k < cycle.size(); k += 2) {
      const int id = cycle[k];
      if (basis.x[id] != theta) continue;
      const size_t key = static_cast<size_t>(basis.row[id]) * n + basis.col[id];
      if (key < leave_key) {
        leave_key = key;
        leave = id;
      }
    }
    for (size_t k = 0; k < cycle.size(); ++k) {
      double& x = basis.x[cycle[k]];
      x += (k % 2 == 0) ? -theta : theta;
      if (x < 0.0) x = 0.0;
    }
    // Replace the leaving cell by the entering one in place.
    basis.cell_of[leave_key] = kNone;
    basis.row[leave] = enter_i;
    basis.col[leave] = enter_j;
    basis.x[leave] = theta;
    basis.cell_of[static_cast<size_t>(enter_i) * n + enter_j] = leave;
  }

  solution.flow.assign(static_cast<size_t>(m) * n, 0.0);
  for (size_t id = 0; id < basis.row.size(); ++id) {
    const size_t key = static_cast<size_t>(basis.row[id]) * n + basis.col[id];
    solution.flow[key] = basis.x[id];
    solution.cost += basis.x[id] * cost[key];
  }
  return solution;
}

}  // namespace mmspace::detail
