#pragma once

#include <span>
#include <vector>

namespace mmspace::detail {

struct TransportSolution {
  std::vector<double> flow;  // row-major supply x demand
  double cost = 0.0;
  int iterations = 0;
};

// Balanced dense transportation problem
//   min sum c_ij x_ij  s.t.  row sums = supply, column sums = demand, x >= 0
// solved by the transportation simplex (northwest-corner start, u-v
// potentials, Dantzig pricing with a Bland fallback against cycling).
// Throws SolverFailure if the iteration budget runs out.
TransportSolution solve_transportation(std::span<const double> supply,
                                       std::span<const double> demand,
                                       std::span<const double> cost);

}  // namespace mmspace::detail
