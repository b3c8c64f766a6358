#pragma once

#include <cstdint>
#include <string_view>

#include "mmspace/space.h"

namespace mmspace {

// Parameters for family(); each kind reads only the fields it needs.
struct FamilyParams {
  double d = 1.0;       // two_point: distance between the points
  int n = 0;            // cycle, path, random: point count
  int n1 = 0, n2 = 0;   // torus: side lengths
  int dim = 0;          // hypercube: dimension
  uint64_t seed = 0;    // random
  bool random_mu = false;  // random: draw weights instead of uniform
};

// Kinds: two_point, cycle, path, torus, hypercube, random. Every family is a
// graph space with uniform weights unless random_mu is set. Throws
// BadParameter for unknown kinds or out-of-range parameters.
Space family(std::string_view kind, const FamilyParams& params);

Space two_point(double d = 1.0);
Space cycle(int n);
Space path(int n);
Space torus(int n1, int n2);
Space hypercube(int dim);
// Shortest-path metric of a random connected graph: a random spanning tree
// plus each remaining pair with probability 1/4, edge lengths drawn from
// {0.25, 0.5, ..., 2}. Weights are integers in [1, 16] normalized.
Space random_space(int n, uint64_t seed, bool random_mu = false);

}  // namespace mmspace
