#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mmspace/json_io.h"
#include "mmspace/report.h"
#include "mmspace/space.h"

namespace mmspace {

inline constexpr const char* kConductanceConvention = "edge=1/n";

// Conductance of an edge: explicit value if given, else 1 / (n * length^2).
double edge_conductance(const Space& space, const Edge& edge);

// (L f)(x) = (1 / mu(x)) sum_{y ~ x} w_xy (f(x) - f(y)), as a dense matrix.
// Self-adjoint and nonnegative in L2(mu). Throws NoGraphData.
Eigen::MatrixXd laplacian(const Space& space);

// Eigenpairs of the weighted Laplacian. Eigenvalues ascend; column i of
// `eigenfunctions` is the eigenfunction for eigenvalue i, normalized in
// L2(mu) and signed so its first entry of magnitude > 1e-12 is positive.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenfunctions;
};

Spectrum spectrum(const Space& space);

// {"eigenvalues": [...], "conductance_convention": "edge=1/n"}; `count`
// limits the number of eigenvalues emitted (all when negative).
Json spectrum_to_json(const Spectrum& spectrum, int count = -1);

struct HeatKernel {
  double t = 0.0;
  Eigen::MatrixXd values;  // p_t(x, y)
};

// p_t(x, y) = sum_j exp(-lambda_j t) phi_j(x) phi_j(y). Throws BadTime
// unless t > 0.
HeatKernel heat_kernel(const Spectrum& spectrum, double t);
HeatKernel heat_kernel(const Space& space, double t);

// Compares sum_{x in A, y in B} p_t(x, y) mu(x) mu(y) with
// sqrt(mu(A) mu(B)) exp(-d(A, B)^2 / 4t) for each t. Diagnostic only.
// Throws EmptySubset for empty sets and PreconditionViolated when A and B
// intersect.
CheckReport davies_gaffney_check(const Space& space, const Subset& a,
                                 const Subset& b, std::span<const double> t_grid);

// lambda_k * min_{i != j} d(A_i, A_j)^2 / (max_{i != j} log 1/(mu(A_i) mu(A_j)))^2
// with k = sets.size() - 1. Throws DegenerateSets for fewer than two sets,
// empty or overlapping sets, or a vanishing log term.
double cgy_constant(const Space& space, std::span<const Subset> sets);
double cgy_constant(const Space& space, const Spectrum& spectrum,
                    std::span<const Subset> sets);

// The same ratio at eigenvalue index k with l + 1 = sets.size() <= k + 1
// sets, raised to 1 / (k - l + 1). Throws BadOrder when l > k.
double thm1_constant(const Space& space, std::span<const Subset> sets, int k);
double thm1_constant(const Space& space, const Spectrum& spectrum,
                     std::span<const Subset> sets, int k);

// [lambda_2 / lambda_1, ..., lambda_{kmax+1} / lambda_kmax]. Throws ZeroGap
// when lambda_1 vanishes and BadParameter unless 1 <= kmax <= n - 2.
std::vector<double> eigen_ratio_probe(const Space& space, int kmax);
std::vector<double> eigen_ratio_probe(const Spectrum& spectrum, int kmax);

}  // namespace mmspace
