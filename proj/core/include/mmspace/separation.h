#pragma once

#include <span>
#include <vector>

#include "mmspace/json_io.h"
#include "mmspace/report.h"
#include "mmspace/space.h"

namespace mmspace {

// Closed interval of medians of f: the m with mu(f >= m) >= 1/2 and
// mu(f <= m) >= 1/2. Both endpoints are values of f.
struct MedianInterval {
  double lower = 0.0;
  double upper = 0.0;
  double center() const { return 0.5 * (lower + upper); }
};

MedianInterval median_interval(const Space& space, std::span<const double> f);

// Midpoint of the median interval.
double lm(const Space& space, std::span<const double> f);

enum class SepMode { kExact, kHeuristic };

inline constexpr int kDefaultExactLimit = 14;
inline constexpr int kMaxExactClasses = 5;
inline constexpr int kMaxConcentrationPoints = 20;

struct SeparationOptions {
  SepMode mode = SepMode::kExact;
  int exact_limit = kDefaultExactLimit;
};

struct SeparationCertificate {
  std::vector<double> kappas;
  std::vector<Subset> sets;
  double value = 0.0;
  bool exact = false;
};

// Largest achievable min_{i != j} d(A_i, A_j) over families with
// mu(A_i) >= kappas[i]. In exact mode this is the true maximum and `sets`
// is the lexicographically least witnessing assignment (points in index
// order, classes before "unassigned"); heuristic mode returns a valid lower
// bound. When the value is 0 every set is the whole space.
//
// Throws BadKappa (fewer than two kappas or a kappa outside (0, 1]) and
// TooLargeForExact (more than exact_limit points or kMaxExactClasses
// kappas in exact mode).
SeparationCertificate separation_distance(const Space& space,
                                          std::span<const double> kappas,
                                          const SeparationOptions& options = {});

Json certificate_to_json(const SeparationCertificate& certificate);

// mu of the union of closed r-neighborhoods of the given sets.
double neighborhood_union_measure(const Space& space,
                                  std::span<const Subset> sets, double r);

// Given k sets and k+1 kappas with mu(sets[i]) >= kappas[i] and pairwise
// distances > r := sep(kappas), checks mu(U C_r(sets[i])) >= 1 - kappas[k].
// Throws PreconditionViolated when the hypotheses do not hold.
CheckReport check_neighborhood_bound(const Space& space,
                                     std::span<const double> kappas,
                                     std::span<const Subset> sets,
                                     const SeparationOptions& options = {});

struct LevyInterval {
  double kappa = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Certified enclosure of the Levy radius at level kappa. The upper end is
// sep(kappa/2, kappa/2); the lower end is the best deviation radius over the
// 1-Lipschitz family x -> d(x, S), with S ranging over all nonempty subsets
// when the space has at most exact_limit points and over closed balls
// otherwise. Throws BadKappa unless 0 < kappa < 1.
LevyInterval levy_radius_bounds(const Space& space, double kappa,
                                int exact_limit = kDefaultExactLimit);

// Smallest-deviation radius of a single function: the largest value
// d = |f(x) - lm(f)| with mu(|f - lm(f)| >= d) > kappa, or 0 if none.
double deviation_radius(const Space& space, std::span<const double> f,
                        double kappa);

struct ConcentrationValue {
  double r = 0.0;
  double alpha = 0.0;
  Subset witness;  // the maximizing A, mu(A) >= 1/2
};

// alpha(r) = max over mu(A) >= 1/2 of mu(X \ O_r(A)), O_r open. Exhaustive;
// throws TooLargeForExact above kMaxConcentrationPoints points and
// BadParameter unless r > 0.
ConcentrationValue concentration_function(const Space& space, double r);

// Distinct pairwise distances together with the midpoints between
// consecutive values, ascending. 0 counts as the left end, so the first
// entry is half the smallest distance.
std::vector<double> radius_grid(const Space& space);

// Atoms and ascending partial sums of the sorted atoms in (0, 1].
std::vector<double> measure_grid(const Space& space);

// Proof-level consequences of the concentration/separation equivalence:
// (i) r <= sep(alpha(r), 1/2) whenever alpha(r) > 0, for r in radius_grid;
// (ii) sep(kappa, kappa) <= 2 min{r in radius_grid : alpha(r) < kappa}, for
// kappa in measure_grid.
CheckReport conc_sep_checks(const Space& space,
                            const SeparationOptions& options = {});

}  // namespace mmspace
