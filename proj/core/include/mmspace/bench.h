#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmspace/json_io.h"
#include "mmspace/report.h"
#include "mmspace/separation.h"
#include "mmspace/space.h"

namespace mmspace {

// Empirical constants of the separation reduction on one space: D_emp is the
// largest D with sep_{k+1}(kappa) <= log(1/kappa) / D on the grid (+inf when
// every sep_{k+1} vanishes) and c_emp the smallest c with
// sep_k(kappa) <= c log(1/kappa) / D_emp on the grid (NaN when D_emp is
// infinite).
struct ProbeResult {
  int k = 0;
  std::vector<double> kappa_grid;
  std::vector<double> sep_k;       // k equal kappas
  std::vector<double> sep_k_plus;  // k + 1 equal kappas
  double d_emp = 0.0;
  double c_emp = 0.0;

  bool applicable() const;
};

// Throws BadGrid for an empty grid or a kappa outside (0, 1/2),
// BadParameter unless 2 <= k < kMaxExactClasses, and TooLargeForExact.
ProbeResult sep_reduction_probe(const Space& space, int k,
                                std::span<const double> kappa_grid,
                                const SeparationOptions& options = {});

Json probe_to_json(const ProbeResult& probe);

// Ascending partial sums of the sorted atoms that fall in (0, 1/2).
std::vector<double> default_kappa_grid(const Space& space);

struct SuiteConfig {
  int seeds = -1;          // instances per randomized suite; -1 = suite default
  uint64_t base_seed = 0;  // instance i uses seed base_seed + i
  std::vector<double> lambdas{0.5, 1.0, 2.0};
  std::vector<int> cycle_sizes{8, 16, 32};
};

std::vector<std::string> suite_names();

// Runs a named suite: strassen, separation_lemmas, conc_sep,
// spectral_sanity, cgy_family, cd_diagnostic or all. Checks are sorted by
// name. Throws UnknownSuite.
CheckReport verify_suite(std::string_view name, const SuiteConfig& config = {});

}  // namespace mmspace
