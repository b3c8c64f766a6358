#include "mmspace/separation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "masks.h"
#include "mmspace/error.h"

namespace mmspace {

using detail::bit;
using detail::full_mask;
using detail::Mask;
using detail::mask_measure;

namespace {

void validate_kappas(std::span<const double> kappas) {
  if (kappas.size() < 2) {
    throw Error(ErrorCode::kBadKappa, "separation needs at least two kappas");
  }
  for (double k : kappas) {
    if (!(k > 0.0 && k <= 1.0)) {
      std::ostringstream os;
      os << "kappa " << k << " outside (0, 1]";
      throw Error(ErrorCode::kBadKappa, os.str());
    }
  }
}

double min_pairwise_distance(const Space& space, const std::vector<Subset>& sets) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < sets.size(); ++i) {
    for (size_t j = i + 1; j < sets.size(); ++j) {
      best = std::min(best, set_distance(space, sets[i], sets[j]));
    }
  }
  return best;
}

SeparationCertificate zero_certificate(const Space& space,
                                       std::span<const double> kappas,
                                       bool exact) {
  SeparationCertificate cert;
  cert.kappas.assign(kappas.begin(), kappas.end());
  cert.sets.assign(kappas.size(), Subset::all(space));
  cert.value = 0.0;
  cert.exact = exact;
  return cert;
}

// Depth-first assignment of points (in index order) to classes or to
// "unassigned", looking for classes of the required measures whose cross
// distances are all >= r.
class ExactSearch {
 public:
  ExactSearch(const Space& space, std::span<const double> kappas)
      : space_(space),
        n_(space.size()),
        k_(static_cast<int>(kappas.size())),
        kappas_(kappas.begin(), kappas.end()),
        twin_prev_(k_, -1),
        suffix_(n_ + 1, 0) {
    for (int c = 0; c < k_; ++c) {
      for (int p = c - 1; p >= 0; --p) {
        if (kappas_[p] == kappas_[c]) {
          twin_prev_[c] = p;
          break;
        }
      }
    }
    for (int p = n_ - 1; p >= 0; --p) suffix_[p] = suffix_[p + 1] | bit(p);
  }

  std::optional<std::vector<Mask>> feasible(double r) {
    close_.assign(n_, 0);
    for (int x = 0; x < n_; ++x) {
      for (int y = 0; y < n_; ++y) {
        if (space_.dist(x, y) < r) close_[x] |= bit(y);
      }
    }
    classes_.assign(k_, 0);
    conflict_.assign(k_, 0);
    deficit_ = kappas_;
    if (dfs(0)) return classes_;
    return std::nullopt;
  }

 private:
  Mask blocked_for(int c) const {
    Mask m = 0;
    for (int o = 0; o < k_; ++o) {
      if (o != c) m |= conflict_[o];
    }
    return m;
  }

  bool dfs(int p) {
    bool done = true;
    for (int c = 0; c < k_; ++c) done = done && deficit_[c] <= kMeasureTol;
    if (done) return true;
    if (p == n_) return false;

    const Mask remaining = suffix_[p];
    Mask eligible_any = 0;
    double total_deficit = 0.0;
    for (int c = 0; c < k_; ++c) {
      if (deficit_[c] <= kMeasureTol) continue;
      const Mask eligible = remaining & ~blocked_for(c);
      if (mask_measure(space_, eligible) < deficit_[c] - kMeasureTol) return false;
      eligible_any |= eligible;
      total_deficit += deficit_[c];
    }
    if (mask_measure(space_, eligible_any) < total_deficit - k_ * kMeasureTol) {
      return false;
    }

    for (int c = 0; c < k_; ++c) {
      if (deficit_[c] <= kMeasureTol) continue;
      if (twin_prev_[c] >= 0 && classes_[twin_prev_[c]] == 0) continue;
      if (blocked_for(c) & bit(p)) continue;
      const Mask saved_class = classes_[c];
      const Mask saved_conflict = conflict_[c];
      const double saved_deficit = deficit_[c];
      classes_[c] |= bit(p);
      conflict_[c] |= close_[p];
      deficit_[c] -= space_.mu(p);
      if (dfs(p + 1)) return true;
      classes_[c] = saved_class;
      conflict_[c] = saved_conflict;
      deficit_[c] = saved_deficit;
    }
    return dfs(p + 1);
  }

  const Space& space_;
  int n_;
  int k_;
  std::vector<double> kappas_;
  std::vector<int> twin_prev_;
  std::vector<Mask> suffix_;
  std::vector<Mask> close_;
  std::vector<Mask> classes_;
  std::vector<Mask> conflict_;
  std::vector<double> deficit_;
};

SeparationCertificate exact_separation(const Space& space,
                                       std::span<const double> kappas) {
  const std::vector<double> thresholds = distinct_distances(space);
  ExactSearch search(space, kappas);
  // Feasibility is monotone in the threshold, so the largest feasible one is
  // found by bisection over the sorted distances.
  int lo = 0;
  int hi = static_cast<int>(thresholds.size()) - 1;
  std::optional<std::vector<Mask>> best;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    auto found = search.feasible(thresholds[mid]);
    if (found) {
      best = std::move(found);
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  if (!best) return zero_certificate(space, kappas, true);
  SeparationCertificate cert;
  cert.kappas.assign(kappas.begin(), kappas.end());
  for (Mask m : *best) cert.sets.push_back(Subset::from_mask(space, m));
  cert.value = min_pairwise_distance(space, cert.sets);
  cert.exact = true;
  return cert;
}

// Greedy construction at a fixed threshold r from farthest-point seeds:
// repeatedly grows the class with the largest remaining deficit by its
// nearest admissible point.
std::optional<std::vector<std::vector<int>>> greedy_at(
    const Space& space, std::span<const double> kappas, double r, int start) {
  const int n = space.size();
  const int k = static_cast<int>(kappas.size());
  std::vector<int> owner(n, -1);
  std::vector<std::vector<int>> classes(k);
  std::vector<double> deficit(kappas.begin(), kappas.end());

  auto admissible = [&](int x, int c) {
    if (owner[x] != -1) return false;
    for (int y = 0; y < n; ++y) {
      if (owner[y] != -1 && owner[y] != c && space.dist(x, y) < r) return false;
    }
    return true;
  };
  auto add = [&](int x, int c) {
    owner[x] = c;
    classes[c].push_back(x);
    deficit[c] -= space.mu(x);
  };

  std::vector<int> seeds{start};
  while (static_cast<int>(seeds.size()) < k) {
    int best = -1;
    double best_d = -1.0;
    for (int x = 0; x < n; ++x) {
      double d = std::numeric_limits<double>::infinity();
      for (int s : seeds) d = std::min(d, space.dist(x, s));
      if (d > best_d) {
        best_d = d;
        best = x;
      }
    }
    if (best_d < r) return std::nullopt;
    seeds.push_back(best);
  }
  for (int c = 0; c < k; ++c) add(seeds[c], c);

  while (true) {
    int c = -1;
    for (int i = 0; i < k; ++i) {
      if (deficit[i] > kMeasureTol && (c == -1 || deficit[i] > deficit[c])) c = i;
    }
    if (c == -1) return classes;
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x) {
      if (!admissible(x, c)) continue;
      double d = std::numeric_limits<double>::infinity();
      for (int y : classes[c]) d = std::min(d, space.dist(x, y));
      if (d < best_d) {
        best_d = d;
        best = x;
      }
    }
    if (best == -1) return std::nullopt;
    add(best, c);
  }
}

SeparationCertificate heuristic_separation(const Space& space,
                                           std::span<const double> kappas) {
  const std::vector<double> thresholds = distinct_distances(space);
  const int n = space.size();
  const int starts = std::min(n, 8);
  for (auto it = thresholds.rbegin(); it != thresholds.rend(); ++it) {
    for (int s = 0; s < starts; ++s) {
      // Spread the starting seeds over the index range.
      const int start = static_cast<int>((static_cast<long>(s) * n) / starts);
      auto classes = greedy_at(space, kappas, *it, start);
      if (!classes) continue;
      SeparationCertificate cert;
      cert.kappas.assign(kappas.begin(), kappas.end());
      for (const auto& members : *classes) {
        cert.sets.push_back(Subset::from_indices(space, members));
      }
      cert.value = min_pairwise_distance(space, cert.sets);
      cert.exact = false;
      return cert;
    }
  }
  return zero_certificate(space, kappas, false);
}

}  // namespace

MedianInterval median_interval(const Space& space, std::span<const double> f) {
  const int n = space.size();
  if (static_cast<int>(f.size()) != n) {
    throw Error(ErrorCode::kBadParameter, "function length differs from point count");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&f](int a, int b) { return f[a] < f[b]; });
  // Group equal values; below[g] = mu(f < value_g), at[g] = mu(f == value_g).
  std::vector<double> values, at;
  for (int idx : order) {
    if (values.empty() || f[idx] != values.back()) {
      values.push_back(f[idx]);
      at.push_back(0.0);
    }
    at.back() += space.mu(idx);
  }
  const size_t groups = values.size();
  std::vector<double> le(groups), ge(groups);
  double acc = 0.0;
  for (size_t g = 0; g < groups; ++g) le[g] = (acc += at[g]);
  acc = 0.0;
  for (size_t g = groups; g-- > 0;) ge[g] = (acc += at[g]);

  MedianInterval out;
  for (size_t g = 0; g < groups; ++g) {
    if (le[g] >= 0.5 - kMeasureTol) {
      out.lower = values[g];
      break;
    }
  }
  for (size_t g = groups; g-- > 0;) {
    if (ge[g] >= 0.5 - kMeasureTol) {
      out.upper = values[g];
      break;
    }
  }
  return out;
}

double lm(const Space& space, std::span<const double> f) {
  return median_interval(space, f).center();
}

SeparationCertificate separation_distance(const Space& space,
                                          std::span<const double> kappas,
                                          const SeparationOptions& options) {
  validate_kappas(kappas);
  const bool exact = options.mode == SepMode::kExact;
  if (exact) {
    if (space.size() > options.exact_limit || space.size() > 64) {
      throw Error(ErrorCode::kTooLargeForExact,
                  std::to_string(space.size()) + " points exceed the exact limit " +
                      std::to_string(options.exact_limit));
    }
    if (static_cast<int>(kappas.size()) > kMaxExactClasses) {
      throw Error(ErrorCode::kTooLargeForExact,
                  "exact separation supports at most " +
                      std::to_string(kMaxExactClasses) + " sets");
    }
  }
  const double total = std::accumulate(kappas.begin(), kappas.end(), 0.0);
  if (total > 1.0 + kMeasureTol) return zero_certificate(space, kappas, exact);
  return exact ? exact_separation(space, kappas)
               : heuristic_separation(space, kappas);
}

Json certificate_to_json(const SeparationCertificate& certificate) {
  Json sets = Json::array();
  for (const Subset& s : certificate.sets) sets.push_back(s.indices());
  return Json{{"value", certificate.value},
              {"exact", certificate.exact},
              {"sets", std::move(sets)},
              {"kappas", certificate.kappas}};
}

double neighborhood_union_measure(const Space& space,
                                  std::span<const Subset> sets, double r) {
  std::vector<bool> covered(space.size(), false);
  for (const Subset& s : sets) {
    const Subset nb = neighborhood(space, s, r, Closure::kClosed);
    for (int x : nb.indices()) covered[x] = true;
  }
  double total = 0.0;
  for (int x = 0; x < space.size(); ++x) {
    if (covered[x]) total += space.mu(x);
  }
  return total;
}

CheckReport check_neighborhood_bound(const Space& space,
                                     std::span<const double> kappas,
                                     std::span<const Subset> sets,
                                     const SeparationOptions& options) {
  if (sets.empty() || kappas.size() != sets.size() + 1) {
    throw Error(ErrorCode::kPreconditionViolated,
                "need k >= 1 sets and k + 1 kappas");
  }
  const double r = separation_distance(space, kappas, options).value;
  for (size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].universe_size() != space.size() || sets[i].is_empty()) {
      throw Error(ErrorCode::kPreconditionViolated,
                  "set " + std::to_string(i) + " is empty or from another space");
    }
    if (sets[i].measure() < kappas[i] - kMeasureTol) {
      throw Error(ErrorCode::kPreconditionViolated,
                  "set " + std::to_string(i) + " is lighter than its kappa");
    }
    for (size_t j = i + 1; j < sets.size(); ++j) {
      if (!(set_distance(space, sets[i], sets[j]) > r)) {
        throw Error(ErrorCode::kPreconditionViolated,
                    "sets " + std::to_string(i) + " and " + std::to_string(j) +
                        " are not farther apart than the separation distance");
      }
    }
  }
  const double covered = neighborhood_union_measure(space, sets, r);
  const double bound = 1.0 - kappas.back();
  Check check;
  check.name = "neighborhood_union_bound";
  check.measured = {{"r", r},
                    {"union_measure", covered},
                    {"bound", bound},
                    {"margin", covered - bound}};
  check.status = covered >= bound - kMeasureTol ? CheckStatus::kPass
                                                : CheckStatus::kFail;
  if (check.status == CheckStatus::kFail) {
    Json sets_json = Json::array();
    for (const Subset& s : sets) sets_json.push_back(s.indices());
    check.witness = Json{{"space", space_to_json(space)},
                         {"kappas", std::vector<double>(kappas.begin(), kappas.end())},
                         {"sets", std::move(sets_json)}};
  }
  CheckReport report;
  report.suite = "neighborhood_bound";
  report.checks.push_back(std::move(check));
  return report;
}

double deviation_radius(const Space& space, std::span<const double> f,
                        double kappa) {
  const double center = lm(space, f);
  const int n = space.size();
  std::vector<double> dev(n);
  for (int x = 0; x < n; ++x) dev[x] = std::abs(f[x] - center);
  double best = 0.0;
  for (int x = 0; x < n; ++x) {
    if (dev[x] <= best) continue;
    double tail = 0.0;
    for (int y = 0; y < n; ++y) {
      if (dev[y] >= dev[x]) tail += space.mu(y);
    }
    if (tail > kappa + kMeasureTol) best = dev[x];
  }
  return best;
}

LevyInterval levy_radius_bounds(const Space& space, double kappa,
                                int exact_limit) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw Error(ErrorCode::kBadKappa, "Levy radius needs 0 < kappa < 1");
  }
  LevyInterval out;
  out.kappa = kappa;
  const double half[2] = {kappa / 2.0, kappa / 2.0};
  SeparationOptions options;
  options.exact_limit = exact_limit;
  out.upper = separation_distance(space, half, options).value;

  const int n = space.size();
  std::vector<double> f(n);
  auto consider = [&](std::span<const int> members) {
    for (int x = 0; x < n; ++x) {
      double d = std::numeric_limits<double>::infinity();
      for (int s : members) d = std::min(d, space.dist(x, s));
      f[x] = d;
    }
    out.lower = std::max(out.lower, deviation_radius(space, f, kappa));
  };
  if (n <= exact_limit && n <= 30) {
    std::vector<int> members;
    for (Mask m = 1; m <= full_mask(n); ++m) {
      members.clear();
      for (int i = 0; i < n; ++i) {
        if (m & bit(i)) members.push_back(i);
      }
      consider(members);
    }
  } else {
    const std::vector<double> radii = distinct_distances(space);
    std::vector<int> members;
    for (int c = 0; c < n; ++c) {
      const int single[1] = {c};
      consider(single);
      for (double r : radii) {
        members.clear();
        for (int x = 0; x < n; ++x) {
          if (space.dist(c, x) <= r) members.push_back(x);
        }
        if (static_cast<int>(members.size()) == n) break;
        consider(members);
      }
    }
  }
  return out;
}

namespace {

// Measures of all 2^n subsets, reused across radii.
class ConcentrationTable {
 public:
  explicit ConcentrationTable(const Space& space)
      : space_(space), n_(space.size()) {
    if (n_ > kMaxConcentrationPoints) {
      throw Error(ErrorCode::kTooLargeForExact,
                  "concentration function is exhaustive up to " +
                      std::to_string(kMaxConcentrationPoints) + " points");
    }
    const size_t count = size_t{1} << n_;
    measure_.assign(count, 0.0);
    for (Mask m = 1; m < count; ++m) measure_[m] = mask_measure(space_, m);
  }

  ConcentrationValue at(double r) const {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw Error(ErrorCode::kBadParameter, "concentration radius must be > 0");
    }
    const auto balls = detail::ball_masks(space_, r, Closure::kOpen);
    const size_t count = size_t{1} << n_;
    std::vector<Mask> nbhd(count, 0);
    const Mask full = full_mask(n_);
    double best = -1.0;
    Mask best_mask = 0;
    for (Mask m = 1; m < count; ++m) {
      nbhd[m] = nbhd[m & (m - 1)] | balls[std::countr_zero(m)];
      if (measure_[m] < 0.5 - kMeasureTol) continue;
      const double outside = measure_[full & ~nbhd[m]];
      if (outside > best) {
        best = outside;
        best_mask = m;
      }
    }
    ConcentrationValue value;
    value.r = r;
    value.alpha = best;
    value.witness = Subset::from_mask(space_, best_mask);
    return value;
  }

 private:
  const Space& space_;
  int n_;
  std::vector<double> measure_;
};

}  // namespace

ConcentrationValue concentration_function(const Space& space, double r) {
  return ConcentrationTable(space).at(r);
}

std::vector<double> radius_grid(const Space& space) {
  const std::vector<double> d = distinct_distances(space);
  std::vector<double> grid;
  double prev = 0.0;
  for (double x : d) {
    grid.push_back(0.5 * (prev + x));
    grid.push_back(x);
    prev = x;
  }
  return grid;
}

std::vector<double> measure_grid(const Space& space) {
  std::vector<double> atoms(space.weights().begin(), space.weights().end());
  std::sort(atoms.begin(), atoms.end());
  std::vector<double> grid = atoms;
  double acc = 0.0;
  for (double a : atoms) {
    acc += a;
    if (acc <= 1.0 + kMeasureTol) grid.push_back(std::min(acc, 1.0));
  }
  std::sort(grid.begin(), grid.end());
  std::vector<double> out;
  for (double g : grid) {
    if (g <= 0.0) continue;
    if (out.empty() || g - out.back() > kMeasureTol) out.push_back(g);
  }
  return out;
}

CheckReport conc_sep_checks(const Space& space, const SeparationOptions& options) {
  const ConcentrationTable table(space);
  const std::vector<double> radii = radius_grid(space);
  std::vector<ConcentrationValue> alpha;
  alpha.reserve(radii.size());
  for (double r : radii) alpha.push_back(table.at(r));

  CheckReport report;
  report.suite = "conc_sep";

  // (i) r <= sep(alpha(r), 1/2).
  {
    Check check;
    check.name = "concentration_implies_separation";
    double worst = std::numeric_limits<double>::infinity();
    int evaluated = 0;
    for (const ConcentrationValue& a : alpha) {
      if (a.alpha <= kMeasureTol) continue;
      const double kappas[2] = {a.alpha, 0.5};
      const double sep = separation_distance(space, kappas, options).value;
      ++evaluated;
      const double margin = sep - a.r;
      if (margin < worst) worst = margin;
      if (margin < -kMeasureTol && !check.witness) {
        check.witness = Json{{"space", space_to_json(space)},
                             {"r", a.r},
                             {"alpha", a.alpha},
                             {"sep", sep},
                             {"A", a.witness.indices()}};
      }
    }
    check.measured = {{"evaluated", static_cast<double>(evaluated)},
                      {"worst_margin", evaluated ? worst : 0.0}};
    check.status = check.witness ? CheckStatus::kFail : CheckStatus::kPass;
    report.checks.push_back(std::move(check));
  }

  // (ii) sep(kappa, kappa) <= 2 min{r : alpha(r) < kappa}.
  {
    Check check;
    check.name = "separation_implies_concentration";
    double worst = std::numeric_limits<double>::infinity();
    int evaluated = 0;
    for (double kappa : measure_grid(space)) {
      double r_min = std::numeric_limits<double>::infinity();
      for (const ConcentrationValue& a : alpha) {
        if (a.alpha < kappa - kMeasureTol) {
          r_min = a.r;
          break;
        }
      }
      if (!std::isfinite(r_min)) continue;
      const double kappas[2] = {kappa, kappa};
      const double sep = separation_distance(space, kappas, options).value;
      ++evaluated;
      const double margin = 2.0 * r_min - sep;
      if (margin < worst) worst = margin;
      if (margin < -kMeasureTol && !check.witness) {
        check.witness = Json{{"space", space_to_json(space)},
                             {"kappa", kappa},
                             {"r", r_min},
                             {"sep", sep}};
      }
    }
    check.measured = {{"evaluated", static_cast<double>(evaluated)},
                      {"worst_margin", evaluated ? worst : 0.0}};
    check.status = check.witness ? CheckStatus::kFail : CheckStatus::kPass;
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace mmspace
