// Randomized properties against the brute-force and LP oracles. Generators
// are seeded so failures reproduce; the seed is in every failure message.

#include <gtest/gtest.h>

#include <cmath>

#include "mmspace/family.h"
#include "mmspace/rng.h"
#include "mmspace/separation.h"
#include "mmspace/spectral.h"
#include "mmspace/transport.h"
#include "oracles/brute_force.h"
#include "test_util.h"

using namespace mmspace;

namespace {

std::vector<double> random_weights(Rng& rng, int n, bool allow_zero) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = static_cast<double>(rng.below(6)) + (allow_zero ? 0.0 : 1.0);
    total += x;
  }
  if (total == 0.0) {
    w[rng.below(n)] = 1.0;
    total = 1.0;
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> random_kappas(Rng& rng, int count) {
  std::vector<double> k(count);
  for (double& x : k) x = 0.05 * static_cast<double>(1 + rng.below(10));
  return k;
}

Space random_case(uint64_t seed, int lo, int hi) {
  Rng rng(seed * 7919 + 1);
  const int n = lo + static_cast<int>(rng.below(static_cast<uint64_t>(hi - lo + 1)));
  return random_space(n, seed, rng.bernoulli(0.5));
}

TEST(Property, ExactSeparationMatchesBruteForce) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const Space s = random_case(seed, 3, 7);
    Rng rng(seed);
    const auto kappas = random_kappas(rng, 2 + static_cast<int>(rng.below(2)));
    const SeparationCertificate cert = separation_distance(s, kappas);
    ASSERT_NEAR(cert.value, oracle::separation(s, kappas), 1e-12) << "seed " << seed;
    ASSERT_EQ(cert.sets.size(), kappas.size());
    double min_d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < kappas.size(); ++i) {
      EXPECT_GE(cert.sets[i].measure(), kappas[i] - 1e-12) << "seed " << seed;
      for (size_t j = i + 1; j < kappas.size(); ++j) {
        min_d = std::min(min_d, set_distance(s, cert.sets[i], cert.sets[j]));
      }
    }
    if (cert.value > 0) EXPECT_NEAR(min_d, cert.value, 1e-12) << "seed " << seed;
  }
}

TEST(Property, HeuristicCertificateIsValid) {
  SeparationOptions heuristic;
  heuristic.mode = SepMode::kHeuristic;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const Space s = random_case(seed, 3, 9);
    Rng rng(seed + 1000);
    const auto kappas = random_kappas(rng, 2 + static_cast<int>(rng.below(3)));
    const SeparationCertificate h = separation_distance(s, kappas, heuristic);
    EXPECT_FALSE(h.exact);
    EXPECT_LE(h.value, separation_distance(s, kappas).value + 1e-12) << "seed " << seed;
    if (h.value > 0) {
      for (size_t i = 0; i < kappas.size(); ++i) {
        EXPECT_GE(h.sets[i].measure(), kappas[i] - 1e-12);
        for (size_t j = i + 1; j < kappas.size(); ++j) {
          EXPECT_GE(set_distance(s, h.sets[i], h.sets[j]), h.value - 1e-12);
        }
      }
    }
  }
}

TEST(Property, ConcentrationMatchesBruteForce) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const Space s = random_case(seed, 2, 9);
    for (double r : radius_grid(s)) {
      if (r <= 0) continue;
      const ConcentrationValue v = concentration_function(s, r);
      ASSERT_NEAR(v.alpha, oracle::concentration(s, r), 1e-12) << "seed " << seed << " r " << r;
      EXPECT_GE(v.witness.measure(), 0.5 - 1e-12);
      const Subset outside = neighborhood(s, v.witness, r, Closure::kOpen);
      EXPECT_NEAR(1.0 - outside.measure(), v.alpha, 1e-12);
    }
  }
}

TEST(Property, LevyIntervalOrdered) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const Space s = random_case(seed, 2, 9);
    for (double kappa : {0.05, 0.2, 0.5, 0.9}) {
      const LevyInterval l = levy_radius_bounds(s, kappa);
      EXPECT_LE(l.lower, l.upper + 1e-12) << "seed " << seed;
      EXPECT_GE(l.lower, 0.0);
    }
  }
}

TEST(Property, ProhorovAndTransportMatchOracles) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const Space s = random_case(seed, 2, 6);
    Rng rng(seed + 77);
    const auto p = random_weights(rng, s.size(), true);
    const auto q = random_weights(rng, s.size(), true);
    const Measure mu = Measure::from_weights(p);
    const Measure nu = Measure::from_weights(q);
    double prev_di = std::numeric_limits<double>::infinity();
    double prev_tra = prev_di;
    for (double lambda : {0.5, 1.0, 2.0}) {
      const double di = prohorov(s, mu, nu, lambda);
      const TransportDistance tra = transportation_distance(s, mu, nu, lambda);
      EXPECT_NEAR(di, oracle::prohorov(s, p, q, lambda), 1e-9) << "seed " << seed;
      EXPECT_NEAR(tra.value, oracle::transportation(s, p, q, lambda), 1e-9) << "seed " << seed;
      EXPECT_LE(std::abs(tra.value - di), 1e-6) << "seed " << seed;
      EXPECT_FALSE(plan_violation(s, tra.plan, mu, nu)) << "seed " << seed;
      EXPECT_LE(tra.plan.deficiency, lambda * tra.value + 1e-10);
      EXPECT_LE(di, prev_di + 1e-12);
      EXPECT_LE(tra.value, prev_tra + 1e-12);
      prev_di = di;
      prev_tra = tra.value;
    }
  }
}

TEST(Property, WassersteinMetricAxioms) {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    const Space s = random_case(seed, 3, 8);
    Rng rng(seed + 5);
    const Measure a = Measure::from_weights(random_weights(rng, s.size(), true));
    const Measure b = Measure::from_weights(random_weights(rng, s.size(), true));
    const Measure c = Measure::from_weights(random_weights(rng, s.size(), true));
    const double ab = wasserstein2(s, a, b).value;
    const double ba = wasserstein2(s, b, a).value;
    const double bc = wasserstein2(s, b, c).value;
    const double ac = wasserstein2(s, a, c).value;
    EXPECT_NEAR(ab, ba, 1e-9) << "seed " << seed;
    EXPECT_LE(ac, ab + bc + 1e-9) << "seed " << seed;
    EXPECT_NEAR(wasserstein2(s, a, a).value, 0.0, 1e-8);
    if (!(a == b)) EXPECT_GT(ab, 0.0);
  }
}

TEST(Property, EntropyNonnegative) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const Space s = random_case(seed, 2, 12);
    Rng rng(seed + 3);
    const Measure nu = Measure::from_weights(random_weights(rng, s.size(), true));
    EXPECT_GE(relative_entropy(s, nu), -1e-12);
    EXPECT_NEAR(relative_entropy(s, Measure::reference(s)), 0.0, 1e-10);
  }
}

TEST(Property, NeighborhoodsAndSetDistance) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const Space s = random_case(seed, 2, 10);
    Rng rng(seed + 11);
    const uint64_t full = (uint64_t{1} << s.size()) - 1;
    const uint64_t ma = 1 + rng.below(full);
    const uint64_t mb = 1 + rng.below(full);
    const Subset a = Subset::from_mask(s, ma);
    const Subset b = Subset::from_mask(s, mb);
    const Subset ab = Subset::from_mask(s, ma | mb);
    double prev = -1.0;
    for (double r : radius_grid(s)) {
      const Subset na = neighborhood(s, a, r);
      EXPECT_GE(na.measure(), prev - 1e-15);
      prev = na.measure();
      const Subset nab = neighborhood(s, ab, r);
      for (int x : na.indices()) EXPECT_TRUE(nab.contains(x));
    }
    EXPECT_DOUBLE_EQ(set_distance(s, a, b), set_distance(s, b, a));
    for (int x : a.indices()) {
      for (int y : b.indices()) EXPECT_LE(set_distance(s, a, b), s.dist(x, y));
    }
  }
}

TEST(Property, RebuiltSpacesRevalidate) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Space g = random_case(seed, 2, 30);
    std::vector<std::vector<double>> d(g.size(), std::vector<double>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
      for (int j = 0; j < g.size(); ++j) d[i][j] = g.dist(i, j);
    }
    const Space m = build_space(g.labels(), d, std::vector<double>(g.weights().begin(), g.weights().end()));
    EXPECT_TRUE(satisfies_invariants(m));
    EXPECT_TRUE(satisfies_invariants(g));
  }
}

TEST(Property, SpectrumInvariants) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Space s = random_case(seed, 2, 20);
    const Spectrum spec = spectrum(s);
    const int n = s.size();
    Eigen::VectorXd mu(n);
    for (int x = 0; x < n; ++x) mu(x) = s.mu(x);
    const Eigen::MatrixXd& phi = spec.eigenfunctions;
    EXPECT_NEAR(spec.eigenvalues(0), 0.0, 1e-9);
    EXPECT_GT(spec.eigenvalues(1), 1e-9);
    EXPECT_LE((phi.transpose() * mu.asDiagonal() * phi - Eigen::MatrixXd::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-8);
    const Eigen::MatrixXd l = laplacian(s);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd r = l * phi.col(j) - spec.eigenvalues(j) * phi.col(j);
      EXPECT_LE(std::sqrt((r.array().square() * mu.array()).sum()), 1e-8);
    }
    for (double t : {0.1, 1.0, 10.0}) {
      const HeatKernel p = heat_kernel(spec, t);
      EXPECT_LE(((p.values * mu).array() - 1.0).abs().maxCoeff(), 1e-8);
      const HeatKernel q = heat_kernel(spec, 2 * t);
      EXPECT_LE((p.values * mu.asDiagonal() * p.values - q.values).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

}  // namespace
