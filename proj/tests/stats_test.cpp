#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "treelab/rng.hpp"
#include "treelab/stats.hpp"

using namespace treelab;

TEST_CASE("summarize: exact small cases and distributional checks") {
  CHECK_THROWS_AS(summarize({1.0}), std::invalid_argument);

  Summary c = summarize({2.0, 2.0, 2.0, 2.0});
  CHECK(c.mean == 2.0);
  CHECK(c.var == 0.0);

  const int n = 100'000;
  Rng rng(3);
  std::vector<double> normal(n), expo(n);
  for (int i = 0; i < n; ++i) {
    normal[i] = rng.normal();
    expo[i] = rng.exponential(1.0);
  }
  Summary sn = summarize(normal);
  CHECK(std::abs(sn.mean) <= 3.0 / std::sqrt(n));
  CHECK(sn.ci_lo <= 0.0);
  CHECK(sn.ci_hi >= 0.0);
  CHECK(sn.var == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(sn.skew) < 0.03);
  CHECK(std::abs(sn.kurtosis) < 0.06);

  Summary se = summarize(expo);
  CHECK(std::abs(se.mean - 1.0) <= 3.0 / std::sqrt(n));
  CHECK(se.var == doctest::Approx(1.0).epsilon(0.05));
  CHECK(se.skew == doctest::Approx(2.0).epsilon(0.1));
  CHECK(se.kurtosis == doctest::Approx(6.0).epsilon(0.2));
}

TEST_CASE("ks_exp_half: null passes, wrong rate fails") {
  CHECK_THROWS_AS(ks_exp_half({}), std::invalid_argument);

  const int n = 100'000;
  Rng rng(11);
  std::vector<double> good(n), bad(n);
  for (int i = 0; i < n; ++i) {
    good[i] = rng.exponential(2.0);
    bad[i] = rng.exponential(1.0);
  }
  CHECK(ks_exp_half(good) < 0.006);
  // sup_x |e^{-x} - e^{-2x}| = 1/4 at x = ln 2.
  CHECK(ks_exp_half(bad) == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("brownian_check: BM null passes, OU alternative fails") {
  std::vector<double> grid;
  for (int j = 1; j <= 10; ++j) grid.push_back(0.1 * j);
  const int paths = 400;

  std::vector<std::vector<double>> bm(paths), ou(paths);
  Rng rng(17);
  const double ou_rate = 4.0;  // dX = -rate X dt + sqrt(2 rate) dW, Var = 1
  for (int i = 0; i < paths; ++i) {
    double x = 0, y = rng.normal();
    double tprev = 0;
    for (double t : grid) {
      double dt = t - tprev;
      x += std::sqrt(dt) * rng.normal();
      double decay = std::exp(-ou_rate * dt);
      y = y * decay + std::sqrt(1.0 - decay * decay) * rng.normal();
      bm[i].push_back(x);
      ou[i].push_back(y);
      tprev = t;
    }
  }
  BrownianCheck ok = brownian_check(bm, grid);
  CHECK(ok.pass);
  CHECK(ok.variance_slope == doctest::Approx(1.0).epsilon(0.15));
  CHECK(std::abs(ok.increment_corr) < 0.1);

  BrownianCheck no = brownian_check(ou, grid);
  CHECK(!no.pass);  // stationary variance 1 vs t ramp: slope far from 1

  CHECK_THROWS_AS(brownian_check({bm[0]}, grid), std::invalid_argument);
  CHECK_THROWS_AS(brownian_check(bm, {0.2, 0.1}), std::invalid_argument);
}

TEST_CASE("make_check: acceptance rule") {
  CheckResult a = make_check("x", 1.05, 1.0, 0.1, 0.0, 10, 42);
  CHECK(a.pass);
  CheckResult b = make_check("x", 1.05, 1.0, 0.01, 0.02, 10, 42);
  CHECK(b.pass);  // 3 SE = 0.06 dominates the floor
  CheckResult c = make_check("x", 1.05, 1.0, 0.01, 0.002, 10, 42);
  CHECK(!c.pass);
  CHECK(c.seed == 42);
}
