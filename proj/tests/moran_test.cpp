#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "treelab/moments.hpp"
#include "treelab/moran.hpp"

using namespace treelab;

namespace {

struct MeanSe {
  double mean, se;
};

MeanSe mean_se(const std::vector<double>& xs) {
  double n = xs.size();
  double m = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double v = 0;
  for (double x : xs) v += (x - m) * (x - m);
  v /= (n - 1);
  return {m, std::sqrt(v / n)};
}

double variance(const std::vector<double>& xs) {
  auto [m, se] = mean_se(xs);
  double v = 0;
  for (double x : xs) v += (x - m) * (x - m);
  return v / (xs.size() - 1);
}

double offdiag(double psi, int n) { return (psi * n * n - n) / (n * (n - 1.0)); }

// Block count of {d_ij < eps} by direct single-linkage sweep (oracle for
// n_eps; single linkage is exact clustering for an ultrametric).
long blocks_from_matrix(const std::vector<std::vector<double>>& d, double eps) {
  int n = d.size();
  std::vector<int> comp(n, -1);
  long c = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    comp[i] = c;
    for (int j = i + 1; j < n; ++j)
      if (d[i][j] < eps) comp[j] = c;
    ++c;
  }
  return c;
}

}  // namespace

TEST_CASE("construction, validation, star state") {
  Rng rng(1);
  MoranConfig cfg;
  CHECK_THROWS_AS(MoranModel(1, MoranInit::star, cfg, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(MoranModel(6000, MoranInit::star, cfg, rng),
                  std::invalid_argument);

  MoranModel star(40, MoranInit::star, cfg, rng);
  CHECK(star.n_eps(0.5) == 1);
  CHECK(star.psi12(3.0) == doctest::Approx(1.0));
  CHECK(star.mark_ratio(0.5).value() == doctest::Approx(1.0));
  auto d = star.distance_matrix();
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) CHECK(d[i][j] == 0.0);
  CHECK_THROWS_AS(star.track_w(10.0), std::logic_error);
  CHECK_THROWS_AS(star.track_b(0.1, 2.0), std::logic_error);
}

TEST_CASE("determinism") {
  MoranConfig cfg;
  cfg.theta = 0.5;
  Rng r1(9), r2(9);
  MoranModel a(80, MoranInit::stationary, cfg, r1);
  MoranModel b(80, MoranInit::stationary, cfg, r2);
  a.track_w(10.0);
  b.track_w(10.0);
  a.advance(0.7, r1);
  b.advance(0.7, r2);
  CHECK(a.psi12(4.0) == b.psi12(4.0));
  CHECK(a.w_value() == b.w_value());
  CHECK(a.neutral_event_count() == b.neutral_event_count());
}

TEST_CASE("neutral event rate") {
  Rng rng(5);
  MoranConfig cfg;
  MoranModel m(50, MoranInit::stationary, cfg, rng);
  double horizon = 12.0;
  m.advance(horizon, rng);
  double expected = 0.5 * 50 * 49 * horizon;
  double sd = std::sqrt(expected);
  CHECK(std::abs(m.neutral_event_count() - expected) <= 3 * sd);
}

TEST_CASE("ultrametricity and functional/matrix consistency") {
  Rng rng(13);
  MoranConfig cfg;
  cfg.theta = 1.0;
  cfg.alpha = 0.3;
  MoranModel m(120, MoranInit::stationary, cfg, rng);
  m.advance(0.8, rng);

  auto d = m.distance_matrix();
  const int n = 120;
  double mind = 1e300;
  for (int i = 0; i < n; ++i) {
    CHECK(d[i][i] == 0.0);
    for (int j = i + 1; j < n; ++j) {
      CHECK(d[i][j] > 0);
      CHECK(d[i][j] == d[j][i]);
      mind = std::min(mind, d[i][j]);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        CHECK(d[i][j] <= std::max(d[i][k], d[k][j]) + 1e-12);
  CHECK(m.min_pair_distance() == doctest::Approx(mind));

  for (double lam : {0.7, 5.0}) {
    double psi = n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) psi += std::exp(-lam * d[i][j]);
    CHECK(m.psi12(lam) == doctest::Approx(psi / (double(n) * n)).epsilon(1e-10));

    double psihat = n;
    const auto& ty = m.types();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && ty[i] == ty[j]) psihat += std::exp(-lam * d[i][j]);
    CHECK(m.psihat12(lam) ==
          doctest::Approx(psihat / (double(n) * n)).epsilon(1e-10));
  }

  for (double eps : {0.01, 0.1, 0.5}) {
    CHECK(m.n_eps(eps) == blocks_from_matrix(d, eps));
    double cnt = 0, same = 0;
    const auto& ty = m.types();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && d[i][j] < eps) {
          cnt += 1;
          if (ty[i] == ty[j]) same += 1;
        }
    CHECK(m.pair_fraction_below(eps) ==
          doctest::Approx(cnt / (n * (n - 1.0))).epsilon(1e-12));
    auto mr = m.mark_ratio(eps);
    if (cnt == 0) {
      CHECK(!mr.has_value());
    } else {
      CHECK(mr.value() == doctest::Approx(same / cnt).epsilon(1e-12));
    }
  }
}

TEST_CASE("N=2 stationary distance is Exp(1) under the dynamics") {
  Rng rng(21);
  MoranConfig cfg;
  MoranModel m(2, MoranInit::stationary, cfg, rng);
  const int samples = 4000;
  std::vector<double> lap(samples), dist(samples);
  for (int i = 0; i < samples; ++i) {
    m.advance(1.0, rng);
    auto d = m.distance_matrix();
    dist[i] = d[0][1];
    lap[i] = std::exp(-d[0][1]);
  }
  auto [ml, sel] = mean_se(lap);
  CHECK(std::abs(ml - 0.5) <= 3 * sel);
  auto [md, sed] = mean_se(dist);
  CHECK(std::abs(md - 1.0) <= 3 * sed);
}

TEST_CASE("stationary ensemble: psi12 mean, preservation under advance") {
  MoranConfig cfg;
  const int n = 200, reps = 300;
  const double lam = 5.0;
  std::vector<double> at0(reps), at1(reps);
  for (int i = 0; i < reps; ++i) {
    Rng r = Rng::substream(33, i);
    MoranModel m(n, MoranInit::stationary, cfg, r);
    at0[i] = offdiag(m.psi12(lam), n);
    m.advance(0.5, r);
    at1[i] = offdiag(m.psi12(lam), n);
  }
  auto [m0, se0] = mean_se(at0);
  auto [m1, se1] = mean_se(at1);
  CHECK(std::abs(m0 - 1.0 / 6.0) <= 3 * se0);
  CHECK(std::abs(m1 - 1.0 / 6.0) <= 3 * se1);
}

TEST_CASE("marked pair: Laplace and ball mark ratios at stationarity") {
  MoranConfig cfg;
  cfg.theta = 1.0;
  const int n = 300, reps = 500;
  const double lam = 9.0, eps = 0.1;
  std::vector<double> psis(reps), psihats(reps), ratios(reps);
  for (int i = 0; i < reps; ++i) {
    Rng r = Rng::substream(55, i);
    MoranModel m(n, MoranInit::stationary, cfg, r);
    psis[i] = offdiag(m.psi12(lam), n);
    psihats[i] = offdiag(m.psihat12(lam), n);
    ratios[i] = m.mark_ratio(eps).value();
  }
  // Pair marginal: distance Exp(1); types still equal iff no mutation on
  // either lineage, so E psi_off = 1/(lam+1), E psihat_off = 1/(lam+2theta+1).
  auto [mp, sep] = mean_se(psis);
  auto [mh, seh] = mean_se(psihats);
  CHECK(std::abs(mp - 0.1) <= 3 * sep);
  CHECK(std::abs(mh - 1.0 / 12.0) <= 3 * seh);

  double a = 1.0 + 2 * cfg.theta;
  double target = (1.0 - std::exp(-a * eps)) / a / (1.0 - std::exp(-eps));
  auto [mr, ser] = mean_se(ratios);
  CHECK(std::abs(mr - target) <= 3 * ser + 0.01);
}

TEST_CASE("path integrals: exact accumulation matches a fine Riemann sum") {
  MoranConfig cfg;
  const int n = 50;
  const double lam = 3.0, eps = 0.08;
  Rng r = Rng::substream(77, 0);
  MoranModel m(n, MoranInit::stationary, cfg, r);
  double center = tavare_mean_N(eps, 1e-12);
  m.track_w(lam);
  m.track_b(eps, center);
  const double h = 2e-5, T = 0.5;
  double wsum = 0, bsum = 0;
  for (int i = 0; i < static_cast<int>(T / h + 0.5); ++i) {
    wsum += h * lam * ((lam + 1) * m.psi12(lam) - 1.0 - lam / n);
    bsum += h * (m.n_eps(eps) - center);
    m.advance(h, r);
  }
  CHECK(m.w_value() == doctest::Approx(wsum).epsilon(0.02));
  CHECK(m.b_value() == doctest::Approx(std::sqrt(1.5) * bsum).epsilon(0.02));
}

TEST_CASE("path integrals: Brownian-scale variance at moderate size") {
  MoranConfig cfg;
  const int n = 400, paths = 120;
  const double lam = 50.0, eps = 0.05, T = 1.0;
  double center = tavare_mean_N(eps, 1e-12);
  std::vector<double> w1(paths), b1(paths), whalf(paths);
  for (int i = 0; i < paths; ++i) {
    Rng r = Rng::substream(91, i);
    MoranModel m(n, MoranInit::stationary, cfg, r);
    m.track_w(lam);
    m.track_b(eps, center);
    m.advance(T / 2, r);
    whalf[i] = m.w_value();
    m.advance(T / 2, r);
    w1[i] = m.w_value();
    b1[i] = m.b_value();
  }
  auto [mw, sew] = mean_se(w1);
  CHECK(std::abs(mw) <= 3 * sew);
  double vw = variance(w1), vb = variance(b1);
  MESSAGE("Var[W(1)] = " << vw << "  Var[B(1)] = " << vb);
  CHECK(vw > 0.5);
  CHECK(vw < 1.7);
  // The B normalization converges slowly as eps -> 0: at eps = 0.05 the
  // path variance sits near 0.46 and rises toward 1 only for much finer
  // scales, so only a coarse band is enforced here.
  CHECK(vb > 0.3);
  CHECK(vb < 1.7);
  // Disjoint increments nearly uncorrelated.
  std::vector<double> inc2(paths);
  for (int i = 0; i < paths; ++i) inc2[i] = w1[i] - whalf[i];
  auto [mi, sei] = mean_se(inc2);
  auto [mh, seh] = mean_se(whalf);
  double cov = 0;
  for (int i = 0; i < paths; ++i) cov += (whalf[i] - mh) * (inc2[i] - mi);
  cov /= paths - 1;
  double corr = cov / std::sqrt(variance(whalf) * variance(inc2));
  CHECK(std::abs(corr) < 0.3);
}

TEST_CASE("selection: invariants hold and coverage LLN stays in range") {
  MoranConfig cfg;
  cfg.theta = 1.0;
  cfg.alpha = 0.5;
  Rng rng(101);
  MoranModel m(100, MoranInit::stationary, cfg, rng);
  std::vector<double> en;
  for (int i = 0; i < 40; ++i) {
    m.advance(0.25, rng);
    en.push_back(0.1 * m.n_eps(0.1));
  }
  auto d = m.distance_matrix();
  for (int i = 0; i < 100; ++i)
    for (int j = i + 1; j < 100; ++j)
      for (int k = 0; k < 100; ++k)
        CHECK(d[i][j] <= std::max(d[i][k], d[k][j]) + 1e-12);
  auto [me, see] = mean_se(en);
  // 2/eps = 20 lines at eps = 0.1 carries a finite-N deficit of about
  // (2/eps)^2/N = 4 here; just pin the broad range.
  CHECK(me > 1.3);
  CHECK(me < 2.2);
  CHECK(m.min_pair_distance() > 0);
}
