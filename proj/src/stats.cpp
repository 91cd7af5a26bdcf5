#include "treelab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treelab {

Summary summarize(const std::vector<double>& samples) {
  const long n = static_cast<long>(samples.size());
  if (n < 2) throw std::invalid_argument("need at least 2 samples");
  Summary s;
  s.n = n;
  double sum = 0;
  for (double x : samples) sum += x;
  s.mean = sum / n;
  double m2 = 0, m3 = 0, m4 = 0;
  for (double x : samples) {
    double d = x - s.mean;
    double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  s.var = m2 / (n - 1);
  m2 /= n;
  m3 /= n;
  m4 /= n;
  s.skew = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
  s.kurtosis = m2 > 0 ? m4 / (m2 * m2) - 3.0 : 0.0;
  double se = std::sqrt(s.var / n);
  s.ci_lo = s.mean - 3 * se;
  s.ci_hi = s.mean + 3 * se;
  return s;
}

double ks_exp_half(const std::vector<double>& samples) {
  if (samples.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> xs(samples);
  std::sort(xs.begin(), xs.end());
  const double n = xs.size();
  double ks = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double f = 1.0 - std::exp(-2.0 * xs[i]);
    ks = std::max(ks, std::max(f - i / n, (i + 1) / n - f));
  }
  return ks;
}

BrownianCheck brownian_check(const std::vector<std::vector<double>>& paths,
                             const std::vector<double>& t_grid,
                             double slope_tol, double corr_tol) {
  const std::size_t np = paths.size(), ng = t_grid.size();
  if (np < 100) throw std::invalid_argument("need at least 100 paths");
  if (ng < 2) throw std::invalid_argument("need at least 2 grid times");
  for (std::size_t j = 1; j < ng; ++j)
    if (t_grid[j] <= t_grid[j - 1])
      throw std::invalid_argument("time grid must be increasing");
  for (const auto& p : paths)
    if (p.size() != ng) throw std::invalid_argument("ragged path array");

  BrownianCheck out;
  double stv = 0, stt = 0;
  for (std::size_t j = 0; j < ng; ++j) {
    double mean = 0;
    for (const auto& p : paths) mean += p[j];
    mean /= np;
    double var = 0;
    for (const auto& p : paths) var += (p[j] - mean) * (p[j] - mean);
    var /= np - 1;
    stv += t_grid[j] * var;
    stt += t_grid[j] * t_grid[j];
  }
  out.variance_slope = stv / stt;

  // Pooled lag-1 Pearson correlation of consecutive path increments.
  if (ng >= 3) {
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    long cnt = 0;
    for (const auto& p : paths)
      for (std::size_t j = 0; j + 2 < ng; ++j) {
        double a = p[j + 1] - p[j];
        double b = p[j + 2] - p[j + 1];
        sa += a;
        sb += b;
        saa += a * a;
        sbb += b * b;
        sab += a * b;
        ++cnt;
      }
    double ca = saa - sa * sa / cnt;
    double cb = sbb - sb * sb / cnt;
    double cab = sab - sa * sb / cnt;
    out.increment_corr = (ca > 0 && cb > 0) ? cab / std::sqrt(ca * cb) : 0.0;
  }
  out.pass = std::abs(out.variance_slope - 1.0) <= slope_tol &&
             std::abs(out.increment_corr) <= corr_tol;
  return out;
}

CheckResult make_check(std::string name, double estimate, double target,
                       double tolerance, double standard_error, long n_samples,
                       std::uint64_t seed, std::string note) {
  CheckResult r;
  r.name = std::move(name);
  r.estimate = estimate;
  r.target = target;
  r.tolerance = tolerance;
  r.standard_error = standard_error;
  r.n_samples = n_samples;
  r.seed = seed;
  r.note = std::move(note);
  r.pass = std::abs(estimate - target) <=
           std::max(tolerance, 3.0 * standard_error);
  return r;
}

}  // namespace treelab
