#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treelab {

struct Summary {
  double mean = 0;
  double var = 0;       // unbiased
  double skew = 0;      // g1
  double kurtosis = 0;  // excess (0 for a Gaussian)
  double ci_lo = 0, ci_hi = 0;  // 99.7% (3 sigma) interval for the mean
  long n = 0;
};

Summary summarize(const std::vector<double>& samples);

// Kolmogorov-Smirnov sup-distance of the empirical CDF to F(x) = 1 - e^{-2x}.
double ks_exp_half(const std::vector<double>& samples);

struct BrownianCheck {
  double variance_slope = 0;   // least squares Var[X(t)] ~ slope * t
  double increment_corr = 0;   // pooled lag-1 correlation of increments
  bool pass = false;
};

// paths[i][j] = X_i(t_grid[j]); requires >= 100 paths and an increasing grid.
BrownianCheck brownian_check(const std::vector<std::vector<double>>& paths,
                             const std::vector<double>& t_grid,
                             double slope_tol = 0.15, double corr_tol = 0.1);

struct CheckResult {
  std::string name;
  double estimate = 0;
  double target = 0;
  double tolerance = 0;       // absolute floor
  double standard_error = 0;  // 0 for exact/symbolic checks
  long n_samples = 0;
  std::uint64_t seed = 0;
  bool pass = false;
  std::string note;  // optional context (biases, known-discrepancy analysis)
};

// pass iff |estimate - target| <= max(tolerance, 3 * standard_error).
CheckResult make_check(std::string name, double estimate, double target,
                       double tolerance, double standard_error, long n_samples,
                       std::uint64_t seed, std::string note = "");

}  // namespace treelab
