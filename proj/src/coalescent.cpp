#include "treelab/coalescent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treelab {

CoalescentTree sample_tree(int n0, Rng& rng) {
  if (n0 < 2 || n0 > 1'000'000)
    throw std::invalid_argument("n0 must be in [2, 1e6]");
  CoalescentTree tree;
  tree.start_lines = n0;
  tree.level_times.assign(n0 + 1, 0.0);
  tree.merges.reserve(n0 - 1);

  // Clade slots: slot -> leaf count. Merging uses swap-remove so each level
  // is O(1); the per-merge clade sizes are all laplace_psi12 ever needs.
  std::vector<long> sizes(n0, 1);
  double t = 0;
  for (int i = n0; i >= 2; --i) {
    t += rng.exponential(0.5 * i * (i - 1.0));
    tree.level_times[i - 1] = t;
    int a = static_cast<int>(rng.below(i));
    int b = static_cast<int>(rng.below(i - 1));
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    tree.merges.push_back({t, a, b, sizes[a], sizes[b]});
    sizes[a] += sizes[b];
    sizes[b] = sizes[i - 1];
    sizes.pop_back();
  }
  return tree;
}

SliceSample sample_slice(double eps, int n0, Rng& rng) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (n0 < 2 || n0 > 1'000'000)
    throw std::invalid_argument("n0 must be in [2, 1e6]");
  SliceSample s;
  s.eps = eps;

  // Level times decrease in n, so walking n0 -> 1 the first level time >= eps
  // identifies the covering number N = max{n : T_n >= eps}. Only the times
  // matter here; no merge bookkeeping is needed.
  long n = 1;
  // The slice describes the coalescent started from infinity; the levels
  // above n0 are not simulated, so their total duration (an independent sum
  // with mean 2/n0 and standard deviation O(n0^{-3/2}), negligible next to
  // its mean) is replaced by that mean. Without this offset every level time
  // would sit 2/n0 too shallow and N would be deterministically biased low.
  double t = 2.0 / n0;
  for (int i = n0; i >= 2; --i) {
    t += rng.exponential(0.5 * i * (i - 1.0));
    if (t >= eps) {
      // Depth eps falls inside the i-line period, so i families cover the
      // slice. (Counting only completed merge times here would undershoot by
      // one and fail the exact mean, sum_k (2k-1) e^{-k(k-1)eps/2}.)
      n = i;
      // All start lines survived to depth eps; with an infinite start the
      // true covering number would exceed what this truncation resolves.
      if (i == n0) s.saturated = true;
      break;
    }
  }
  s.n = n;

  // Given N, the family frequencies are uniform spacings: normalized unit
  // exponentials (Dirichlet(1,...,1)).
  s.freqs.resize(n);
  double sum = 0;
  for (double& f : s.freqs) sum += (f = rng.exponential(1.0));
  for (double& f : s.freqs) f /= sum;
  return s;
}

int recommended_n0(double eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  double lines = 20.0 * std::ceil(2.0 / eps);
  return static_cast<int>(std::max(200.0, lines));
}

double laplace_psi12(const CoalescentTree& tree, double lambda) {
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  const double n0 = tree.start_lines;
  double acc = n0;
  for (const auto& m : tree.merges)
    acc += 2.0 * m.size_a * m.size_b * std::exp(-lambda * m.depth);
  return acc / (n0 * n0);
}

SliceStatistics slice_statistics(const SliceSample& sample) {
  SliceStatistics st;
  const double eps = sample.eps;
  st.eps_n = eps * sample.n;
  double s2 = 0, s3 = 0, s4 = 0;
  for (double f : sample.freqs) {
    double f2 = f * f;
    s2 += f2;
    s3 += f2 * f;
    s4 += f2 * f2;
  }
  st.sum_f2_over_eps = s2 / eps;
  st.kth_moment_sums = {s2 / eps, s3 / (eps * eps), s4 / (eps * eps * eps)};

  std::vector<double> scaled(sample.freqs);
  for (double& f : scaled) f /= eps;
  std::sort(scaled.begin(), scaled.end());
  st.cdf_grid_x.resize(50);
  st.cdf_values.resize(50);
  for (int i = 0; i < 50; ++i) {
    double x = 0.1 * (i + 1);
    st.cdf_grid_x[i] = x;
    auto it = std::upper_bound(scaled.begin(), scaled.end(), x);
    st.cdf_values[i] =
        static_cast<double>(it - scaled.begin()) / scaled.size();
  }
  return st;
}

std::vector<double> z_profile(const CoalescentTree& tree, double lambda,
                              const std::vector<double>& t_grid) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  const double n0 = tree.start_lines;
  std::vector<double> out(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    double t = t_grid[k];
    if (!(t > 0)) throw std::invalid_argument("t grid must be positive");
    double lt = lambda * t;
    // Off-diagonal pair average of e^{-lambda t distance}; the diagonal
    // contribution 1/n0 is excluded so the estimator is exactly unbiased,
    // which matters at the sqrt(lambda) fluctuation scale.
    double acc = 0;
    for (const auto& m : tree.merges)
      acc += 2.0 * m.size_a * m.size_b * std::exp(-lt * m.depth);
    double psi = acc / (n0 * (n0 - 1.0));
    out[k] = std::sqrt(lambda) * ((lt + 1.0) * psi - 1.0);
  }
  return out;
}

}  // namespace treelab
