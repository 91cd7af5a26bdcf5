#pragma once

#include <array>
#include <vector>

#include "treelab/rng.hpp"

namespace treelab {

// Exact level-by-level simulation of the coalescent genealogy of start_lines
// leaves. Depths are measured from the leaves; distance between two leaves is
// the depth of their most recent common ancestor.
struct CoalescentTree {
  int start_lines = 0;
  // level_times[n] = depth at which n lines remain, n in [1, start_lines];
  // level_times[start_lines] = 0, strictly increasing as n decreases.
  std::vector<double> level_times;
  struct Merge {
    double depth;         // depth of this merge event
    int a, b;             // merged clade slots (for reproducibility checks)
    long size_a, size_b;  // leaf counts of the merged clades
  };
  std::vector<Merge> merges;  // start_lines - 1 events, increasing depth
};

CoalescentTree sample_tree(int n0, Rng& rng);

// A depth-eps slice of the (effectively infinite) coalescent: the number of
// ancestral families older than eps and their sampling-measure frequencies.
struct SliceSample {
  double eps = 0;
  long n = 0;                 // covering number N_eps
  bool saturated = false;     // all n0 start lines survived to depth eps
  std::vector<double> freqs;  // n frequencies, positive, summing to 1
};

SliceSample sample_slice(double eps, int n0, Rng& rng);

// Start-size policy making saturation negligible at radius eps.
int recommended_n0(double eps);

// (1/n0^2) (n0 + sum over merges of 2 |A| |B| e^{-lambda depth}).
double laplace_psi12(const CoalescentTree& tree, double lambda);

struct SliceStatistics {
  double eps_n = 0;                        // eps * N
  double sum_f2_over_eps = 0;              // (1/eps) sum F_i^2
  std::array<double, 3> kth_moment_sums{}; // (1/eps^{k-1}) sum F_i^k, k=2,3,4
  std::vector<double> cdf_grid_x;          // fixed grid for F_i/eps
  std::vector<double> cdf_values;          // empirical CDF on the grid
};

SliceStatistics slice_statistics(const SliceSample& sample);

// Fluctuation profile sqrt(lambda) ((lambda t + 1) psi - 1) on a time grid,
// where psi is the off-diagonal pair average of e^{-lambda t distance}
// (exactly unbiased for the population Laplace value, unlike the
// full average whose diagonal term 1/n0 would dominate at this scaling).
std::vector<double> z_profile(const CoalescentTree& tree, double lambda,
                              const std::vector<double>& t_grid);

}  // namespace treelab
