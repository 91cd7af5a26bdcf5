#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "treelab/rng.hpp"

namespace treelab {

enum class MoranInit { stationary, star };

struct MoranConfig {
  double theta = 0;  // per-individual mutation rate
  double z = 1;      // parent-independent (uniform) component weight
  double alpha = 0;  // selection intensity
  // Additive fitness of a type; identity on [0,1] when not set.
  std::function<double(double)> chi;
};

// Finite Moran population carrying its full genealogy (pairwise distances =
// time to most recent common ancestor, growing at speed 1 between events)
// plus one type per individual. The genealogy is held as a binary tree so an
// event costs O(depth) instead of an O(N) distance-matrix row rewrite.
class MoranModel {
 public:
  MoranModel(int N, MoranInit mode, const MoranConfig& cfg, Rng& rng);

  // Event-driven exact simulation over [time, time + dt].
  void advance(double dt, Rng& rng);

  double time() const { return time_; }
  int population() const { return n_; }
  long neutral_event_count() const { return neutral_events_; }

  // Number of blocks of {i ~ j iff d_ij < eps} (= ancestral lines eps back).
  long n_eps(double eps) const;
  // (1/N^2) (N + sum_{i != j} e^{-lambda d_ij}).
  double psi12(double lambda) const;
  // Same with a type-equality indicator on each off-diagonal pair.
  double psihat12(double lambda) const;
  // Same-type fraction among ordered pairs with d_ij < eps; empty when no
  // pair is that close.
  std::optional<double> mark_ratio(double eps) const;
  // Fraction of ordered off-diagonal pairs with d_ij < delta.
  double pair_fraction_below(double delta) const;
  double min_pair_distance() const;
  // Materialized O(N^2) distances (test/debug aid for small N).
  std::vector<std::vector<double>> distance_matrix() const;
  const std::vector<double>& types() const { return type_; }

  // Exact path integrals accumulated while advancing; stationary start only.
  //   W_lambda(t) = lambda * int_0^t ((lambda+1) psi12(s) - 1 - lambda/N) ds
  // (the lambda/N term is the exact finite-population mean of the
  // integrand's leading part, so W is centered),
  //   B_eps(t) = sqrt(3/2) * int_0^t (n_eps(s) - centering) ds.
  void track_w(double lambda);
  void track_b(double eps, double centering);
  double w_value() const;
  double b_value() const;

 private:
  struct Node {
    double tau = 0;  // split time (internal nodes)
    int parent = -1;
    int left = -1, right = -1;  // -1,-1 for leaves
    int leaves = 1;
    int indiv = -1;    // population slot (leaves)
    double expw = 0;   // e^{lambda (tau - wbase)} while W is tracked
    bool alive = false;
    bool crossed = false;  // passed the eps-depth threshold (B tracking)
  };

  int alloc_node();
  void free_node(int id);
  void remove_individual(int indiv);
  void insert_copy(int parent_indiv, int slot);
  void replace(int parent_indiv, int victim);
  void integrate_to(double s1);
  void rebase_w();
  double selection_total() const;
  void fitness_update(int indiv, double new_type);
  template <typename Visit>
  void for_each_internal(Visit&& visit) const;

  int n_ = 0;
  MoranInit mode_;
  MoranConfig cfg_;
  double time_ = 0;
  long neutral_events_ = 0;

  std::vector<Node> nodes_;
  std::vector<int> free_;
  std::vector<int> leaf_of_;  // individual slot -> leaf node id
  std::vector<double> type_;
  int root_ = -1;

  std::vector<double> fit_;  // Fenwick tree over chi(type), alpha > 0 only

  bool track_w_ = false;
  double wlambda_ = 0, wbase_ = 0, wsum_ = 0, wefac_ = 1, wacc_ = 0;
  bool track_b_ = false;
  double beps_ = 0, bcenter_ = 0, bstart_ = 0, bacc_ = 0;
  long crossed_count_ = 0;
  std::deque<std::pair<int, double>> pending_;  // (node, tau), tau ascending
};

}  // namespace treelab
