#include "treelab/moran.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace treelab {

namespace {

double identity_chi(double a) { return a; }

}  // namespace

MoranModel::MoranModel(int N, MoranInit mode, const MoranConfig& cfg, Rng& rng)
    : n_(N), mode_(mode), cfg_(cfg) {
  if (N < 2 || N > 5000) throw std::invalid_argument("N must be in [2, 5000]");
  if (cfg_.theta < 0 || cfg_.alpha < 0 || cfg_.z < 0 || cfg_.z > 1)
    throw std::invalid_argument("invalid Moran parameters");
  if (!cfg_.chi) cfg_.chi = identity_chi;
  nodes_.reserve(2 * N);
  leaf_of_.resize(N);
  type_.resize(N);

  for (int i = 0; i < N; ++i) {
    int id = alloc_node();
    nodes_[id].indiv = i;
    leaf_of_[i] = id;
  }

  if (mode == MoranInit::star) {
    // Everyone born this instant: all pairwise distances zero, one shared
    // type. Any left-comb arrangement of zero-time splits represents it.
    int cur = leaf_of_[0];
    for (int i = 1; i < N; ++i) {
      int p = alloc_node();
      nodes_[p].tau = 0;
      nodes_[p].left = cur;
      nodes_[p].right = leaf_of_[i];
      nodes_[p].leaves = i + 1;
      nodes_[cur].parent = p;
      nodes_[leaf_of_[i]].parent = p;
      cur = p;
    }
    root_ = cur;
    double t0 = rng.uniform();
    for (int i = 0; i < N; ++i) type_[i] = t0;
  } else {
    // Exact stationary genealogy: a Kingman coalescent on N leaves, merge
    // times placed at negative depths so the leaves sit at time 0.
    std::vector<int> act(leaf_of_);
    double depth = 0;
    for (int i = N; i >= 2; --i) {
      depth += rng.exponential(0.5 * i * (i - 1.0));
      int a = static_cast<int>(rng.below(i));
      int b = static_cast<int>(rng.below(i - 1));
      if (b >= a) ++b;
      int p = alloc_node();
      nodes_[p].tau = -depth;
      nodes_[p].left = act[a];
      nodes_[p].right = act[b];
      nodes_[p].leaves = nodes_[act[a]].leaves + nodes_[act[b]].leaves;
      nodes_[act[a]].parent = p;
      nodes_[act[b]].parent = p;
      act[a] = p;
      act[b] = act[i - 1];
      act.pop_back();
    }
    root_ = act[0];
    // Types by running the mutation process down the tree from a stationary
    // root draw; only the last parent-independent reset on an edge matters,
    // so each edge keeps the parent type with probability e^{-theta z len}.
    std::vector<std::pair<int, double>> stack{{root_, rng.uniform()}};
    while (!stack.empty()) {
      auto [id, ty] = stack.back();
      stack.pop_back();
      const Node& nd = nodes_[id];
      if (nd.left == -1) {
        type_[nd.indiv] = ty;
        continue;
      }
      for (int c : {nd.left, nd.right}) {
        double child_time = nodes_[c].left == -1 ? 0.0 : nodes_[c].tau;
        double keep = std::exp(-cfg_.theta * cfg_.z * (child_time - nd.tau));
        stack.emplace_back(c, rng.uniform() < keep ? ty : rng.uniform());
      }
    }
  }

  if (cfg_.alpha > 0) {
    fit_.assign(N + 1, 0.0);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j <= N; j += j & -j) fit_[j] += cfg_.chi(type_[i]);
  }
}

int MoranModel::alloc_node() {
  int id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
  } else {
    id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[id] = Node{};
  nodes_[id].alive = true;
  return id;
}

void MoranModel::free_node(int id) {
  nodes_[id].alive = false;
  free_.push_back(id);
}

template <typename Visit>
void MoranModel::for_each_internal(Visit&& visit) const {
  for (const Node& nd : nodes_)
    if (nd.alive && nd.left != -1) visit(nd);
}

void MoranModel::remove_individual(int indiv) {
  int leaf = leaf_of_[indiv];
  int p = nodes_[leaf].parent;
  int sib = nodes_[p].left == leaf ? nodes_[p].right : nodes_[p].left;
  if (track_w_)
    wsum_ -= 2.0 * nodes_[nodes_[p].left].leaves *
             nodes_[nodes_[p].right].leaves * nodes_[p].expw;
  if (track_b_ && nodes_[p].crossed) --crossed_count_;
  int g = nodes_[p].parent;
  nodes_[sib].parent = g;
  if (g == -1) {
    root_ = sib;
  } else if (nodes_[g].left == p) {
    nodes_[g].left = sib;
  } else {
    nodes_[g].right = sib;
  }
  free_node(p);
  free_node(leaf);
  int prev = sib;
  for (int a = g; a != -1; a = nodes_[a].parent) {
    int other = nodes_[a].left == prev ? nodes_[a].right : nodes_[a].left;
    if (track_w_) wsum_ -= 2.0 * nodes_[other].leaves * nodes_[a].expw;
    --nodes_[a].leaves;
    prev = a;
  }
}

void MoranModel::insert_copy(int parent_indiv, int slot) {
  int kleaf = leaf_of_[parent_indiv];
  int gp = nodes_[kleaf].parent;
  int nl = alloc_node();
  int q = alloc_node();
  nodes_[nl].indiv = slot;
  nodes_[nl].parent = q;
  nodes_[q].tau = time_;
  nodes_[q].left = kleaf;
  nodes_[q].right = nl;
  nodes_[q].leaves = 2;
  nodes_[q].parent = gp;
  nodes_[kleaf].parent = q;
  if (gp == -1) {
    root_ = q;
  } else if (nodes_[gp].left == kleaf) {
    nodes_[gp].left = q;
  } else {
    nodes_[gp].right = q;
  }
  int prev = q;
  for (int a = gp; a != -1; a = nodes_[a].parent) {
    int other = nodes_[a].left == prev ? nodes_[a].right : nodes_[a].left;
    if (track_w_) wsum_ += 2.0 * nodes_[other].leaves * nodes_[a].expw;
    ++nodes_[a].leaves;
    prev = a;
  }
  if (track_w_) {
    nodes_[q].expw = std::exp(wlambda_ * (time_ - wbase_));
    wsum_ += 2.0 * nodes_[q].expw;
  }
  if (track_b_) pending_.emplace_back(q, time_);
  leaf_of_[slot] = nl;
}

void MoranModel::fitness_update(int indiv, double new_type) {
  if (cfg_.alpha > 0) {
    double delta = cfg_.chi(new_type) - cfg_.chi(type_[indiv]);
    for (int j = indiv + 1; j <= n_; j += j & -j) fit_[j] += delta;
  }
  type_[indiv] = new_type;
}

double MoranModel::selection_total() const {
  double s = 0;
  for (int j = n_; j > 0; j -= j & -j) s += fit_[j];
  return s;
}

void MoranModel::replace(int parent_indiv, int victim) {
  remove_individual(victim);
  insert_copy(parent_indiv, victim);
  fitness_update(victim, type_[parent_indiv]);
}

void MoranModel::integrate_to(double s1) {
  double dt = s1 - time_;
  if (dt <= 0) return;
  if (track_w_) {
    // Between events every off-diagonal distance grows at speed 1, so the
    // pair sum S(s) = sum_{i != j} e^{-lambda d_ij(s)} decays exactly by
    // e^{-lambda (s - s0)}; the segment integral is closed-form.
    double decay = std::exp(-wlambda_ * dt);
    double s0 = wefac_ * wsum_;
    wacc_ += wlambda_ * dt * (1.0 / n_ - 1.0) +
             (wlambda_ + 1.0) / (static_cast<double>(n_) * n_) * s0 *
                 (1.0 - decay);
    wefac_ *= decay;
  }
  if (track_b_) {
    bacc_ += (1.0 + crossed_count_) * dt;
    double thr = s1 - beps_;
    while (!pending_.empty() && pending_.front().second <= thr) {
      auto [id, tau] = pending_.front();
      pending_.pop_front();
      Node& nd = nodes_[id];
      // Stale entries (node freed, or its id reused at a later split time)
      // are skipped; a live entry marks one more lineage crossing depth eps.
      if (nd.alive && nd.left != -1 && nd.tau == tau && !nd.crossed) {
        nd.crossed = true;
        ++crossed_count_;
        bacc_ += s1 - (tau + beps_);
      }
    }
  }
}

void MoranModel::rebase_w() {
  wbase_ = time_;
  wefac_ = 1;
  wsum_ = 0;
  for (Node& nd : nodes_)
    if (nd.alive && nd.left != -1) {
      nd.expw = std::exp(wlambda_ * (nd.tau - wbase_));
      wsum_ += 2.0 * nodes_[nd.left].leaves * nodes_[nd.right].leaves * nd.expw;
    }
}

void MoranModel::track_w(double lambda) {
  if (mode_ != MoranInit::stationary)
    throw std::logic_error("path integrals require a stationary start");
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  track_w_ = true;
  wlambda_ = lambda;
  wacc_ = 0;
  rebase_w();
}

void MoranModel::track_b(double eps, double centering) {
  if (mode_ != MoranInit::stationary)
    throw std::logic_error("path integrals require a stationary start");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  track_b_ = true;
  beps_ = eps;
  bcenter_ = centering;
  bstart_ = time_;
  bacc_ = 0;
  crossed_count_ = 0;
  pending_.clear();
  std::vector<std::pair<double, int>> open;
  for (Node& nd : nodes_)
    if (nd.alive && nd.left != -1) {
      if (nd.tau <= time_ - eps) {
        nd.crossed = true;
        ++crossed_count_;
      } else {
        nd.crossed = false;
        open.emplace_back(nd.tau, static_cast<int>(&nd - nodes_.data()));
      }
    }
  std::sort(open.begin(), open.end());
  for (auto& [tau, id] : open) pending_.emplace_back(id, tau);
}

double MoranModel::w_value() const { return wacc_; }

double MoranModel::b_value() const {
  return std::sqrt(1.5) * (bacc_ - bcenter_ * (time_ - bstart_));
}

void MoranModel::advance(double dt, Rng& rng) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  double tend = time_ + dt;
  double nrate = 0.5 * n_ * (n_ - 1.0);
  double mrate = cfg_.theta * n_;
  for (;;) {
    double srate = cfg_.alpha > 0 ? cfg_.alpha * selection_total() : 0.0;
    double rate = nrate + mrate + srate;
    double tnext = time_ + rng.exponential(rate);
    if (tnext >= tend) {
      integrate_to(tend);
      time_ = tend;
      break;
    }
    integrate_to(tnext);
    time_ = tnext;
    double u = rng.uniform() * rate;
    if (u < nrate) {
      int k = static_cast<int>(rng.below(n_));
      int l = static_cast<int>(rng.below(n_ - 1));
      if (l >= k) ++l;
      replace(k, l);
      ++neutral_events_;
    } else if (u < nrate + mrate) {
      int i = static_cast<int>(rng.below(n_));
      if (rng.uniform() < cfg_.z) fitness_update(i, rng.uniform());
    } else {
      // Selective reproduction: parent chosen proportionally to chi(type).
      double target = rng.uniform() * selection_total();
      int k = 0, mask = 1;
      while (2 * mask <= n_) mask *= 2;
      for (; mask > 0; mask /= 2) {
        int next = k + mask;
        if (next <= n_ && fit_[next] < target) {
          target -= fit_[next];
          k = next;
        }
      }
      k = std::min(k, n_ - 1);
      int l = static_cast<int>(rng.below(n_ - 1));
      if (l >= k) ++l;
      replace(k, l);
    }
    if (track_w_ && wlambda_ * (time_ - wbase_) > 500) rebase_w();
  }
}

long MoranModel::n_eps(double eps) const {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  long c = 1;
  double thr = time_ - eps;
  for_each_internal([&](const Node& nd) {
    if (nd.tau <= thr) ++c;
  });
  return c;
}

double MoranModel::psi12(double lambda) const {
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  double s = n_;
  for_each_internal([&](const Node& nd) {
    s += 2.0 * nodes_[nd.left].leaves * nodes_[nd.right].leaves *
         std::exp(-lambda * (time_ - nd.tau));
  });
  return s / (static_cast<double>(n_) * n_);
}

double MoranModel::psihat12(double lambda) const {
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  double acc = n_;
  // Small-to-large merges of per-subtree type multiplicity maps; at each
  // split the cross-count of shared types gives the equal-type pairs whose
  // distance is determined there.
  std::function<std::unordered_map<double, long>(int)> rec =
      [&](int id) -> std::unordered_map<double, long> {
    const Node& nd = nodes_[id];
    if (nd.left == -1) return {{type_[nd.indiv], 1}};
    auto big = rec(nd.left);
    auto small = rec(nd.right);
    if (big.size() < small.size()) std::swap(big, small);
    double common = 0;
    for (const auto& [ty, c] : small) {
      auto it = big.find(ty);
      if (it != big.end()) common += static_cast<double>(c) * it->second;
    }
    acc += 2.0 * common * std::exp(-lambda * (time_ - nd.tau));
    for (const auto& [ty, c] : small) big[ty] += c;
    return big;
  };
  rec(root_);
  return acc / (static_cast<double>(n_) * n_);
}

std::optional<double> MoranModel::mark_ratio(double eps) const {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  double thr = time_ - eps;
  double same = 0, total = 0;
  std::vector<int> stack{root_}, family;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const Node& nd = nodes_[id];
    if (nd.left != -1 && nd.tau <= thr) {
      stack.push_back(nd.left);
      stack.push_back(nd.right);
      continue;
    }
    // One eps-family: every pair below here is closer than eps.
    family.assign(1, id);
    std::unordered_map<double, long> counts;
    long m = 0;
    while (!family.empty()) {
      int f = family.back();
      family.pop_back();
      const Node& fn = nodes_[f];
      if (fn.left == -1) {
        ++counts[type_[fn.indiv]];
        ++m;
      } else {
        family.push_back(fn.left);
        family.push_back(fn.right);
      }
    }
    total += static_cast<double>(m) * (m - 1);
    for (const auto& [ty, c] : counts) same += static_cast<double>(c) * (c - 1);
  }
  if (total == 0) return std::nullopt;
  return same / total;
}

double MoranModel::pair_fraction_below(double delta) const {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  double thr = time_ - delta;
  double s = 0;
  for_each_internal([&](const Node& nd) {
    if (nd.tau > thr)
      s += 2.0 * nodes_[nd.left].leaves * nodes_[nd.right].leaves;
  });
  return s / (static_cast<double>(n_) * (n_ - 1.0));
}

double MoranModel::min_pair_distance() const {
  double mx = -std::numeric_limits<double>::infinity();
  for_each_internal([&](const Node& nd) { mx = std::max(mx, nd.tau); });
  return time_ - mx;
}

std::vector<std::vector<double>> MoranModel::distance_matrix() const {
  std::vector<std::vector<double>> d(n_, std::vector<double>(n_, 0.0));
  std::function<void(int, std::vector<int>&)> gather =
      [&](int id, std::vector<int>& out) {
        const Node& nd = nodes_[id];
        if (nd.left == -1) {
          out.push_back(nd.indiv);
        } else {
          gather(nd.left, out);
          gather(nd.right, out);
        }
      };
  for_each_internal([&](const Node& nd) {
    std::vector<int> left, right;
    gather(nd.left, left);
    gather(nd.right, right);
    double dist = time_ - nd.tau;
    for (int i : left)
      for (int j : right) d[i][j] = d[j][i] = dist;
  });
  return d;
}

}  // namespace treelab
