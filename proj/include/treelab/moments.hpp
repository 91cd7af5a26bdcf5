#pragma once

#include <map>
#include <vector>

#include "treelab/exp_polynomial.hpp"
#include "treelab/pair_graph.hpp"

namespace treelab {

// Expectation under the stationary law, per basis element.
using EquilibriumTable = std::map<PairGraph, RationalFunction>;

// E[Phi(X_t) | X_0] = sum_g coef_g(t) * Psi_g(X_0).
using EvolutionExpansion = std::map<PairGraph, ExpPolynomial>;

// Memoized equilibrium / conditional-evolution engine for one weight-symbol
// interpretation. All results are exact.
class MomentEngine {
 public:
  explicit MomentEngine(BasisContext ctx = BasisContext::standard());

  // Stationary expectation: forward substitution m_g = (sum of target
  // multiplicities times lower values) / (-diagonal), with m at the empty
  // graph equal to 1.
  const RationalFunction& equilibrium(const PairGraph& g);
  RationalFunction equilibrium(const LinearCombination& lc);

  // Triangular variation-of-constants solution of the moment ODE system:
  // the coefficient of the element itself is exp(diagonal * t), lower terms
  // are convolved forcing contributions.
  const EvolutionExpansion& evolve_element(const PairGraph& g);
  EvolutionExpansion evolve(const LinearCombination& input);

  // Stationary cross moment E[Psi_a(X_t) Psi_b(X_0)] as a function of t.
  ExpPolynomial cross_moment(const PairGraph& a, const PairGraph& b);

  const BasisContext& context() const { return ctx_; }

 private:
  BasisContext ctx_;
  std::map<PairGraph, RationalFunction> equil_;
  std::map<PairGraph, EvolutionExpansion> evo_;
};

// Equilibrium table over an explicit generator-closed basis.
EquilibriumTable equilibrium(const std::vector<PairGraph>& basis,
                             const BasisContext& ctx);

// Conditional evolution of a linear combination over an explicit triangular
// generator matrix (basis sorted by vertex count).
EvolutionExpansion evolve(const LinearCombination& input,
                          const GeneratorMatrix& matrix);

// Exact stationary E[((lambda+1) Psi^{12} - 1)^k] for k in {2,3,4}.
RationalFunction centered_moment(int k);

// Exact E[(Psi^{12}(X_t) - Psi^{12}(X_0))^k], started at stationarity,
// for k in {2,4}; an ExpPolynomial in t with coefficients rational in lambda.
ExpPolynomial increment_moment(int k);

struct ZMoments {
  // E[Z_s Z_t] for the rescaled small-mass observable
  // Z_t = sqrt(lambda) ((t lambda + 1) Psi^{12}_{t lambda} - 1);
  // rational in s, t, lambda.
  RationalFunction cov;
  // Rational factor of E[Z_t^3]: the full third moment is
  // lambda^(3/2) times this value (rational in t, lambda).
  RationalFunction third;
};
ZMoments z_moments();

// Series value of the expected number of ancestral blocks older than eps,
// sum over k >= 1 of (2k-1) exp(-k(k-1) eps / 2), truncated once a geometric
// tail bound drops below tol.
double tavare_mean_N(double eps, double tol);

// Certified enclosure of a numeric series value (lo == hi when exact).
struct Interval {
  BigRational lo, hi;
  double mid() const { return (to_double(lo) + to_double(hi)) / 2; }
  double width() const { return to_double(hi - lo); }
  bool contains(double x) const {
    return to_double(lo) <= x && x <= to_double(hi);
  }
};

enum class TnSpec { mean, var, central4 };

// Moments of the time T_n during which the coalescent has more than n
// blocks: mean exact, variance / centered fourth moment as certified
// intervals with integral tail bounds.
Interval tn_moment(long n, TnSpec spec);

}  // namespace treelab
