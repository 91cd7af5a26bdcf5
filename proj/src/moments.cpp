#include "treelab/moments.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace treelab {

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
  return r;
}

// Disjoint union of j unit edges.
PairGraph disjoint_pairs(int j) {
  PairGraph g = empty_graph();
  PairGraph e = parse_pair_graph("12");
  for (int i = 0; i < j; ++i) g = multiply_disjoint(g, e);
  return g;
}

}  // namespace

MomentEngine::MomentEngine(BasisContext ctx) : ctx_(std::move(ctx)) {}

const RationalFunction& MomentEngine::equilibrium(const PairGraph& g) {
  if (auto it = equil_.find(g); it != equil_.end()) return it->second;
  RationalFunction value;
  if (g.is_empty()) {
    value = RationalFunction(1L);
  } else {
    GeneratorRow row = generator_row(g, ctx_);
    RationalFunction mu = -row.diag;
    if (mu.is_zero()) throw std::domain_error("zero diagonal entry");
    RationalFunction sum;
    for (const auto& [h, c] : row.targets)
      sum += RationalFunction(c) * equilibrium(h);
    value = sum / mu;
  }
  return equil_.emplace(g, std::move(value)).first->second;
}

RationalFunction MomentEngine::equilibrium(const LinearCombination& lc) {
  RationalFunction sum;
  for (const auto& [g, coef] : lc) sum += coef * equilibrium(g);
  return sum;
}

const EvolutionExpansion& MomentEngine::evolve_element(const PairGraph& g) {
  if (auto it = evo_.find(g); it != evo_.end()) return it->second;
  EvolutionExpansion out;
  if (g.is_empty()) {
    out[g] = ExpPolynomial::constant(RationalFunction(1L));
  } else {
    GeneratorRow row = generator_row(g, ctx_);
    RationalFunction mu = -row.diag;
    out[g] = ExpPolynomial::term(RationalFunction(1L), 0, mu);
    for (const auto& [h, c] : row.targets) {
      const EvolutionExpansion& sub = evolve_element(h);
      RationalFunction cf(c);
      for (const auto& [x, ep] : sub) {
        ExpPolynomial add = ep.convolved(mu).scaled(cf);
        auto [it, inserted] = out.emplace(x, add);
        if (!inserted) it->second += add;
      }
    }
  }
  return evo_.emplace(g, std::move(out)).first->second;
}

EvolutionExpansion MomentEngine::evolve(const LinearCombination& input) {
  EvolutionExpansion out;
  for (const auto& [g, coef] : input) {
    for (const auto& [x, ep] : evolve_element(g)) {
      ExpPolynomial add = ep.scaled(coef);
      auto [it, inserted] = out.emplace(x, add);
      if (!inserted) it->second += add;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

ExpPolynomial MomentEngine::cross_moment(const PairGraph& a,
                                         const PairGraph& b) {
  ExpPolynomial acc;
  for (const auto& [h, ep] : evolve_element(a))
    acc += ep.scaled(equilibrium(multiply_disjoint(h, b)));
  return acc;
}

EquilibriumTable equilibrium(const std::vector<PairGraph>& basis,
                             const BasisContext& ctx) {
  std::set<PairGraph> in_basis(basis.begin(), basis.end());
  MomentEngine engine(ctx);
  EquilibriumTable table;
  for (const PairGraph& g : basis) {
    if (!g.is_empty()) {
      for (const auto& [h, c] : generator_row(g, ctx).targets)
        if (!in_basis.count(h))
          throw std::invalid_argument("basis not closed under generator");
    }
    table[g] = engine.equilibrium(g);
  }
  return table;
}

EvolutionExpansion evolve(const LinearCombination& input,
                          const GeneratorMatrix& matrix) {
  const auto& basis = matrix.basis;
  const int n = static_cast<int>(basis.size());
  std::vector<std::map<int, ExpPolynomial>> memo(n);
  std::vector<char> done(n, 0);
  std::function<const std::map<int, ExpPolynomial>&(int)> solve =
      [&](int i) -> const std::map<int, ExpPolynomial>& {
    if (done[i]) return memo[i];
    RationalFunction mu;
    if (auto it = matrix.entries.find({i, i}); it != matrix.entries.end())
      mu = -it->second;
    std::map<int, ExpPolynomial> out;
    out[i] = ExpPolynomial::term(RationalFunction(1L), 0, mu);
    for (const auto& [rc, v] : matrix.entries) {
      if (rc.first != i || rc.second == i) continue;
      for (const auto& [j, ep] : solve(rc.second)) {
        ExpPolynomial add = ep.convolved(mu).scaled(v);
        auto [it, inserted] = out.emplace(j, add);
        if (!inserted) it->second += add;
      }
    }
    memo[i] = std::move(out);
    done[i] = 1;
    return memo[i];
  };

  EvolutionExpansion out;
  for (const auto& [g, coef] : input) {
    int i = matrix.index_of(g);
    if (i < 0) throw std::invalid_argument("input element outside basis");
    for (const auto& [j, ep] : solve(i)) {
      ExpPolynomial add = ep.scaled(coef);
      auto [it, inserted] = out.emplace(basis[j], add);
      if (!inserted) it->second += add;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

RationalFunction centered_moment(int k) {
  if (k < 2 || k > 4) throw std::invalid_argument("k must be 2, 3 or 4");
  MomentEngine engine;
  MultiPolynomial lp1 =
      MultiPolynomial::variable(Symbol::Lambda) + MultiPolynomial(1);
  RationalFunction res;
  for (int j = 0; j <= k; ++j) {
    long sign = ((k - j) % 2 == 0) ? 1 : -1;
    res += RationalFunction(lp1.pow(j)) *
           engine.equilibrium(disjoint_pairs(j)) *
           RationalFunction(sign * binom(k, j));
  }
  return res;
}

ExpPolynomial increment_moment(int k) {
  if (k != 2 && k != 4) throw std::invalid_argument("k must be 2 or 4");
  MomentEngine engine;
  ExpPolynomial res;
  for (int j = 0; j <= k; ++j) {
    long sign = ((k - j) % 2 == 0) ? 1 : -1;
    res += engine.cross_moment(disjoint_pairs(j), disjoint_pairs(k - j))
               .scaled(RationalFunction(sign * binom(k, j)));
  }
  return res;
}

ZMoments z_moments() {
  MultiPolynomial lam = MultiPolynomial::variable(Symbol::Lambda);
  MultiPolynomial a = MultiPolynomial::variable(Symbol::S) * lam;
  MultiPolynomial b = MultiPolynomial::variable(Symbol::T) * lam;
  ZMoments z;
  {
    MomentEngine two(BasisContext::pair(a, b));
    std::vector<PairGraph::Edge> edges = {{0, 1, {1, 0}}, {2, 3, {0, 1}}};
    PairGraph pairs = canonicalize(4, edges, false, 2);
    RationalFunction m = two.equilibrium(pairs);
    RationalFunction ap1(a + MultiPolynomial(1));
    RationalFunction bp1(b + MultiPolynomial(1));
    z.cov = RationalFunction(lam) * (ap1 * bp1 * m - RationalFunction(1L));
  }
  {
    MomentEngine single(BasisContext::single(b));
    RationalFunction bp1(b + MultiPolynomial(1));
    RationalFunction m4 = single.equilibrium(disjoint_pairs(2));
    RationalFunction m6 = single.equilibrium(disjoint_pairs(3));
    z.third = bp1 * bp1 * bp1 * m6 - RationalFunction(3L) * bp1 * bp1 * m4 +
              RationalFunction(2L);
  }
  return z;
}

double tavare_mean_N(double eps, double tol) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  if (tol <= 0) tol = 1e-12;
  double sum = 0;
  for (long k = 1;; ++k) {
    double term = (2.0 * k - 1) * std::exp(-0.5 * k * (k - 1) * eps);
    sum += term;
    // Term ratios e^{-k eps}(2k+1)/(2k-1) decrease in k; once below one the
    // remaining tail is geometrically dominated.
    double q = std::exp(-static_cast<double>(k) * eps) * (2.0 * k + 1) /
               (2.0 * k - 1);
    if (q < 1) {
      double next = (2.0 * k + 1) * std::exp(-0.5 * (k + 1) * k * eps);
      if (next / (1 - q) < tol) break;
    }
  }
  return sum;
}

Interval tn_moment(long n, TnSpec spec) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (spec == TnSpec::mean) {
    BigRational m = rat(2, n);
    return {m, m};
  }
  const long M = n + 1000;
  BigRational s2(0), s4(0);
  for (long i = n + 1; i <= M; ++i) {
    BigRational d = BigRational(1) / (BigRational(i) * BigRational(i - 1));
    BigRational d2 = d * d;
    s2 += d2;
    if (spec == TnSpec::central4) s4 += d2 * d2;
  }
  BigRational Mr(M), Mp1(M + 1);
  // sum_{i>M} 1/((i-1)i)^2 is enclosed by integral bounds:
  //   1/((i-1)i)^2 <= (1/(i-1)^3 - 1/i^3)/3 (telescoping) and >= 1/i^4.
  BigRational t2_lo = BigRational(1) / (BigRational(3) * Mp1 * Mp1 * Mp1);
  BigRational t2_hi = BigRational(1) / (BigRational(3) * Mr * Mr * Mr);
  BigRational var_lo = BigRational(4) * (s2 + t2_lo);
  BigRational var_hi = BigRational(4) * (s2 + t2_hi);
  if (spec == TnSpec::var) return {var_lo, var_hi};
  // Fourth power analogue: 1/((i-1)i)^4 <= (1/(i-1)^7 - 1/i^7)/7 and
  // >= 1/i^8; the centered fourth moment of a sum of independent
  // exponentials is the summed fourth cumulants plus three variance squared.
  auto pow7 = [](const BigRational& x) -> BigRational {
    BigRational x2 = x * x;
    return BigRational(x2 * x2 * x2 * x);
  };
  BigRational t4_lo = BigRational(1) / (BigRational(7) * pow7(Mp1));
  BigRational t4_hi = BigRational(1) / (BigRational(7) * pow7(Mr));
  BigRational lo = BigRational(96) * (s4 + t4_lo) +
                   BigRational(3) * var_lo * var_lo;
  BigRational hi = BigRational(96) * (s4 + t4_hi) +
                   BigRational(3) * var_hi * var_hi;
  return {lo, hi};
}

}  // namespace treelab
