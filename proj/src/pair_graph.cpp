#include "treelab/pair_graph.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace treelab {

int PairGraph::cmp(const PairGraph& x, const PairGraph& y) {
  if (x.marked != y.marked) return x.marked < y.marked ? -1 : 1;
  if (x.nparams != y.nparams) return x.nparams < y.nparams ? -1 : 1;
  if (x.n != y.n) return x.n < y.n ? -1 : 1;
  if (x.edges != y.edges) return x.edges < y.edges ? -1 : 1;
  return 0;
}

std::string PairGraph::label() const {
  if (n == 0) return "-";
  std::ostringstream os;
  bool first = true;
  auto put_pair = [&](int a, int b) {
    if (!first) os << ",";
    first = false;
    os << a + 1 << b + 1;
  };
  for (const auto& e : edges) {
    bool unit_single = nparams == 1;
    if (unit_single) {
      for (int k = 0; k < e.w[0]; ++k) put_pair(e.a, e.b);
    } else {
      put_pair(e.a, e.b);
      bool unit = true;
      for (int i = 0; i < nparams; ++i)
        if (e.w[i] != (i == 0 ? 1 : 0)) unit = false;
      if (!unit) {
        os << "(";
        bool f2 = true;
        for (int i = 0; i < nparams; ++i) {
          if (e.w[i] == 0) continue;
          if (!f2) os << "+";
          f2 = false;
          if (e.w[i] > 1) os << e.w[i];
          os << static_cast<char>('a' + i);
        }
        os << ")";
      }
    }
  }
  return os.str();
}

namespace {

std::vector<PairGraph::Edge> normalize_edges(
    std::vector<PairGraph::Edge> edges) {
  for (auto& e : edges) {
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges.begin(), edges.end(),
            [](const auto& x, const auto& y) {
              return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });
  std::vector<PairGraph::Edge> out;
  for (auto& e : edges) {
    if (!out.empty() && out.back().a == e.a && out.back().b == e.b) {
      for (size_t i = 0; i < e.w.size(); ++i) out.back().w[i] += e.w[i];
    } else {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace

PairGraph canonicalize(int n, std::vector<PairGraph::Edge> raw, bool marked,
                       int nparams) {
  // Drop isolated vertices and relabel consecutively.
  std::vector<int> relabel(n, -1);
  int used = 0;
  {
    std::vector<bool> seen(n, false);
    for (const auto& e : raw) {
      assert(e.a != e.b);
      seen[e.a] = seen[e.b] = true;
    }
    for (int v = 0; v < n; ++v)
      if (seen[v]) relabel[v] = used++;
  }
  if (used > kMaxVertices) throw std::domain_error("vertex bound exceeded");
  for (auto& e : raw) {
    e.a = relabel[e.a];
    e.b = relabel[e.b];
  }
  auto edges = normalize_edges(std::move(raw));

  // Minimum encoding over all vertex permutations, memoized on the
  // normalized input.
  PairGraph key{used, marked, nparams, edges};
  static std::map<PairGraph, PairGraph> memo;
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  std::vector<int> perm(used);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<PairGraph::Edge> best;
  bool have_best = false;
  do {
    std::vector<PairGraph::Edge> cand = edges;
    for (auto& e : cand) {
      e.a = perm[e.a];
      e.b = perm[e.b];
      if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(cand.begin(), cand.end());
    if (!have_best || cand < best) {
      best = std::move(cand);
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  PairGraph out{used, marked, nparams, best};
  memo.emplace(key, out);
  return out;
}

PairGraph parse_pair_graph(const std::string& label, bool marked, int nparams) {
  std::vector<PairGraph::Edge> edges;
  int maxv = 0;
  std::stringstream ss(label);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok == "-") continue;
    if (tok.size() != 2 || tok[0] < '1' || tok[0] > '9' || tok[1] < '1' ||
        tok[1] > '9')
      throw std::invalid_argument("bad pair token: " + tok);
    int a = tok[0] - '1', b = tok[1] - '1';
    if (a == b) throw std::invalid_argument("self-loop token: " + tok);
    std::vector<int> w(nparams, 0);
    w[0] = 1;
    edges.push_back({a, b, w});
    maxv = std::max({maxv, a + 1, b + 1});
  }
  return canonicalize(maxv, std::move(edges), marked, nparams);
}

PairGraph empty_graph(bool marked, int nparams) {
  return PairGraph{0, marked, nparams, {}};
}

PairGraph merge(const PairGraph& g, int k, int l) {
  if (k < 1 || l < 1 || k > g.n || l > g.n || k == l)
    throw std::invalid_argument("invalid merge vertices");
  int ki = k - 1, li = l - 1;
  std::vector<PairGraph::Edge> edges;
  for (auto e : g.edges) {
    if (e.a == li) e.a = ki;
    if (e.b == li) e.b = ki;
    if (e.a == e.b) continue;  // self-loop deleted: distance collapses to 0
    edges.push_back(e);
  }
  return canonicalize(g.n, std::move(edges), g.marked, g.nparams);
}

PairGraph multiply_disjoint(const PairGraph& a, const PairGraph& b) {
  if (a.marked != b.marked || a.nparams != b.nparams)
    throw std::invalid_argument("incompatible factors");
  std::vector<PairGraph::Edge> edges = a.edges;
  for (auto e : b.edges) {
    e.a += a.n;
    e.b += a.n;
    edges.push_back(e);
  }
  return canonicalize(a.n + b.n, std::move(edges), a.marked, a.nparams);
}

BasisContext BasisContext::standard() {
  return {{MultiPolynomial::variable(Symbol::Lambda)}};
}

BasisContext BasisContext::single(const MultiPolynomial& p) { return {{p}}; }

BasisContext BasisContext::pair(const MultiPolynomial& p0,
                                const MultiPolynomial& p1) {
  return {{p0, p1}};
}

GeneratorRow generator_row(const PairGraph& g, const BasisContext& ctx) {
  if (static_cast<int>(ctx.params.size()) != g.nparams)
    throw std::invalid_argument("parameter list size mismatch");
  GeneratorRow row;
  MultiPolynomial weight;
  for (const auto& e : g.edges) {
    for (int i = 0; i < g.nparams; ++i)
      if (e.w[i] != 0) weight += ctx.params[i].scaled(rat(e.w[i]));
  }
  if (g.marked)
    weight += MultiPolynomial::term(rat(g.n), Symbol::Theta, 1);
  long pairs = static_cast<long>(g.n) * (g.n - 1) / 2;
  weight += MultiPolynomial(rat(pairs));
  row.diag = -RationalFunction(weight);
  for (int k = 1; k <= g.n; ++k) {
    for (int l = k + 1; l <= g.n; ++l) {
      row.targets[merge(g, k, l)] += 1;
    }
  }
  return row;
}

LinearCombination apply_generator(const PairGraph& g, const BasisContext& ctx) {
  GeneratorRow row = generator_row(g, ctx);
  LinearCombination lc;
  if (!row.diag.is_zero()) lc[g] = row.diag;
  for (const auto& [h, c] : row.targets) {
    auto [it, inserted] = lc.emplace(h, RationalFunction(rat(c)));
    if (!inserted) it->second += RationalFunction(rat(c));
  }
  for (auto it = lc.begin(); it != lc.end();) {
    it = it->second.is_zero() ? lc.erase(it) : std::next(it);
  }
  return lc;
}

std::vector<PairGraph> closure(const std::vector<PairGraph>& seeds) {
  std::set<PairGraph> seen(seeds.begin(), seeds.end());
  std::vector<PairGraph> stack(seeds.begin(), seeds.end());
  while (!stack.empty()) {
    PairGraph g = stack.back();
    stack.pop_back();
    for (int k = 1; k <= g.n; ++k) {
      for (int l = k + 1; l <= g.n; ++l) {
        PairGraph h = merge(g, k, l);
        if (seen.insert(h).second) stack.push_back(h);
      }
    }
  }
  std::vector<PairGraph> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const PairGraph& x, const PairGraph& y) {
    if (x.n != y.n) return x.n < y.n;
    return x < y;
  });
  return out;
}

int GeneratorMatrix::index_of(const PairGraph& g) const {
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == g) return static_cast<int>(i);
  return -1;
}

GeneratorMatrix to_matrix(const std::vector<PairGraph>& basis,
                          const BasisContext& ctx) {
  GeneratorMatrix m;
  m.basis = basis;
  for (size_t r = 0; r < basis.size(); ++r) {
    GeneratorRow row = generator_row(basis[r], ctx);
    if (!row.diag.is_zero()) m.entries[{(int)r, (int)r}] = row.diag;
    for (const auto& [h, c] : row.targets) {
      int j = m.index_of(h);
      if (j < 0) throw std::invalid_argument("basis not closed under generator");
      auto [it, inserted] =
          m.entries.emplace(std::pair{(int)r, j}, RationalFunction(rat(c)));
      if (!inserted) it->second += RationalFunction(rat(c));
    }
  }
  return m;
}

}  // namespace treelab
