#pragma once

#include <map>
#include <string>
#include <vector>

#include "treelab/rational_function.hpp"

namespace treelab {

// A basis element: multigraph on sample indices whose edges carry positive
// integer weights per weight symbol. Vertices are 0-based internally, every
// vertex is incident to an edge, and the labeling is canonical (minimal over
// all vertex permutations). `marked` means every edge additionally carries
// the type-equality indicator.
struct PairGraph {
  struct Edge {
    int a, b;               // a < b
    std::vector<int> w;     // weight per symbol, length nparams
    auto operator<=>(const Edge&) const = default;
  };

  int n = 0;
  bool marked = false;
  int nparams = 1;
  std::vector<Edge> edges;  // sorted

  static int cmp(const PairGraph& x, const PairGraph& y);
  bool operator==(const PairGraph& o) const { return cmp(*this, o) == 0; }
  bool operator!=(const PairGraph& o) const { return cmp(*this, o) != 0; }
  bool operator<(const PairGraph& o) const { return cmp(*this, o) < 0; }

  // "12,23"-style label; weight-k edges are repeated k times (single-symbol
  // graphs only). Multi-symbol weights render as "12(2a+b)".
  std::string label() const;
  bool is_empty() const { return n == 0; }
};

inline constexpr int kMaxVertices = 10;

// Canonical representative of a raw edge list (self-loops must already be
// removed; parallel edges are combined; isolated vertices dropped).
PairGraph canonicalize(int n, std::vector<PairGraph::Edge> edges, bool marked,
                       int nparams);

// Parse a "12,23,45"-style label (vertex digits 1..9) with unit weights.
PairGraph parse_pair_graph(const std::string& label, bool marked = false,
                           int nparams = 1);
PairGraph empty_graph(bool marked = false, int nparams = 1);

// Identify vertices k and l (1-based), add parallel weights, delete the
// self-loop, drop isolated vertices, canonicalize.
PairGraph merge(const PairGraph& g, int k, int l);

// Disjoint union (b relabeled above a), canonicalized.
PairGraph multiply_disjoint(const PairGraph& a, const PairGraph& b);

// Weight-symbol interpretation: polynomial value of each symbol.
struct BasisContext {
  std::vector<MultiPolynomial> params;
  static BasisContext standard();  // {lambda}
  static BasisContext single(const MultiPolynomial& p);
  static BasisContext pair(const MultiPolynomial& p0, const MultiPolynomial& p1);
};

struct GeneratorRow {
  RationalFunction diag;               // -(total weight + [marked] theta n + n(n-1)/2)
  std::map<PairGraph, long> targets;   // merge targets with multiplicities
};

GeneratorRow generator_row(const PairGraph& g, const BasisContext& ctx);

using LinearCombination = std::map<PairGraph, RationalFunction>;

// Full generator action including the diagonal term.
LinearCombination apply_generator(const PairGraph& g, const BasisContext& ctx);

// Smallest generator-closed superset of seeds, sorted by (vertex count,
// canonical rank).
std::vector<PairGraph> closure(const std::vector<PairGraph>& seeds);

struct GeneratorMatrix {
  std::vector<PairGraph> basis;
  std::map<std::pair<int, int>, RationalFunction> entries;  // (row, col)
  int index_of(const PairGraph& g) const;
};

GeneratorMatrix to_matrix(const std::vector<PairGraph>& basis,
                          const BasisContext& ctx);

}  // namespace treelab
