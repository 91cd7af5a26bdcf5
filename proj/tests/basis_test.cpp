#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "treelab/gen_table.hpp"
#include "treelab/pair_graph.hpp"

using namespace treelab;

namespace {
PairGraph pg(const std::string& s) { return parse_pair_graph(s); }

MultiPolynomial lam() { return MultiPolynomial::variable(Symbol::Lambda); }
MultiPolynomial th() { return MultiPolynomial::variable(Symbol::Theta); }
MultiPolynomial cst(long c) { return MultiPolynomial(c); }
}  // namespace

TEST_CASE("canonicalize relabels and identifies symmetric forms") {
  CHECK(pg("23") == pg("12"));
  CHECK(pg("12,34") == pg("13,24"));
  CHECK(pg("12,23") != pg("12,12"));
  CHECK(pg("12,12").edges.size() == 1);
  CHECK(pg("12,12").edges[0].w[0] == 2);
  // idempotent
  auto g = pg("12,23,45");
  CHECK(canonicalize(g.n, g.edges, g.marked, g.nparams) == g);
  // star vs path with four vertices
  CHECK(pg("12,23,24") != pg("12,23,34"));
}

TEST_CASE("merge examples") {
  CHECK(merge(pg("12"), 1, 2) == empty_graph());
  // The canonical form of the three-vertex path puts the center at vertex 1
  // (edges 12,13); merging the two leaves doubles the edge, merging the
  // center with a leaf collapses one edge.
  auto path = pg("12,23");
  REQUIRE(path.edges == std::vector<PairGraph::Edge>{{0, 1, {1}}, {0, 2, {1}}});
  CHECK(merge(path, 2, 3) == pg("12,12"));
  CHECK(merge(path, 1, 2) == pg("12"));
  CHECK(merge(pg("12,34"), 2, 3) == pg("12,23"));
  CHECK_THROWS(merge(pg("12"), 1, 1));
  CHECK_THROWS(merge(pg("12"), 0, 2));
}

TEST_CASE("multiply_disjoint") {
  CHECK(multiply_disjoint(pg("12"), empty_graph()) == pg("12"));
  CHECK(multiply_disjoint(pg("12"), pg("12")) == pg("12,34"));
  CHECK(multiply_disjoint(pg("12"), pg("12,34")) == pg("12,34,56"));
}

TEST_CASE("apply_generator basic rows") {
  BasisContext ctx = BasisContext::standard();

  CHECK(apply_generator(empty_graph(), ctx).empty());

  // 12,34 row: -(2l+6) self + 2x 12 + 4x 12,23
  auto row = generator_row(pg("12,34"), ctx);
  CHECK(row.diag ==
        -RationalFunction(lam().scaled(rat(2)) + cst(6)));
  CHECK(row.targets.size() == 2);
  CHECK(row.targets.at(pg("12")) == 2);
  CHECK(row.targets.at(pg("12,23")) == 4);

  // 12,34,56 row: -(3l+15) self + 3x 12,34 + 12x 12,23,45
  auto row3 = generator_row(pg("12,34,56"), ctx);
  CHECK(row3.diag == -RationalFunction(lam().scaled(rat(3)) + cst(15)));
  CHECK(row3.targets.at(pg("12,34")) == 3);
  CHECK(row3.targets.at(pg("12,23,45")) == 12);
}

TEST_CASE("marked generator rows") {
  BasisContext ctx = BasisContext::standard();
  auto g = parse_pair_graph("12", true);
  auto row = generator_row(g, ctx);
  CHECK(row.diag ==
        -RationalFunction(lam() + th().scaled(rat(2)) + cst(1)));
  CHECK(row.targets.size() == 1);
  CHECK(row.targets.begin()->first == empty_graph(true));

  // derived marked chain row: 2x 12 + 1x 12,12 (not the published 4x 12)
  auto chain = parse_pair_graph("12,23", true);
  auto crow = generator_row(chain, ctx);
  CHECK(crow.diag ==
        -RationalFunction(lam().scaled(rat(2)) + th().scaled(rat(3)) + cst(3)));
  CHECK(crow.targets.at(parse_pair_graph("12", true)) == 2);
  CHECK(crow.targets.at(parse_pair_graph("12,12", true)) == 1);
}

TEST_CASE("two-parameter rows keep weight symbols formal") {
  auto ctx = BasisContext::pair(MultiPolynomial::variable(Symbol::S),
                                MultiPolynomial::variable(Symbol::T));
  // edges 12 (weight a) and 34 (weight b)
  std::vector<PairGraph::Edge> edges = {{0, 1, {1, 0}}, {2, 3, {0, 1}}};
  auto g = canonicalize(4, edges, false, 2);
  auto row = generator_row(g, ctx);
  CHECK(row.diag == -RationalFunction(MultiPolynomial::variable(Symbol::S) +
                                      MultiPolynomial::variable(Symbol::T) +
                                      cst(6)));
  // 4 merges to the shared-vertex graph, 1 to each single edge
  REQUIRE(row.targets.size() == 3);
  long total = 0;
  for (const auto& [h, c] : row.targets) total += c;
  CHECK(total == 6);
  // the shared-vertex target has two edges with distinct symbols
  std::vector<PairGraph::Edge> chain = {{0, 1, {1, 0}}, {1, 2, {0, 1}}};
  auto chain_g = canonicalize(3, chain, false, 2);
  CHECK(row.targets.at(chain_g) == 4);
  // canonical form keeps the shared vertex at 1; merging the two leaves
  // adds the weights componentwise
  REQUIRE(chain_g.edges ==
          std::vector<PairGraph::Edge>{{0, 1, {0, 1}}, {0, 2, {1, 0}}});
  auto fused = merge(chain_g, 2, 3);
  CHECK(fused.edges.size() == 1);
  CHECK(fused.edges[0].w == std::vector<int>{1, 1});
}

TEST_CASE("closure sizes") {
  CHECK(closure({pg("12")}).size() == 2);
  CHECK(closure({pg("12,34")}).size() == 5);
  CHECK(closure({pg("12,34,56,78")}).size() == 36);
}

TEST_CASE("row-sum, growth and mutation laws over the 36 basis") {
  BasisContext ctx = BasisContext::standard();
  for (bool marked : {false, true}) {
    auto basis = closure({parse_pair_graph("12,34,56,78", marked)});
    REQUIRE(basis.size() == 36);
    for (const auto& g : basis) {
      auto row = generator_row(g, ctx);
      long total = 0;
      for (const auto& [h, c] : row.targets) {
        CHECK(c > 0);
        CHECK(h.n < g.n);  // strict triangularity
        total += c;
      }
      CHECK(total == (long)g.n * (g.n - 1) / 2);
      // diagonal structure: -(weight*lambda + [marked] n*theta + pairs)
      long weight = 0;
      for (const auto& e : g.edges) weight += e.w[0];
      auto expect = -RationalFunction(
          lam().scaled(rat(weight)) +
          (marked ? th().scaled(rat(g.n)) : MultiPolynomial()) +
          cst((long)g.n * (g.n - 1) / 2));
      CHECK(row.diag == expect);
    }
  }
}

TEST_CASE("generator output independent of labeling") {
  BasisContext ctx = BasisContext::standard();
  // same graph entered with different labelings
  auto a = pg("12,23,45");
  auto b = pg("45,23,12");
  auto c = pg("56,13,23");  // path 1-3-2 plus disjoint 5-6 -> same shape
  CHECK(a == b);
  CHECK(a == c);
  CHECK(generator_row(a, ctx).targets == generator_row(c, ctx).targets);
}

TEST_CASE("to_matrix") {
  BasisContext ctx = BasisContext::standard();
  auto basis2 = closure({pg("12")});
  auto m = to_matrix(basis2, ctx);
  REQUIRE(m.basis.size() == 2);
  CHECK(m.entries.count({0, 0}) == 0);
  CHECK(m.entries.at({1, 0}) == RationalFunction(1L));
  CHECK(m.entries.at({1, 1}) == -RationalFunction(lam() + cst(1)));

  // marked 5-basis diagonal
  auto basis5 = closure({parse_pair_graph("12,34", true)});
  auto m5 = to_matrix(basis5, ctx);
  REQUIRE(m5.basis.size() == 5);
  std::vector<MultiPolynomial> expect = {
      MultiPolynomial(),
      lam() + th().scaled(rat(2)) + cst(1),
      lam().scaled(rat(2)) + th().scaled(rat(2)) + cst(1),
      lam().scaled(rat(2)) + th().scaled(rat(3)) + cst(3),
      lam().scaled(rat(2)) + th().scaled(rat(4)) + cst(6)};
  for (int i = 0; i < 5; ++i) {
    auto it = m5.entries.find({i, i});
    auto diag = it == m5.entries.end() ? RationalFunction() : it->second;
    CHECK(diag == -RationalFunction(expect[i]));
  }
  // triangularity with respect to vertex count
  for (const auto& [rc, v] : m5.entries) {
    if (rc.first != rc.second) CHECK(m5.basis[rc.second].n < m5.basis[rc.first].n);
  }

  CHECK_THROWS(to_matrix({pg("12,34")}, ctx));  // not closed
}

TEST_CASE("reference table matches derived transitions away from the two "
          "defective reference rows") {
  auto checks = check_reference_table();
  REQUIRE(checks.size() == 36);
  for (const auto& c : checks) {
    INFO("item ", c.item, " ", c.label, " derived=", c.derived,
         " reference=", c.reference);
    if (c.item == 20 || c.item == 24) {
      // Reference rows 20 and 24 are impossible under the merge rule (see
      // gen_table notes); the derived rows are asserted exactly instead.
      CHECK(!c.match);
    } else {
      CHECK(c.match);
    }
  }
  // Item 20 (four-cycle): merging opposite vertices leaves the two other
  // vertices non-adjacent, so the result is two doubled edges sharing the
  // merged vertex -- never a triangle with a doubled edge.
  BasisContext ctx = BasisContext::standard();
  auto cyc = generator_row(pg("12,23,34,14"), ctx);
  CHECK(cyc.targets.size() == 2);
  CHECK(cyc.targets.at(pg("12,13,23")) == 4);
  CHECK(cyc.targets.at(pg("12,12,23,23")) == 2);
  // Item 24 (five-vertex path): merging the two vertices adjacent to the
  // center gives a star with one doubled ray, not a doubled path edge.
  auto path5 = generator_row(pg("12,23,34,45"), ctx);
  CHECK(path5.targets.size() == 5);
  CHECK(path5.targets.at(pg("12,23,34")) == 4);
  CHECK(path5.targets.at(pg("12,12,23,34")) == 2);
  CHECK(path5.targets.at(pg("12,12,23,24")) == 1);
  CHECK(path5.targets.at(pg("12,13,23,34")) == 2);
  CHECK(path5.targets.at(pg("12,23,34,14")) == 1);
}

TEST_CASE("vertex bound") {
  auto g = pg("12,34,56,78");
  CHECK_THROWS(multiply_disjoint(g, g));  // 16 vertices
  CHECK(multiply_disjoint(pg("12"), g).n == 10);
}
