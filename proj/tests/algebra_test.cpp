#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "treelab/exp_polynomial.hpp"
#include "treelab/rational_function.hpp"

using namespace treelab;

namespace {

MultiPolynomial lam() { return MultiPolynomial::variable(Symbol::Lambda); }
MultiPolynomial cst(long c) { return MultiPolynomial(c); }

RationalFunction rf(const MultiPolynomial& n, const MultiPolynomial& d) {
  return RationalFunction(n, d);
}

std::array<BigRational, kSymbolCount> bind_lambda(const BigRational& v) {
  return {v, rat(0), rat(0), rat(0)};
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-3, -6) == rat(1, 2));
  CHECK(to_string(rat(7, 3)) == "7/3");
}

TEST_CASE("polynomial arithmetic and ordering") {
  auto p = lam() * lam() + lam().scaled(rat(2)) + cst(1);  // (l+1)^2
  auto q = (lam() + cst(1)) * (lam() + cst(1));
  CHECK(p == q);
  CHECK(p.total_degree() == 2);
  CHECK(p.degree_in(Symbol::Lambda) == 2);
  CHECK(p.degree_in(Symbol::Theta) == 0);
  CHECK((p - q).is_zero());
  CHECK(p.str() == "lambda^2+2*lambda+1");

  auto th = MultiPolynomial::variable(Symbol::Theta);
  // graded lex: t > s > theta > lambda at equal total degree
  auto mix = lam() * th + lam() * lam();
  CHECK(mix.leading_monomial() == Monomial{1, 1, 0, 0});
}

TEST_CASE("polynomial exact division") {
  auto p = (lam() + cst(1)) * (lam() + cst(3)) * (lam() - cst(2));
  auto d = (lam() + cst(3));
  auto q = p.divided_by(d);
  REQUIRE(q.has_value());
  CHECK(*q == (lam() + cst(1)) * (lam() - cst(2)));
  CHECK(!p.divided_by(lam() + cst(5)).has_value());
}

TEST_CASE("gcd cancellation") {
  // (l^2-1)/(l+1) -> l-1
  auto f = rf(lam() * lam() - cst(1), lam() + cst(1));
  CHECK(f == RationalFunction(lam() - cst(1)));
  CHECK(f.str() == "lambda-1");
}

TEST_CASE("multivariate gcd") {
  auto th = MultiPolynomial::variable(Symbol::Theta);
  auto a = (lam() + th) * (lam() + cst(1)) * (lam() + th);
  auto b = (lam() + th) * (th + cst(2));
  auto g = poly_gcd(a, b);
  CHECK(g.divided_by(lam() + th).has_value());
  CHECK((lam() + th).divided_by(g).has_value());
}

TEST_CASE("rf arithmetic examples") {
  auto one_over = rf(cst(1), lam() + cst(1));
  auto lam_over = rf(lam(), lam() + cst(1));
  CHECK(one_over + lam_over == RationalFunction(1L));

  // 2l^2/((l+3)(2l+1)(2l+3)) at l=1 -> 1/30
  auto var2 = rf(lam().scaled(rat(2)) * lam(),
                 (lam() + cst(3)) * (lam().scaled(rat(2)) + cst(1)) *
                     (lam().scaled(rat(2)) + cst(3)));
  CHECK(var2.eval(bind_lambda(rat(1))) == rat(1, 30));
}

TEST_CASE("rf eval examples") {
  auto one_over = rf(cst(1), lam() + cst(1));
  CHECK(one_over.eval(bind_lambda(rat(0))) == rat(1));
  CHECK(one_over.eval(bind_lambda(rat(1))) == rat(1, 2));
  CHECK_THROWS(one_over.eval(bind_lambda(rat(-1))));

  // 4stl^3/(((s+t)l+1)((s+t)l+3)((s+t)l+6)) at s=t=1, l=1 -> 1/30
  auto s = MultiPolynomial::variable(Symbol::S);
  auto t = MultiPolynomial::variable(Symbol::T);
  auto st = s + t;
  auto f = rf(s * t * lam().pow(3).scaled(rat(4)),
              (st * lam() + cst(1)) * (st * lam() + cst(3)) *
                  (st * lam() + cst(6)));
  CHECK(f.eval({rat(1), rat(0), rat(1), rat(1)}) == rat(1, 30));
}

TEST_CASE("rf field axioms on random instances") {
  std::mt19937 rng(12345);
  auto pool = std::vector<RationalFunction>{};
  for (int i = 0; i < 8; ++i) {
    auto p = lam().scaled(rat((long)(rng() % 5) - 2)) + cst((long)(rng() % 7));
    auto q = lam() * lam() + lam().scaled(rat((long)(rng() % 4))) +
             cst((long)(rng() % 5) + 1);
    pool.push_back(rf(p, q));
  }
  for (int it = 0; it < 50; ++it) {
    auto a = pool[rng() % pool.size()];
    auto b = pool[rng() % pool.size()];
    auto c = pool[rng() % pool.size()];
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == RationalFunction());
    if (!a.is_zero()) CHECK(a / a == RationalFunction(1L));
  }
}

TEST_CASE("rf eval commutes with arithmetic") {
  std::mt19937 rng(99);
  auto a = rf(lam() + cst(2), lam() + cst(1));
  auto b = rf(lam() * lam() - cst(4), lam() + cst(3));
  for (int i = 0; i < 20; ++i) {
    auto x = bind_lambda(rat((long)(rng() % 40) + 1, (long)(rng() % 7) + 1));
    CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
    CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
    CHECK((a - b).eval(x) == a.eval(x) - b.eval(x));
  }
}

TEST_CASE("ep_integrate closed forms") {
  RationalFunction mu(lam() + cst(2), cst(1));  // arbitrary positive rate
  auto one = RationalFunction(1L);

  // integral of exp(-mu s) -> (1-exp(-mu t))/mu
  auto f = ExpPolynomial::term(one, 0, mu);
  auto g = f.integrate();
  auto expect = ExpPolynomial::constant(one / mu) +
                ExpPolynomial::term(-(one / mu), 0, mu);
  CHECK(g == expect);

  // integral of 1 -> t
  auto h = ExpPolynomial::constant(one).integrate();
  CHECK(h == ExpPolynomial::term(one, 1, RationalFunction(0L)));

  // integral of s exp(-mu s) -> (1 - exp(-mu t)(1+mu t))/mu^2
  auto k = ExpPolynomial::term(one, 1, mu).integrate();
  auto mu2 = mu * mu;
  auto expect2 = ExpPolynomial::constant(one / mu2) +
                 ExpPolynomial::term(-(one / mu2), 0, mu) +
                 ExpPolynomial::term(-(one / mu), 1, mu);
  CHECK(k == expect2);
}

TEST_CASE("ep integrate then differentiate is identity") {
  RationalFunction mu1(lam() + cst(1), cst(1));
  RationalFunction mu2(lam().scaled(rat(2)) + cst(6), cst(1));
  auto one = RationalFunction(1L);
  auto f = ExpPolynomial::term(RationalFunction(3L), 0, mu1) +
           ExpPolynomial::term(one, 2, mu2) +
           ExpPolynomial::constant(RationalFunction(rat(1, 2))) +
           ExpPolynomial::term(one, 1, RationalFunction(0L));
  CHECK(f.integrate().differentiated() == f);
}

TEST_CASE("ep convolution and coincident rates") {
  RationalFunction mu(lam() + cst(1), cst(1));
  auto one = RationalFunction(1L);
  // conv of exp(-mu s) with itself: t exp(-mu t)
  auto f = ExpPolynomial::term(one, 0, mu);
  CHECK(f.convolved(mu) == ExpPolynomial::term(one, 1, mu));
  // conv with rate 0: (1 - exp(-mu t))/mu
  auto g = f.convolved(RationalFunction(0L));
  CHECK(g == ExpPolynomial::constant(one / mu) +
                 ExpPolynomial::term(-(one / mu), 0, mu));
  // numeric sanity at lambda=1, t=0.3: closed form for conv with distinct rate
  RationalFunction nu(lam() + cst(4), cst(1));
  auto h = f.convolved(nu);
  auto b = bind_lambda(rat(1));
  double t = 0.3;
  double num = (std::exp(-2 * t) - std::exp(-5 * t)) / 3.0;
  CHECK(h.eval(b, t) == doctest::Approx(num).epsilon(1e-12));
}
