#include "oracles.hpp"

#include "bjlevel/lp.hpp"
#include "bjlevel/operator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace bjlevel;

namespace {

std::vector<Functional> sorted(std::vector<Functional> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Vector> sorted(std::vector<Vector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e-2") == Rational(-3, 200));
  CHECK(parse_rational("010") == 10);
  CHECK(to_string(Rational(-6, 4)) == "-3/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK(parse_vector("1, 1/2 ,0") == Vector{1, Rational(1, 2), 0});
}

TEST_CASE("linear algebra basics") {
  const Matrix m = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  CHECK(rank(m) == 2);
  const auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK((m * ns[0]).is_zero());
  CHECK(solve(Matrix::from_rows({{2, 0}, {0, 4}}), Vector{1, 1}) == Vector{Rational(1, 2), Rational(1, 4)});
  CHECK_FALSE(solve(m, Vector{1, 1, 1}).has_value());
  const std::vector<Vector> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  CHECK(affine_dimension(pts) == 2);
  CHECK_THROWS_AS(Vector({1, 2}) + Vector({1, 2, 3}), Error);
}

TEST_CASE("exact simplex") {
  SUBCASE("bounded optimum") {
    lp::Problem p;
    const auto x = p.add_variable();
    const auto y = p.add_variable();
    p.add_constraint({{x, 1}, {y, 1}}, lp::Relation::LessEqual, 4);
    p.add_constraint({{x, 1}, {y, 3}}, lp::Relation::LessEqual, 6);
    p.maximize({{x, 3}, {y, 5}});
    const auto s = p.solve();
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.objective == 14);
    CHECK(s.values[x] == 3);
    CHECK(s.values[y] == 1);
  }
  SUBCASE("infeasible") {
    lp::Problem p;
    const auto x = p.add_variable();
    p.add_constraint({{x, 1}}, lp::Relation::GreaterEqual, 2);
    p.add_constraint({{x, 1}}, lp::Relation::LessEqual, 1);
    CHECK(p.solve().status == lp::Status::Infeasible);
  }
  SUBCASE("unbounded with a free variable") {
    lp::Problem p;
    const auto x = p.add_variable(true);
    p.add_constraint({{x, 1}}, lp::Relation::LessEqual, 1);
    p.minimize({{x, 1}});
    CHECK(p.solve().status == lp::Status::Unbounded);
  }
  SUBCASE("degenerate equality system") {
    lp::Problem p;
    const auto v = p.add_variables(3);
    p.add_constraint({{v, 1}, {v + 1, 1}, {v + 2, 1}}, lp::Relation::Equal, 1);
    p.add_constraint({{v, 1}, {v + 1, -1}}, lp::Relation::Equal, 0);
    p.add_constraint({{v, 2}, {v + 1, 2}, {v + 2, 2}}, lp::Relation::Equal, 2);
    p.minimize({{v + 2, 1}});
    const auto s = p.solve();
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.objective == 0);
    CHECK(s.values[v] == Rational(1, 2));
  }
}

TEST_CASE("norm examples") {
  const Space l1 = Space::lp(3, LpExponent(1));
  const Space li = Space::lp(3, LpExponent::infinity());
  const Space l2 = Space::lp(3, LpExponent(2));
  const Space l3 = Space::lp(3, LpExponent(3));
  CHECK(exact_norm(l1, {1, Rational(-1, 2), 0}) == Rational(3, 2));
  CHECK(exact_norm(li, {1, Rational(-1, 2), 0}) == 1);
  const auto n2 = norm(l2, {3, 4, 0});
  CHECK(n2.mode == ArithmeticMode::Float);
  REQUIRE(n2.exact_square.has_value());
  CHECK(*n2.exact_square == 25);
  CHECK(n2.value == doctest::Approx(5));
  CHECK(float_norm(l3, std::vector<double>{1, 1, 1}) == doctest::Approx(std::cbrt(3.0)));
  CHECK_THROWS_AS(exact_norm(l2, {1, 0, 0}), Error);
  CHECK_THROWS_AS(exact_norm(l1, {1, 0}), Error);
  const Space hex = ref::make_space(ref::Shape::Hexagon, 2);
  CHECK(exact_norm(hex, {1, 1}) == 1);
  CHECK(exact_norm(hex, {1, -1}) == 2);
}

TEST_CASE("dual spaces and adjoints") {
  const Space l1 = Space::lp(3, LpExponent(1));
  const Space li = Space::lp(3, LpExponent::infinity());
  CHECK(dual_space(l1) == li);
  CHECK(dual_space(li) == l1);
  CHECK(dual_space(Space::lp(3, LpExponent(3))).exponent() == LpExponent(Rational(3, 2)));
  const Operator t(Matrix::from_rows({{1, 2, 0}, {0, 1, 0}, {0, 0, 3}}), li);
  const Operator a = adjoint(t);
  CHECK(a.matrix() == t.matrix().transpose());
  CHECK(a.domain() == l1);
  const Vector x{1, -1, 2};
  const Functional g{2, 1, -1};
  CHECK(apply(g, t(x)) == apply(t.pullback(g), x));
}

TEST_CASE("polyhedral construction validates its input") {
  CHECK_THROWS_AS(Space::polyhedral({{1, 0}, {0, 1}, {-1, 0}}), Error);
  CHECK_THROWS_AS(Space::polyhedral({{1, 0}, {-1, 0}}), Error);
  CHECK_THROWS_AS(Space::polyhedral({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {Rational(1, 4), Rational(1, 4)},
                                     {Rational(-1, 4), Rational(-1, 4)}}),
                  Error);
}

TEST_CASE("dual ball vertices match closed forms") {
  for (auto shape : {ref::Shape::L1, ref::Shape::Linf, ref::Shape::Hexagon}) {
    for (std::size_t n : {2u, 3u, 4u}) {
      if (shape == ref::Shape::Hexagon && n != 2) continue;
      CAPTURE(ref::shape_name(shape));
      CAPTURE(n);
      const Space s = ref::make_space(shape, n);
      CHECK(sorted(s.dual_vertices()) == ref::dual_vertices(shape, n));
      const Space general = Space::polyhedral(s.ball_vertices());
      CHECK(sorted(general.dual_vertices()) == ref::dual_vertices(shape, n));
    }
  }
}

TEST_CASE("polar duality is an involution") {
  std::vector<Space> spaces{ref::make_space(ref::Shape::Hexagon, 2), Space::lp(3, LpExponent(1)),
                            Space::lp(3, LpExponent::infinity()),
                            Space::polyhedral({{2, 0, 0}, {-2, 0, 0}, {0, 1, 0}, {0, -1, 0}, {1, 1, 1}, {-1, -1, -1}})};
  for (const auto& s : spaces) {
    CAPTURE(s.describe());
    const Space p = Space::polyhedral(s.ball_vertices());
    const Space back = dual_space(dual_space(p));
    CHECK(sorted(back.ball_vertices()) == sorted(s.ball_vertices()));
  }
}

TEST_CASE("norm axioms on random rational vectors") {
  for (auto shape : {ref::Shape::L1, ref::Shape::Linf, ref::Shape::Hexagon}) {
    const std::size_t n = shape == ref::Shape::Hexagon ? 2 : 3;
    const Space s = ref::make_space(shape, n);
    SampleStream rng(11);
    for (int i = 0; i < 1000; ++i) {
      const Vector x = rng.vector(n, 9, 4, false);
      const Vector y = rng.vector(n, 9, 4, false);
      const Rational a = rng.rational(5, 3);
      const Rational nx = exact_norm(s, x);
      REQUIRE(nx == ref::norm(shape, x));
      CHECK(exact_norm(s, x + y) <= nx + exact_norm(s, y));
      CHECK(exact_norm(s, a * x) == abs(a) * nx);
    }
  }
  for (int p : {2, 3}) {
    const Space s = Space::lp(3, LpExponent(p));
    SampleStream rng(12);
    for (int i = 0; i < 1000; ++i) {
      const auto x = to_real(rng.vector(3));
      const auto y = to_real(rng.vector(3));
      std::vector<double> sum(3);
      for (int k = 0; k < 3; ++k) sum[k] = x[k] + y[k];
      const double nx = float_norm(s, x);
      CHECK(float_norm(s, sum) <= (nx + float_norm(s, y)) * (1 + 1e-12));
      std::vector<double> scaled(3);
      for (int k = 0; k < 3; ++k) scaled[k] = -2.5 * x[k];
      CHECK(float_norm(s, scaled) == doctest::Approx(2.5 * nx).epsilon(1e-12));
    }
  }
}

TEST_CASE("every dual vertex is bounded by the norm and one attains it") {
  for (auto shape : {ref::Shape::L1, ref::Shape::Linf, ref::Shape::Hexagon}) {
    const std::size_t n = shape == ref::Shape::Hexagon ? 2 : 3;
    const Space s = ref::make_space(shape, n);
    const Space dual = dual_space(s);
    const auto& fs = dual.ball_vertices();
    SampleStream rng(13);
    for (int i = 0; i < 300; ++i) {
      const Vector x = rng.vector(n);
      const Rational nx = exact_norm(s, x);
      bool attained = false;
      for (const auto& f : fs) {
        const Rational v = apply(as_functional(f), x);
        CHECK(v <= nx);
        attained = attained || v == nx;
      }
      CHECK(attained);
    }
  }
}

TEST_CASE("dual norm of a functional") {
  const Space l1 = Space::lp(3, LpExponent(1));
  CHECK(exact_dual_norm(l1, {1, -3, 2}) == 3);
  CHECK(exact_dual_norm(Space::lp(3, LpExponent::infinity()), {1, -3, 2}) == 6);
  CHECK(float_dual_norm(Space::lp(2, LpExponent(2)), std::vector<double>{3, 4}) == doctest::Approx(5));
}
