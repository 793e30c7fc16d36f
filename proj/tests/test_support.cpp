#include "oracles.hpp"

#include "bjlevel/support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace bjlevel;

namespace {

std::vector<Functional> sorted(std::vector<Functional> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Functional> negated(std::vector<Functional> v) {
  for (auto& f : v) f = -f;
  return sorted(v);
}

// Points with repeated or vanishing coordinates land on low faces, where J(x)
// has more than one vertex.
Vector face_biased(SampleStream& rng, std::size_t n) {
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(-2, 2);
  if (x.is_zero()) x[0] = 1;
  return x;
}

}  // namespace

TEST_CASE("support set examples") {
  const Space li = Space::lp(3, LpExponent::infinity());
  const Space l1 = Space::lp(3, LpExponent(1));
  CHECK(support_set(li, {1, Rational(1, 2), 0}).vertices == std::vector<Functional>{{1, 0, 0}});
  CHECK(sorted(support_set(li, {1, 1, 0}).vertices) == std::vector<Functional>{{0, 1, 0}, {1, 0, 0}});
  CHECK(is_smooth(li, {1, Rational(1, 2), 0}));
  CHECK_FALSE(is_smooth(li, {1, 1, 0}));
  CHECK(support_set(l1, {1, 0, 0}).size() == 4);
  CHECK(is_smooth(l1, {1, -2, 3}));
  CHECK_THROWS_AS(support_set(l1, {0, 0, 0}), Error);
  CHECK(is_supporting(l1, {1, 0, 0}, {1, -1, 1}));
  CHECK_FALSE(is_supporting(l1, {1, 0, 0}, {1, 2, 0}));
}

TEST_CASE("support sets on the float path") {
  const Space l2 = Space::lp(2, LpExponent(2));
  const auto s = support_set(l2, {3, 4});
  REQUIRE(s.float_vertices.size() == 1);
  CHECK(s.float_vertices[0][0] == doctest::Approx(0.6));
  CHECK(s.float_vertices[0][1] == doctest::Approx(0.8));
  const Space l3 = Space::lp(2, LpExponent(3));
  const auto t = support_set(l3, {1, -1});
  const double c = 1 / std::pow(2.0, 2.0 / 3.0);
  CHECK(t.float_vertices[0][0] == doctest::Approx(c));
  CHECK(t.float_vertices[0][1] == doctest::Approx(-c));
  CHECK(is_smooth(l3, {0, 1}));
}

TEST_CASE("support sets agree with the closed-form oracle") {
  for (auto shape : {ref::Shape::L1, ref::Shape::Linf, ref::Shape::Hexagon}) {
    const std::size_t n = shape == ref::Shape::Hexagon ? 2 : 3;
    const Space s = ref::make_space(shape, n);
    SampleStream rng(21);
    for (int i = 0; i < 300; ++i) {
      const Vector x = i % 2 ? rng.vector(n) : face_biased(rng, n);
      CAPTURE(format_coords(x));
      CHECK(sorted(support_set(s, x).vertices) == ref::support(shape, x));
    }
  }
}

TEST_CASE("dual-norm bound on supporting functionals") {
  for (auto shape : {ref::Shape::L1, ref::Shape::Linf, ref::Shape::Hexagon}) {
    const std::size_t n = shape == ref::Shape::Hexagon ? 2 : 3;
    const Space s = ref::make_space(shape, n);
    SampleStream rng(22);
    for (int i = 0; i < 20; ++i) {
      const Vector x = face_biased(rng, n);
      for (const auto& f : support_set(s, x).vertices) {
        for (int k = 0; k < 100; ++k) {
          const Vector y = rng.vector(n, 9, 4, false);
          CHECK(abs(apply(f, y)) <= exact_norm(s, y));
        }
      }
    }
  }
  const Space l3 = Space::lp(3, LpExponent(3));
  SampleStream rng(23);
  for (int i = 0; i < 20; ++i) {
    const auto f = support_set(l3, rng.vector(3)).float_vertices.front();
    for (int k = 0; k < 100; ++k) {
      const auto y = to_real(rng.vector(3));
      CHECK(std::fabs(pair_real(f, y)) <= float_norm(l3, y) * (1 + 1e-9));
    }
  }
}

TEST_CASE("support sets are positively homogeneous and odd") {
  for (auto shape : {ref::Shape::L1, ref::Shape::Linf, ref::Shape::Hexagon}) {
    const std::size_t n = shape == ref::Shape::Hexagon ? 2 : 3;
    const Space s = ref::make_space(shape, n);
    SampleStream rng(24);
    for (int i = 0; i < 100; ++i) {
      const Vector x = face_biased(rng, n);
      const Rational a = abs(rng.rational(7, 5)) + Rational(1, 3);
      const auto base = sorted(support_set(s, x).vertices);
      CHECK(sorted(support_set(s, a * x).vertices) == base);
      CHECK(sorted(support_set(s, -x).vertices) == negated(base));
    }
  }
}

TEST_CASE("smooth points are exactly relative interior points of facets") {
  for (auto shape : {ref::Shape::L1, ref::Shape::Linf, ref::Shape::Hexagon}) {
    const std::size_t n = shape == ref::Shape::Hexagon ? 2 : 3;
    const Space s = ref::make_space(shape, n);
    SampleStream rng(25);
    for (int i = 0; i < 200; ++i) {
      Vector x = i % 2 ? rng.vector(n) : face_biased(rng, n);
      x /= exact_norm(s, x);
      const Face face = minimal_face(s, x);
      CHECK(is_smooth(s, x) == (face.dim == static_cast<int>(n) - 1));
    }
  }
}
