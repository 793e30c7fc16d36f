#include "oracles.hpp"

#include "bjlevel/levelvec.hpp"
#include "bjlevel/orthogonality.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace bjlevel;

namespace {

Matrix diagonal(std::vector<Rational> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

struct Setting {
  ref::Shape shape;
  std::size_t n;
};

const std::vector<Setting> kSettings{
    {ref::Shape::L1, 3}, {ref::Shape::Linf, 3}, {ref::Shape::Linf, 2}, {ref::Shape::Hexagon, 2}};

// Random matrices, scaled signed permutations, diagonal maps and rank
// deficient products, in rotation.
Matrix operator_matrix(std::size_t n, std::size_t i, SampleStream& rng) {
  switch (i % 4) {
    case 0:
      return random_matrix(n, n, rng);
    case 1:
      return signed_permutation(n, rng).scaled(rng.uniform(1, 3));
    case 2: {
      std::vector<Rational> d(n);
      for (auto& v : d) v = rng.uniform(-3, 3);
      return diagonal(d);
    }
    default:
      return random_matrix(n, n - 1, rng, 3, 2) * random_matrix(n - 1, n, rng, 3, 2);
  }
}

// Unit vectors on faces of every dimension: a vertex, a face centroid, or a
// random interior point of a random face.
Vector face_point(const Space& s, const std::vector<Face>& lattice, SampleStream& rng) {
  const Face& f = lattice[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(lattice.size()) - 1))];
  const auto vs = face_vertices(s, f);
  std::vector<Rational> w(vs.size());
  const bool centroid = rng.uniform(0, 1) == 0;
  for (auto& wi : w) wi = centroid ? 1 : rng.uniform(1, 5);
  return weighted_mean<VectorTag>(vs, w);
}

Vector kernel_sample(const Functional& f, std::size_t n, SampleStream& rng) {
  const Vector z = rng.vector(n);
  const Vector fv = as_vector(f);
  return z - (ref::pair(f, z) / ref::pair(f, fv)) * fv;
}

void check_certificate(const Operator& t, ref::Shape shape, const Vector& x, const LevelCertificate& c) {
  const Vector tx = t(x);
  const Rational nx = ref::norm(shape, x);
  const Rational ntx = ref::norm(shape, tx);
  REQUIRE(c.level_number.has_value());
  CHECK(*c.level_number == (ntx * ntx) / (nx * nx));
  if (c.degenerate) {
    CHECK(tx.is_zero());
    return;
  }
  REQUIRE(c.f.has_value());
  REQUIRE(c.g.has_value());
  CHECK(ref::pair(*c.f, x) == nx);
  CHECK(ref::pair(*c.g, tx) == ntx);
  CHECK(exact_dual_norm(t.domain(), *c.f) == 1);
  CHECK(exact_dual_norm(t.codomain(), *c.g) == 1);
  CHECK(t.pullback(*c.g) == (ntx / nx) * *c.f);
}

}  // namespace

TEST_CASE("level vector examples") {
  const Space l1 = Space::lp(3, LpExponent(1));
  const Space li = Space::lp(3, LpExponent::infinity());
  const Operator t211(diagonal({2, 1, 1}), l1);
  const auto c = is_level_vector(t211, {1, 0, 0});
  REQUIRE(c.has_value());
  CHECK(*c->level_number == 4);
  check_certificate(t211, ref::Shape::L1, {1, 0, 0}, *c);

  const Operator shear(Matrix::from_rows({{3, -2, 0}, {1, 0, 0}, {0, 0, 1}}), li);
  CHECK_FALSE(is_level_vector(shear, {1, Rational(1, 2), 0}).has_value());
  CHECK_THROWS_AS(level_number(shear, {1, Rational(1, 2), 0}), Error);
  const auto s = is_level_vector(shear, {1, 1, 0});
  REQUIRE(s.has_value());
  CHECK(*s->f == Functional{1, 0, 0});
  CHECK(*s->g == Functional{0, 1, 0});
  CHECK(*s->level_number == 1);

  const Operator t21(diagonal({2, 1}), Space::lp(2, LpExponent::infinity()));
  CHECK(level_number(t21, {0, 1}) == 1);
  CHECK(level_number(t21, {1, 1}) == 4);

  const Operator proj(diagonal({1, 0, 0}), li);
  const auto d = is_level_vector(proj, {0, 1, 0});
  REQUIRE(d.has_value());
  CHECK(d->degenerate);
  CHECK(*d->level_number == 0);
  CHECK_THROWS_AS(is_level_vector(proj, {0, 0, 0}), Error);
}

TEST_CASE("level vectors on lp float paths") {
  const Space l2 = Space::lp(2, LpExponent(2));
  const Operator sym(Matrix::from_rows({{2, 1}, {1, 2}}), l2);
  const auto e = is_level_vector(sym, {1, 1});
  REQUIRE(e.has_value());
  REQUIRE(e->level_number.has_value());
  CHECK(*e->level_number == 9);
  CHECK_FALSE(is_level_vector(sym, {1, 0}).has_value());
  const Operator rot(Matrix::from_rows({{Rational(3, 5), Rational(-4, 5)}, {Rational(4, 5), Rational(3, 5)}}), l2);
  SampleStream rng(51);
  for (int i = 0; i < 50; ++i) {
    const auto r = is_level_vector(rot, rng.vector(2));
    REQUIRE(r.has_value());
    CHECK(*r->level_number == 1);
  }
  const Space l3 = Space::lp(2, LpExponent(3));
  const Operator d3(diagonal({2, 1}), l3);
  const auto a = is_level_vector(d3, {1, 0});
  REQUIRE(a.has_value());
  CHECK(a->level_value == doctest::Approx(4));
  CHECK_FALSE(is_level_vector(d3, {1, 1}).has_value());
  CHECK_THROWS_AS(is_level_vector(Operator(diagonal({1, 1}), l3, Space::lp(2, LpExponent(1))), {1, 0}), Error);
}

TEST_CASE("directional preservation examples") {
  const Space l1 = Space::lp(3, LpExponent(1));
  const Space li = Space::lp(3, LpExponent::infinity());
  const Operator t211(diagonal({2, 1, 1}), l1);
  CHECK(preserves_bj_directional(t211, {1, 0, 0}, {1, 0, 0}).holds);
  CHECK(preserves_bj_directional(Operator(diagonal({1, 1, 2}), li), {1, 0, 0}, {1, 0, 0}).holds);
  CHECK_THROWS_AS(preserves_bj_directional(t211, {1, 0, 0}, {0, 1, 0}), Error);
  const auto p = preserves_bj_at(t211, {1, 0, 0});
  CHECK_FALSE(p.holds);
  REQUIRE(p.counterexample.has_value());
  const Vector& y = p.counterexample->y;
  CHECK(ref::orthogonal(ref::Shape::L1, {1, 0, 0}, y));
  CHECK_FALSE(ref::orthogonal(ref::Shape::L1, {2, 0, 0}, t211(y)));
  CHECK(preserves_bj_at(Operator(diagonal({1, 2, 3}), li), {1, 0, 0}).holds);
}

TEST_CASE("certificates are sound and survive the sampling oracle") {
  for (const auto& [shape, n] : kSettings) {
    const Space s = ref::make_space(shape, n);
    const auto lattice = face_lattice(s);
    SampleStream rng(52);
    int found = 0;
    int cross_checked = 0;
    for (std::size_t i = 0; i < 120; ++i) {
      const Operator t(operator_matrix(n, i, rng), s);
      const Vector x = i % 3 == 0 ? rng.vector(n) : face_point(s, lattice, rng);
      const auto c = is_level_vector(t, x);
      if (!c) continue;
      ++found;
      CAPTURE(format_coords(x));
      check_certificate(t, shape, x, *c);
      if (c->degenerate || cross_checked >= 8) continue;
      ++cross_checked;
      const Vector tx = t(x);
      for (int k = 0; k < 200; ++k) {
        const Vector y = kernel_sample(*c->f, n, rng);
        const Vector ty = t(y);
        if (ty.is_zero()) continue;
        CHECK(ref::orthogonal(shape, tx, ty));
      }
    }
    CHECK(found > 20);
    CHECK(cross_checked == 8);
  }
}

TEST_CASE("preservation at a point implies a level vector there") {
  for (const auto& [shape, n] : kSettings) {
    const Space s = ref::make_space(shape, n);
    const auto lattice = face_lattice(s);
    SampleStream rng(53);
    int held = 0;
    int failed = 0;
    for (std::size_t i = 0; i < 200; ++i) {
      const Operator t(operator_matrix(n, i, rng), s);
      const Vector x = face_point(s, lattice, rng);
      const auto p = preserves_bj_at(t, x);
      CAPTURE(format_coords(x));
      if (p.holds) {
        ++held;
        CHECK(is_level_vector(t, x).has_value());
        CHECK(kernel_condition(t, x));
      } else {
        ++failed;
        REQUIRE(p.counterexample.has_value());
        const Vector& y = p.counterexample->y;
        CHECK(ref::orthogonal(shape, x, y));
        CHECK_FALSE(ref::orthogonal(shape, t(x), t(y)));
      }
    }
    CHECK(held > 20);
    CHECK(failed > 20);
  }
}

TEST_CASE("level vectors outside the kernel satisfy the kernel condition") {
  for (const auto& [shape, n] : kSettings) {
    const Space s = ref::make_space(shape, n);
    const auto lattice = face_lattice(s);
    SampleStream rng(54);
    for (std::size_t i = 3; i < 200; i += 4) {
      const Operator t(operator_matrix(n, i, rng), s);
      const Vector x = face_point(s, lattice, rng);
      if (is_level_vector(t, x)) CHECK(kernel_condition(t, x));
    }
  }
  const Space li = Space::lp(3, LpExponent::infinity());
  const Operator drop_last(diagonal({1, 1, 0}), li);
  CHECK(kernel_condition(drop_last, {1, 0, 0}));
  CHECK(kernel_condition(drop_last, {0, 0, 1}));
  const Operator drop_diag(Matrix::from_rows({{1, -1, 0}, {0, 0, 1}, {0, 0, 0}}), li);
  CHECK_FALSE(kernel_condition(drop_diag, {1, Rational(1, 2), 0}));
}

TEST_CASE("level vectors are homogeneous in x and quadratic in T") {
  for (const auto& [shape, n] : kSettings) {
    const Space s = ref::make_space(shape, n);
    const auto lattice = face_lattice(s);
    SampleStream rng(55);
    for (std::size_t i = 0; i < 60; ++i) {
      const Operator t(operator_matrix(n, i, rng), s);
      const Vector x = face_point(s, lattice, rng);
      Rational a = rng.rational(5, 3);
      if (a == 0) a = Rational(-3, 2);
      const auto base = is_level_vector(t, x);
      const auto scaled_x = is_level_vector(t, a * x);
      CHECK(base.has_value() == scaled_x.has_value());
      const auto scaled_t = is_level_vector(t.scaled(a), x);
      CHECK(base.has_value() == scaled_t.has_value());
      if (base && scaled_x && scaled_t) {
        CHECK(*scaled_x->level_number == *base->level_number);
        CHECK(*scaled_t->level_number == a * a * *base->level_number);
      }
    }
  }
}

TEST_CASE("face phenomena along enumerated faces") {
  for (const auto& [shape, n] : kSettings) {
    const Space s = ref::make_space(shape, n);
    SampleStream rng(56);
    for (std::size_t i = 0; i < 16; ++i) {
      const Operator t(operator_matrix(n, i, rng), s);
      const auto report = enumerate_level_numbers(t, 3, 100 + i);
      REQUIRE(report.bound.has_value());
      CHECK(Rational(report.values.size()) <= *report.bound);
      CHECK(std::is_sorted(report.values.begin(), report.values.end()));

      for (const auto& rec : report.per_face) {
        const auto vs = face_vertices(s, rec.face);
        std::vector<const PointRecord*> level;
        for (const auto& p : rec.points) {
          CHECK(is_relative_interior(s, p.point, rec.face));
          if (p.level_number) level.push_back(&p);
        }
        // Equal level numbers across the relative interior.
        for (const auto* p : level) CHECK(*p->level_number == *level.front()->level_number);
        // A nonzero level number forces T to be nonzero on the whole face.
        if (!level.empty() && *level.front()->level_number != 0) {
          for (const auto& v : vs) CHECK_FALSE(t(v).is_zero());
        }
        // Convex combinations of two interior level vectors stay level vectors.
        if (level.size() >= 2) {
          const Vector& a = level[0]->point;
          const Vector& b = level[1]->point;
          CHECK(is_level_vector(t, Rational(1, 2) * (a + b)).has_value());
          for (int k = 0; k < 10; ++k) {
            const Rational w = Rational(rng.uniform(1, 9), 10);
            CHECK(is_level_vector(t, w * a + (1 - w) * b).has_value());
          }
        }
        // Interior points where orthogonality is preserved share ||T.|| and
        // their convex combinations preserve it too.
        std::vector<Vector> preserving;
        for (const auto& p : rec.points) {
          if (preserves_bj_at(t, p.point).holds) preserving.push_back(p.point);
        }
        for (const auto& p : preserving) CHECK(ref::norm(shape, t(p)) == ref::norm(shape, t(preserving.front())));
        if (preserving.size() >= 2) {
          const Vector& a = preserving[0];
          const Vector& b = preserving[1];
          CHECK(preserves_bj_at(t, Rational(1, 2) * (a + b)).holds);
          for (int k = 0; k < 10; ++k) {
            const Rational w = Rational(rng.uniform(1, 9), 10);
            CHECK(preserves_bj_at(t, w * a + (1 - w) * b).holds);
          }
        }
        // Closedness restricted to a face, when ||T.|| is constant on its vertices.
        if (level.size() == rec.points.size()) {
          bool constant = true;
          for (const auto& v : vs) constant = constant && ref::norm(shape, t(v)) == ref::norm(shape, t(vs.front()));
          if (constant) {
            for (const auto& v : vs) CHECK(is_level_vector(t, v).has_value());
          }
        }
      }
    }
  }
}

TEST_CASE("interior level vectors of a face need not make its vertices level vectors") {
  const Space li = Space::lp(2, LpExponent::infinity());
  const Operator t(Matrix::from_rows({{3, Rational(-1, 2)}, {0, 1}}), li);
  const Face top = minimal_face(li, {0, 1});
  CHECK(top.dim == 1);
  CHECK(face_centroid(li, top) == Vector{0, 1});
  // (a, 1) is a level vector exactly for -1/6 <= a <= 1/2.
  for (int k = -19; k <= 19; ++k) {
    const Rational a(k, 20);
    CHECK(is_level_vector(t, {a, 1}).has_value() == (a >= Rational(-1, 6) && a <= Rational(1, 2)));
  }
  CHECK_FALSE(is_level_vector(t, {1, 1}).has_value());
  CHECK(is_level_vector(t, {-1, 1}).has_value());
  const auto vs = face_vertices(li, top);
  CHECK(exact_norm(li, t(vs.front())) != exact_norm(li, t(vs.back())));
}

TEST_CASE("operators with a kernel have non-level unit vectors") {
  for (const auto& [shape, n] : kSettings) {
    const Space s = ref::make_space(shape, n);
    SampleStream rng(58);
    for (std::size_t i = 3; i < 40; i += 4) {
      const Operator t(operator_matrix(n, i, rng), s);
      if (is_injective(t)) continue;
      bool found = false;
      for (const auto& x : sample_sphere(s, 500, i)) {
        if (!is_level_vector(t, x)) {
          found = true;
          break;
        }
      }
      if (!found) MESSAGE("no non-level vector among 500 samples for a singular operator on ", s.describe());
    }
  }
}

TEST_CASE("level count bound") {
  const Space l1 = Space::lp(3, LpExponent(1));
  const Space li = Space::lp(3, LpExponent::infinity());
  CHECK(level_count_bound(Operator(diagonal({1, 2, 3}), l1)) == 13);
  CHECK(level_count_bound(Operator(diagonal({1, 2, 3}), li)) == 13);
  CHECK(level_count_bound(Operator(diagonal({2, 1}), Space::lp(2, LpExponent::infinity()))) == 4);
  CHECK(level_count_bound(Operator(diagonal({1, 1, 0}), li)) == 13);

  const std::vector<std::pair<Matrix, Functional>> planes{
      {Matrix::from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}), {1, 0, 0}},
      {Matrix::from_rows({{1, -1, 0}, {2, -2, 0}, {0, 0, 0}}), {1, -1, 0}},
      {Matrix::from_rows({{1, 1, 1}, {0, 0, 0}, {0, 0, 0}}), {1, 1, 1}},
      {Matrix::from_rows({{2, 1, 0}, {0, 0, 0}, {2, 1, 0}}), {2, 1, 0}},
  };
  for (const Space& s : {l1, li}) {
    for (const auto& [m, normal] : planes) {
      const std::size_t v = ref::section_vertex_count(s, normal);
      CAPTURE(s.describe());
      CAPTURE(format_coords(normal));
      CHECK(level_count_bound(Operator(m, s)) == Rational(13 - static_cast<long>(v) + 1));
    }
  }
}

TEST_CASE("enumeration examples") {
  const Operator t21(diagonal({2, 1}), Space::lp(2, LpExponent::infinity()));
  const auto r = enumerate_level_numbers(t21, 5, 42);
  CHECK(r.values == std::vector<Rational>{1, 4});
  CHECK(r.under_approximation);
  CHECK(r.per_face.size() == 4);
  const Operator t123(diagonal({1, 2, 3}), Space::lp(3, LpExponent(1)));
  const auto s = enumerate_level_numbers(t123, 2, 7);
  for (Rational k : {1, 4, 9}) CHECK(std::find(s.values.begin(), s.values.end(), k) != s.values.end());
  CHECK(Rational(s.values.size()) <= level_count_bound(t123));
}

TEST_CASE("mixed arithmetic is rejected") {
  const Operator t(diagonal({1, 1}), Space::lp(2, LpExponent(1)), Space::lp(2, LpExponent(2)));
  CHECK_THROWS_AS(is_level_vector(t, {1, 0}), Error);
  CHECK_THROWS_AS(preserves_bj_at(t, {1, 0}), Error);
}
