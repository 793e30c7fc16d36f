#include "bjlevel/selftest.hpp"

#include "bjlevel/isometry.hpp"
#include "bjlevel/oracle.hpp"
#include "bjlevel/orthogonality.hpp"

#include <algorithm>
#include <functional>

namespace bjlevel {

namespace {

Matrix diagonal(std::initializer_list<Rational> d) {
  Matrix m(d.size(), d.size());
  std::size_t i = 0;
  for (const auto& v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

Vector v(std::string_view text) { return parse_vector(text); }
Functional f(std::string_view text) { return as_functional(parse_vector(text)); }

bool same_set(std::vector<Functional> a, std::vector<Functional> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

std::vector<SelfCheck> run_selftest() {
  const Space l1 = Space::lp(3, LpExponent(1));
  const Space li = Space::lp(3, LpExponent::infinity());
  const Space li2 = Space::lp(2, LpExponent::infinity());
  const Operator t211(diagonal({2, 1, 1}), l1);
  const Operator t123_l1(diagonal({1, 2, 3}), l1);
  const Operator t123_li(diagonal({1, 2, 3}), li);
  const Operator t21(diagonal({2, 1}), li2);
  const Operator tri(Matrix::from_rows({{3, -2, 0}, {1, 0, 0}, {0, 0, 1}}), li);
  const Operator s112(diagonal({1, 1, 2}), li);

  std::vector<std::pair<std::string, std::function<bool()>>> checks = {
      {"adjoint of diag(1,2,3) on l-inf_3 is diag(1,2,3) on l1_3",
       [&] {
         const Operator a = adjoint(t123_li);
         return a.matrix() == diagonal({1, 2, 3}) && a.domain() == l1 && a.codomain() == l1;
       }},
      {"J((1,1/2,0)) in l-inf_3 is {(1,0,0)}",
       [&] { return support_set(li, v("1,1/2,0")).vertices == std::vector<Functional>{f("1,0,0")}; }},
      {"(1,1/2,0) is smooth in l-inf_3", [&] { return is_smooth(li, v("1,1/2,0")); }},
      {"(1,1,0) is not smooth in l-inf_3", [&] { return !is_smooth(li, v("1,1,0")); }},
      {"(1,0,0) perp (1/2,1/2,0) in l1_3 with witness (1,-1,0)",
       [&] {
         const auto r = bj_orthogonal(l1, v("1,0,0"), v("1/2,1/2,0"));
         return r.orthogonal && r.witness && *r.witness == f("1,-1,0");
       }},
      {"(2,0,0) not perp (1,1/2,0) in l1_3", [&] { return !bj_orthogonal(l1, v("2,0,0"), v("1,1/2,0")).orthogonal; }},
      {"line search on l1_3: min ||(2,0,0) + t(1,1/2,0)|| = 1 at t = -2",
       [&] {
         const auto m = minimize_norm_1d(l1, v("2,0,0"), v("1,1/2,0"));
         return m.lambda == -2 && m.value == 1 &&
                !bj_orthogonal_oracle(l1, v("2,0,0"), v("1,1/2,0")).orthogonal;
       }},
      {"diag(2,1,1) on l1_3: (1,0,0) is a level vector with k = 4",
       [&] {
         const auto c = is_level_vector(t211, v("1,0,0"));
         return c && c->level_number && *c->level_number == 4;
       }},
      {"(3x-2y,x,z) on l-inf_3: (1,1/2,0) is not a level vector",
       [&] { return !is_level_vector(tri, v("1,1/2,0")).has_value(); }},
      {"(3x-2y,x,z) on l-inf_3: (1,1,0) is a level vector with f = (1,0,0), g = (0,1,0), k = 1",
       [&] {
         const auto c = is_level_vector(tri, v("1,1,0"));
         return c && *c->f == f("1,0,0") && *c->g == f("0,1,0") && *c->level_number == 1;
       }},
      {"diag(2,1) on l-inf_2: level numbers 1 at (0,1) and 4 at (1,1)",
       [&] { return level_number(t21, v("0,1")) == 1 && level_number(t21, v("1,1")) == 4; }},
      {"diag(2,1,1) on l1_3 preserves orthogonality at (1,0,0) along ker (1,0,0)",
       [&] { return preserves_bj_directional(t211, v("1,0,0"), f("1,0,0")).holds; }},
      {"diag(1,1,2) on l-inf_3 preserves orthogonality at (1,0,0) along ker (1,0,0)",
       [&] { return preserves_bj_directional(s112, v("1,0,0"), f("1,0,0")).holds; }},
      {"diag(2,1,1) on l1_3 does not preserve orthogonality at (1,0,0)",
       [&] {
         const auto p = preserves_bj_at(t211, v("1,0,0"));
         return !p.holds && p.counterexample.has_value();
       }},
      {"diag(1,2,3) on l-inf_3 preserves orthogonality at (1,0,0)",
       [&] { return preserves_bj_at(t123_li, v("1,0,0")).holds; }},
      {"sampling finds violations for diag(2,1,1) on l1_3 at (1,0,0)",
       [&] { return !preservation_sample_check(t211, v("1,0,0"), 100, 1).violations.empty(); }},
      {"sampling finds no violation for diag(1,2,3) on l-inf_3 at (1,0,0)",
       [&] { return preservation_sample_check(t123_li, v("1,0,0"), 100, 1).violations.empty(); }},
      {"diag(2,1) on l-inf_2: enumerated level numbers are {1, 4}",
       [&] {
         const auto r = enumerate_level_numbers(t21, 5, 42);
         return r.values == std::vector<Rational>{1, 4} && r.under_approximation;
       }},
      {"diag(1,2,3) on l1_3: enumerated level numbers contain 1, 4, 9",
       [&] {
         const auto r = enumerate_level_numbers(t123_l1, 5, 42);
         for (Rational k : {1, 4, 9}) {
           if (std::find(r.values.begin(), r.values.end(), k) == r.values.end()) return false;
         }
         return true;
       }},
      {"level count bound 13 for injective operators on l1_3 and l-inf_3",
       [&] { return level_count_bound(t123_l1) == 13 && level_count_bound(t123_li) == 13; }},
      {"diag(1,2,3) on l1_3 is refuted as a scalar multiple of an isometry",
       [&] {
         const auto r = certify_scalar_isometry_polyhedral(t123_l1);
         return r.verdict == Verdict::Refuted && r.witness.has_value();
       }},
      {"scalar identity test, (3x-2y,x,z) with (1,1/2,0),(1,1,0),(1,1,1/2): only (iii) fails",
       [&] {
         const std::vector<Vector> c{v("1,1/2,0"), v("1,1,0"), v("1,1,1/2")};
         return scalar_identity_test(tri, c).failed == std::vector<int>{3};
       }},
      {"scalar identity test, diag(1,1,2) with (1,0,0),(1,1/2,0),(0,0,1): only (iv) fails",
       [&] {
         const std::vector<Vector> c{v("1,0,0"), v("1,1/2,0"), v("0,0,1")};
         return scalar_identity_test(s112, c).failed == std::vector<int>{4};
       }},
      {"scalar identity test, diag(1,1,2) with (1,0,0),(1,1/2,0),(1,0,1/2): only (i) fails",
       [&] {
         const std::vector<Vector> c{v("1,0,0"), v("1,1/2,0"), v("1,0,1/2")};
         return scalar_identity_test(s112, c).failed == std::vector<int>{1};
       }},
      {"scalar identity test, (3x-2y,x,z) with (1,1,0),(1,1/2,0),(1,1,1/2): only (ii) fails",
       [&] {
         const std::vector<Vector> c{v("1,1,0"), v("1,1/2,0"), v("1,1,1/2")};
         return scalar_identity_test(tri, c).failed == std::vector<int>{2};
       }},
      {"adjoint transfer of diag(1,2,3) on l-inf_3 at (1,0,0): psi = (1,0,0), k = 1",
       [&] {
         const auto r = adjoint_level_transfer(t123_li, v("1,0,0"));
         return r.psi == v("1,0,0") && r.level_number && *r.level_number == 1;
       }},
      {"J((1,1,0)) in l-inf_3 is {(1,0,0),(0,1,0)}",
       [&] { return same_set(support_set(li, v("1,1,0")).vertices, {f("1,0,0"), f("0,1,0")}); }},
  };

  std::vector<SelfCheck> out;
  for (auto& [name, fn] : checks) {
    SelfCheck c;
    c.name = name;
    try {
      c.passed = fn();
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace bjlevel
