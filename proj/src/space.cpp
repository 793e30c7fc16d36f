#include "bjlevel/space.hpp"

#include "bjlevel/lp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace bjlevel {

std::string_view mode_name(ArithmeticMode mode) {
  return mode == ArithmeticMode::Exact ? "exact" : "float";
}

LpExponent::LpExponent(Rational p) : infinite_(false), p_(std::move(p)) {
  if (p_ < 1) throw Error(ErrorCode::MalformedInput, "lp exponent must be >= 1, got " + bjlevel::to_string(p_));
}

const Rational& LpExponent::value() const {
  if (infinite_) throw Error(ErrorCode::MalformedInput, "exponent is infinite");
  return p_;
}

double LpExponent::as_double() const { return infinite_ ? HUGE_VAL : to_double(p_); }

LpExponent LpExponent::conjugate() const {
  if (infinite_) return LpExponent(Rational(1));
  if (p_ == 1) return infinity();
  return LpExponent(p_ / (p_ - 1));
}

std::string LpExponent::to_string() const { return infinite_ ? "inf" : bjlevel::to_string(p_); }

namespace {

std::vector<Vector> cross_polytope(std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      Vector v(n);
      v[i] = s;
      out.push_back(std::move(v));
    }
  }
  return out;
}

// Vertex b has coordinate j equal to -1 when bit j of b is set.
std::vector<Vector> hypercube(std::size_t n) {
  std::vector<Vector> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = (b >> j) & 1 ? -1 : 1;
    out.push_back(std::move(v));
  }
  return out;
}

template <class Tag>
std::vector<Coords<Tag>> retag(const std::vector<Vector>& vs) {
  std::vector<Coords<Tag>> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.emplace_back(v.coords());
  return out;
}

std::size_t binomial_capped(std::size_t m, std::size_t k, std::size_t cap) {
  if (k > m) return 0;
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<long double>(m - k + i) / static_cast<long double>(i);
    if (r > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(r + 0.5L);
}

}  // namespace

Space Space::lp(std::size_t dim, LpExponent p, double tolerance) {
  if (dim == 0) throw Error(ErrorCode::MalformedInput, "space dimension must be positive");
  Space s;
  s.kind_ = SpaceKind::Lp;
  s.dim_ = dim;
  s.tolerance_ = tolerance;
  const bool one = !p.is_infinite() && p.value() == 1;
  if (one || p.is_infinite()) {
    if (dim > kMaxHypercubeDim) {
      throw Error(ErrorCode::TooLarge, "l1/l-inf spaces are limited to dimension " +
                                           std::to_string(kMaxHypercubeDim));
    }
    auto geo = std::make_shared<Geometry>();
    if (one) {
      s.shape_ = BallShape::CrossPolytope;
      geo->ball = cross_polytope(dim);
      geo->dual = retag<FunctionalTag>(hypercube(dim));
    } else {
      s.shape_ = BallShape::Hypercube;
      geo->ball = hypercube(dim);
      geo->dual = retag<FunctionalTag>(cross_polytope(dim));
    }
    s.geo_ = std::move(geo);
  } else {
    s.shape_ = BallShape::Smooth;
  }
  s.p_ = std::move(p);
  return s;
}

Space Space::polyhedral(std::vector<Vector> ball_vertices, double tolerance) {
  if (ball_vertices.empty()) throw Error(ErrorCode::MalformedInput, "polyhedral space needs ball vertices");
  const std::size_t n = ball_vertices.front().size();
  if (n == 0) throw Error(ErrorCode::MalformedInput, "space dimension must be positive");
  std::set<Vector> seen;
  for (const auto& v : ball_vertices) {
    if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "ball vertices of different dimensions");
    if (v.is_zero()) throw Error(ErrorCode::MalformedInput, "the origin cannot be a ball vertex");
    if (!seen.insert(v).second) {
      throw Error(ErrorCode::MalformedInput, "duplicate ball vertex " + format_coords(v));
    }
  }
  for (const auto& v : ball_vertices) {
    if (!seen.count(-v)) {
      throw Error(ErrorCode::MalformedInput, "ball vertices are not symmetric: missing -(" + format_coords(v) + ")");
    }
  }
  if (rank_of<VectorTag>(ball_vertices) != n) {
    throw Error(ErrorCode::MalformedInput, "ball vertices do not span the space");
  }
  for (std::size_t i = 0; i < ball_vertices.size(); ++i) {
    std::vector<Vector> others;
    others.reserve(ball_vertices.size() - 1);
    for (std::size_t j = 0; j < ball_vertices.size(); ++j) {
      if (j != i) others.push_back(ball_vertices[j]);
    }
    if (in_convex_hull(ball_vertices[i], others)) {
      throw Error(ErrorCode::MalformedInput,
                  "ball vertex " + format_coords(ball_vertices[i]) + " is not an extreme point");
    }
  }
  Space s;
  s.kind_ = SpaceKind::Polyhedral;
  s.dim_ = n;
  s.shape_ = BallShape::General;
  s.tolerance_ = tolerance;
  auto geo = std::make_shared<Geometry>();
  geo->dual = polar_vertices(ball_vertices);
  geo->ball = std::move(ball_vertices);
  s.geo_ = std::move(geo);
  return s;
}

bool Space::is_euclidean() const { return shape_ == BallShape::Smooth && p_->value() == 2; }

const LpExponent& Space::exponent() const {
  if (!p_) throw Error(ErrorCode::MalformedInput, "polyhedral space has no lp exponent");
  return *p_;
}

Space Space::with_tolerance(double tolerance) const {
  Space s = *this;
  s.tolerance_ = tolerance;
  return s;
}

void Space::require_exact(const char* what) const {
  if (!geo_) {
    throw Error(ErrorCode::NotPolyhedral, std::string(what) + " requires a polyhedral space, got " + describe());
  }
}

const std::vector<Vector>& Space::ball_vertices() const {
  require_exact("ball_vertices");
  return geo_->ball;
}

const std::vector<Functional>& Space::dual_vertices() const {
  require_exact("dual_vertices");
  return geo_->dual;
}

std::string Space::describe() const {
  std::ostringstream out;
  if (kind_ == SpaceKind::Lp) {
    out << "l" << p_->to_string() << "^" << dim_;
  } else {
    out << "polyhedral^" << dim_ << " (" << geo_->ball.size() << " vertices)";
  }
  return out.str();
}

bool operator==(const Space& a, const Space& b) {
  if (a.kind_ != b.kind_ || a.dim_ != b.dim_ || a.p_ != b.p_) return false;
  if (a.kind_ == SpaceKind::Lp) return true;
  std::set<Vector> va(a.geo_->ball.begin(), a.geo_->ball.end());
  std::set<Vector> vb(b.geo_->ball.begin(), b.geo_->ball.end());
  return va == vb;
}

void check_dim(const Space& space, std::size_t dim, const char* what) {
  if (dim != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has dimension " + std::to_string(dim) +
                                                  " but the space " + space.describe() + " has dimension " +
                                                  std::to_string(space.dim()));
  }
}

Rational exact_norm(const Space& space, const Vector& x) {
  check_dim(space, x.size());
  switch (space.shape()) {
    case BallShape::CrossPolytope: {
      Rational s = 0;
      for (const auto& c : x) s += abs(c);
      return s;
    }
    case BallShape::Hypercube: {
      Rational m = 0;
      for (const auto& c : x) m = std::max(m, abs(c));
      return m;
    }
    case BallShape::General: {
      Rational m = 0;
      for (const auto& f : space.dual_vertices()) m = std::max(m, apply(f, x));
      return m;
    }
    case BallShape::Smooth:
      break;
  }
  throw Error(ErrorCode::MixedArithmetic, "exact norm requested on float-path space " + space.describe());
}

double float_norm(const Space& space, std::span<const double> x) {
  check_dim(space, x.size());
  double scale = 0;
  for (double c : x) scale = std::max(scale, std::fabs(c));
  if (scale == 0) return 0;
  switch (space.shape()) {
    case BallShape::CrossPolytope: {
      double s = 0;
      for (double c : x) s += std::fabs(c);
      return s;
    }
    case BallShape::Hypercube:
      return scale;
    case BallShape::General: {
      double m = 0;
      for (const auto& f : space.dual_vertices()) m = std::max(m, pair_real(to_real(f), x));
      return m;
    }
    case BallShape::Smooth: {
      const double p = space.exponent().as_double();
      double s = 0;
      for (double c : x) s += std::pow(std::fabs(c) / scale, p);
      return scale * std::pow(s, 1.0 / p);
    }
  }
  return 0;
}

NormValue norm(const Space& space, const Vector& x) {
  check_dim(space, x.size());
  NormValue out;
  out.mode = space.mode();
  if (space.is_exact()) {
    out.exact = exact_norm(space, x);
    out.value = to_double(*out.exact);
    return out;
  }
  if (space.is_euclidean()) {
    Rational sq = 0;
    for (const auto& c : x) sq += c * c;
    out.exact_square = sq;
  }
  out.value = float_norm(space, to_real(x));
  return out;
}

Rational exact_dual_norm(const Space& space, const Functional& f) {
  check_dim(space, f.size(), "functional");
  switch (space.shape()) {
    case BallShape::CrossPolytope: {
      Rational m = 0;
      for (const auto& c : f) m = std::max(m, abs(c));
      return m;
    }
    case BallShape::Hypercube: {
      Rational s = 0;
      for (const auto& c : f) s += abs(c);
      return s;
    }
    case BallShape::General: {
      Rational m = 0;
      for (const auto& v : space.ball_vertices()) m = std::max(m, apply(f, v));
      return m;
    }
    case BallShape::Smooth:
      break;
  }
  throw Error(ErrorCode::MixedArithmetic, "exact dual norm requested on float-path space " + space.describe());
}

double float_dual_norm(const Space& space, std::span<const double> f) {
  return float_norm(dual_space(space), f);
}

Space dual_space(const Space& space) {
  if (space.kind() == SpaceKind::Lp) {
    return Space::lp(space.dim(), space.exponent().conjugate(), space.tolerance());
  }
  std::vector<Vector> verts;
  for (const auto& f : space.dual_vertices()) verts.push_back(as_vector(f));
  return Space::polyhedral(std::move(verts), space.tolerance());
}

std::vector<Functional> polar_vertices(std::span<const Vector> vertices) {
  if (vertices.empty()) return {};
  const std::size_t n = vertices.front().size();
  const std::size_t m = vertices.size();
  if (binomial_capped(m, n, kMaxPolarSubsets) > kMaxPolarSubsets) {
    throw Error(ErrorCode::TooLarge, "polar vertex enumeration over C(" + std::to_string(m) + "," +
                                         std::to_string(n) + ") subsets exceeds the desk-scale limit");
  }
  std::set<Functional> found;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  const Vector ones = [&] {
    Vector o(n);
    for (std::size_t i = 0; i < n; ++i) o[i] = 1;
    return o;
  }();
  while (true) {
    Matrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = vertices[idx[r]][c];
    if (auto sol = solve(a, ones)) {
      Functional f(sol->coords());
      bool valid = true;
      for (const auto& v : vertices) {
        if (apply(f, v) > 1) {
          valid = false;
          break;
        }
      }
      if (valid) found.insert(std::move(f));
    }
    // next combination
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - n + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

bool in_convex_hull(const Vector& p, std::span<const Vector> points) {
  if (points.empty()) return false;
  lp::Problem prob;
  const std::size_t first = prob.add_variables(points.size());
  std::vector<lp::Term> sum;
  for (std::size_t i = 0; i < points.size(); ++i) sum.push_back({first + i, 1});
  prob.add_constraint(sum, lp::Relation::Equal, 1);
  for (std::size_t c = 0; c < p.size(); ++c) {
    std::vector<lp::Term> row;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i][c] != 0) row.push_back({first + i, points[i][c]});
    }
    prob.add_constraint(std::move(row), lp::Relation::Equal, p[c]);
  }
  return prob.solve().feasible();
}

std::vector<Vector> extreme_subset(std::span<const Vector> points) {
  std::vector<Vector> unique;
  {
    std::set<Vector> seen;
    for (const auto& p : points) {
      if (seen.insert(p).second) unique.push_back(p);
    }
  }
  std::vector<Vector> out;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    std::vector<Vector> others;
    for (std::size_t j = 0; j < unique.size(); ++j) {
      if (j != i) others.push_back(unique[j]);
    }
    if (!in_convex_hull(unique[i], others)) out.push_back(unique[i]);
  }
  return out;
}

}  // namespace bjlevel
