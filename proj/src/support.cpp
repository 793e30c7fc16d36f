#include "bjlevel/support.hpp"

#include <algorithm>
#include <cmath>

namespace bjlevel {

namespace {

void require_nonzero(const Vector& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroVector, "J(x) is undefined at x = 0");
}

// Index of a cube vertex with the given signs (bit j set <=> coordinate -1).
std::size_t cube_index(const std::vector<int>& signs) {
  std::size_t b = 0;
  for (std::size_t j = 0; j < signs.size(); ++j) {
    if (signs[j] < 0) b |= std::size_t{1} << j;
  }
  return b;
}

}  // namespace

SupportSet support_set(const Space& space, const Vector& x) {
  check_dim(space, x.size());
  require_nonzero(x);
  SupportSet out;
  out.base_point = x;
  out.mode = space.mode();
  const std::size_t n = x.size();

  switch (space.shape()) {
    case BallShape::CrossPolytope: {
      // f_i = sign(x_i) where x_i != 0, free in {-1, 1} elsewhere.
      std::vector<std::size_t> zeros;
      std::vector<int> signs(n);
      for (std::size_t i = 0; i < n; ++i) {
        signs[i] = sign(x[i]);
        if (signs[i] == 0) zeros.push_back(i);
      }
      for (std::size_t mask = 0; mask < (std::size_t{1} << zeros.size()); ++mask) {
        for (std::size_t k = 0; k < zeros.size(); ++k) signs[zeros[k]] = (mask >> k) & 1 ? -1 : 1;
        out.dual_indices.push_back(cube_index(signs));
      }
      std::sort(out.dual_indices.begin(), out.dual_indices.end());
      break;
    }
    case BallShape::Hypercube: {
      const Rational m = exact_norm(space, x);
      for (std::size_t i = 0; i < n; ++i) {
        if (abs(x[i]) == m) out.dual_indices.push_back(2 * i + (x[i] < 0 ? 1 : 0));
      }
      break;
    }
    case BallShape::General: {
      const Rational m = exact_norm(space, x);
      const auto& dual = space.dual_vertices();
      for (std::size_t i = 0; i < dual.size(); ++i) {
        if (apply(dual[i], x) == m) out.dual_indices.push_back(i);
      }
      break;
    }
    case BallShape::Smooth: {
      const double p = space.exponent().as_double();
      RealCoords xr = to_real(x);
      const double nx = float_norm(space, xr);
      RealCoords f(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double a = std::fabs(xr[i]) / nx;
        f[i] = (xr[i] < 0 ? -1.0 : (xr[i] > 0 ? 1.0 : 0.0)) * (p == 2 ? a : std::pow(a, p - 1));
      }
      out.float_vertices.push_back(std::move(f));
      return out;
    }
  }
  const auto& dual = space.dual_vertices();
  for (auto i : out.dual_indices) out.vertices.push_back(dual[i]);
  return out;
}

bool is_smooth(const Space& space, const Vector& x) { return support_set(space, x).size() == 1; }

std::pair<Rational, Rational> eval_range(const SupportSet& s, const Vector& y) {
  if (s.mode != ArithmeticMode::Exact) {
    throw Error(ErrorCode::MixedArithmetic, "exact eval_range on a float support set");
  }
  if (y.size() != s.base_point.size()) throw Error(ErrorCode::DimensionMismatch, "eval_range: dimension mismatch");
  Rational lo = apply(s.vertices.front(), y);
  Rational hi = lo;
  for (std::size_t i = 1; i < s.vertices.size(); ++i) {
    Rational v = apply(s.vertices[i], y);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

std::pair<double, double> eval_range_float(const SupportSet& s, const Vector& y) {
  if (y.size() != s.base_point.size()) throw Error(ErrorCode::DimensionMismatch, "eval_range: dimension mismatch");
  if (s.mode == ArithmeticMode::Exact) {
    auto [lo, hi] = eval_range(s, y);
    return {to_double(lo), to_double(hi)};
  }
  RealCoords yr = to_real(y);
  double lo = HUGE_VAL;
  double hi = -HUGE_VAL;
  for (const auto& f : s.float_vertices) {
    double v = pair_real(f, yr);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

bool is_supporting(const Space& space, const Vector& x, const Functional& f) {
  check_dim(space, x.size());
  check_dim(space, f.size(), "functional");
  if (x.is_zero()) return false;
  return apply(f, x) == exact_norm(space, x) && exact_dual_norm(space, f) == 1;
}

}  // namespace bjlevel
