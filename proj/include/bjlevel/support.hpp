#pragma once

#include "bjlevel/space.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bjlevel {

/// J(x): the supporting functionals of a nonzero x, as the vertex list of a
/// polytope in the dual ball. Exact spaces fill `vertices`; float-path lp
/// spaces are smooth and fill `float_vertices` with the single functional.
struct SupportSet {
  Vector base_point;
  ArithmeticMode mode = ArithmeticMode::Exact;
  std::vector<Functional> vertices;
  std::vector<RealCoords> float_vertices;
  /// Indices into Space::dual_vertices() (exact general/cube/cross shapes).
  std::vector<std::size_t> dual_indices;

  std::size_t size() const {
    return mode == ArithmeticMode::Exact ? vertices.size() : float_vertices.size();
  }
};

SupportSet support_set(const Space& space, const Vector& x);

bool is_smooth(const Space& space, const Vector& x);

/// min and max of f(y) over J(x); attained at vertices by linearity.
std::pair<Rational, Rational> eval_range(const SupportSet& s, const Vector& y);
std::pair<double, double> eval_range_float(const SupportSet& s, const Vector& y);

/// Whether f is a supporting functional at x: f(x) = ||x|| and ||f||* = 1.
bool is_supporting(const Space& space, const Vector& x, const Functional& f);

}  // namespace bjlevel
