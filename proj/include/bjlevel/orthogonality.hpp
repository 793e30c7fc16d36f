#pragma once

#include "bjlevel/oracle.hpp"
#include "bjlevel/support.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bjlevel {

enum class OrthoMethod { Dual, Oracle };

struct OrthogonalityVerdict {
  bool orthogonal = false;
  OrthoMethod method = OrthoMethod::Dual;
  ArithmeticMode mode = ArithmeticMode::Exact;
  /// f in J(x) with f(y) = 0 (every vector of a subspace), exact spaces.
  std::optional<Functional> witness;
  std::optional<RealCoords> float_witness;
  /// Dual route: distance of 0 from {f(y) : f in J(x)} divided by ||y||.
  /// Oracle route: (||x|| - min ||x + lambda y||) / ||x||.
  double margin = 0;
  std::optional<LineMinimum> line;  // oracle route
};

/// x perp_B y iff min f(y) <= 0 <= max f(y) over J(x) (real scalars).
OrthogonalityVerdict bj_orthogonal(const Space& space, const Vector& x, const Vector& y);

/// Decides x perp_B y directly from the definition by minimizing ||x + lambda y||.
OrthogonalityVerdict bj_orthogonal_oracle(const Space& space, const Vector& x, const Vector& y);

/// span(basis) is contained in x^perp_B iff some f in J(x) vanishes on it.
OrthogonalityVerdict subspace_orthogonal(const Space& space, const Vector& x, std::span<const Vector> basis);

}  // namespace bjlevel
