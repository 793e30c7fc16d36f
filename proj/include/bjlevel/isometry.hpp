#pragma once

#include "bjlevel/levelvec.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bjlevel {

enum class Verdict { Certified, Refuted, Inconclusive };

std::string_view verdict_name(Verdict v);

/// x perp_B y while Tx is not perp_B Ty.
struct OrthogonalityWitness {
  Vector x;
  Vector y;
  double margin = 0;
};

struct IsometryReport {
  Verdict verdict = Verdict::Inconclusive;
  ArithmeticMode mode = ArithmeticMode::Exact;
  /// Inconclusive with every sample a level vector at a constant ratio.
  bool positive_evidence = false;
  std::optional<Rational> scale;
  double scale_value = 0;
  std::optional<OrthogonalityWitness> witness;
  /// Float probes refuted by two unit vectors with different ||T.||.
  std::optional<std::pair<Vector, Vector>> ratio_witness;
  std::vector<Vector> checked_points;
};

/// Runs preserves_bj_at at every extreme point of a polyhedral domain.
IsometryReport certify_scalar_isometry_polyhedral(const Operator& t);

/// Sampling probe on any space; refutes or reports positive evidence, and
/// certifies only the zero operator.
IsometryReport probe_scalar_isometry_grid(const Operator& t, std::size_t samples, std::uint64_t seed);

struct ScalarIdentityReport {
  bool independent = false;
  /// Conditions (i) eigenvectors, (ii) x1 smooth and outside ker T,
  /// (iii) x1 a level vector, (iv) x1 not perp_B x_i for i >= 2.
  std::array<bool, 4> conditions{};
  std::vector<std::optional<Rational>> eigenvalues;
  std::vector<int> failed;  // 1-based condition numbers
  bool certified = false;
  std::optional<Rational> lambda;
};

/// Throws Error(MalformedInput) unless there are dim candidates and
/// Error(NotUnitVector) unless each has norm one.
ScalarIdentityReport scalar_identity_test(const Operator& t, std::span<const Vector> candidates);

struct AdjointTransfer {
  /// psi in J(Tx / ||Tx||), a vector of the dual of the codomain. On l2 this
  /// is the direction Tx (same level property and number).
  Vector psi;
  std::optional<RealCoords> float_psi;
  LevelCertificate primal;
  LevelCertificate dual;
  std::optional<Rational> level_number;
  double level_value = 0;
};

/// Requires x a unit level vector of T with Tx != 0.
AdjointTransfer adjoint_level_transfer(const Operator& t, const Vector& x);

}  // namespace bjlevel
