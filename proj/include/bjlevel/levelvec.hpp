#pragma once

#include "bjlevel/faces.hpp"
#include "bjlevel/operator.hpp"
#include "bjlevel/support.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bjlevel {

/// Witness that x is a level vector of T: f in J(x), g in J(Tx) with
/// T^x g = (||Tx|| / ||x||) f, and level number k = ||Tx||^2 / ||x||^2.
struct LevelCertificate {
  Vector x;
  ArithmeticMode mode = ArithmeticMode::Exact;
  /// Tx = 0: no functional pair, k = 0.
  bool degenerate = false;
  std::optional<Functional> f;
  std::optional<Functional> g;
  std::optional<RealCoords> float_f;
  std::optional<RealCoords> float_g;
  /// Exact k on exact spaces and on l2 (rational squares); absent otherwise.
  std::optional<Rational> level_number;
  double level_value = 0;
  /// Float path: max |T^x g - r f| over coordinates.
  double residual = 0;
};

/// Decides whether (||Tx||/||x||) J(x) meets T^x(J(Tx)). Exact spaces solve
/// an LP over convex coefficients of both vertex sets; l2 tests T^T T x || x
/// exactly; other float spaces compare the unique functionals.
std::optional<LevelCertificate> is_level_vector(const Operator& t, const Vector& x);

/// ||Tx||^2 / ||x||^2; throws Error(NotLevelVector) unless x is a level vector.
Rational level_number(const Operator& t, const Vector& x);

struct DirectionalResult {
  bool holds = false;
  std::optional<Functional> g;
  std::optional<RealCoords> float_g;
};

/// T preserves orthogonality at x with respect to ker f. Throws
/// Error(NotSupporting) unless f is in J(x).
DirectionalResult preserves_bj_directional(const Operator& t, const Vector& x, const Functional& f);

struct PreservationCounterexample {
  Vector y;
  /// Distance of 0 from {g(Ty) : g in J(Tx)} divided by ||Ty||.
  double margin = 0;
};

struct PreservationReport {
  bool holds = false;
  ArithmeticMode mode = ArithmeticMode::Exact;
  std::size_t checked_functionals = 0;
  std::optional<Functional> failing_functional;
  std::optional<RealCoords> float_failing_functional;
  std::optional<PreservationCounterexample> counterexample;
};

/// Whether x perp_B y implies Tx perp_B Ty for all y. Every vertex of J(x) is
/// tested; on failure a counterexample y with f(y) = 0 is computed and
/// verified.
PreservationReport preserves_bj_at(const Operator& t, const Vector& x);

/// Tx = 0 or ker T lies in x^perp_B.
bool kernel_condition(const Operator& t, const Vector& x);

struct PointRecord {
  Vector point;
  std::optional<Rational> level_number;  // present iff a level vector
};

struct FaceLevelRecord {
  std::size_t face_index = 0;  // position in face_lattice(domain)
  Face face;
  /// The centroid first, then the random interior points.
  std::vector<PointRecord> points;
  std::optional<Rational> level_number;
};

/// Level numbers found by testing one face of each antipodal pair. The value
/// set is a subset of L(T), never more.
struct LevelNumberReport {
  std::vector<Rational> values;  // ascending, distinct
  std::vector<FaceLevelRecord> per_face;
  std::optional<Rational> bound;  // present for square operators
  bool under_approximation = true;
  std::size_t samples_per_face = 0;
  std::uint64_t seed = 0;
};

LevelNumberReport enumerate_level_numbers(const Operator& t, std::size_t samples_per_face, std::uint64_t seed);

/// Upper bound on |L(T)| from the face census of the domain ball and, for a
/// nontrivial kernel, of the ball of ker T.
Rational level_count_bound(const Operator& t);

}  // namespace bjlevel
