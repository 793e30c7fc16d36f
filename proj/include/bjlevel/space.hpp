#pragma once

#include "bjlevel/linalg.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bjlevel {

/// Relative tolerance used by every float-path decision unless overridden.
inline constexpr double kDefaultTolerance = 1e-9;

/// lp spaces with p in {1, inf} are lowered to explicit polytopes; beyond
/// this dimension the 2^n vertex list of the cube (or of the dual cube) is
/// rejected.
inline constexpr std::size_t kMaxHypercubeDim = 12;

/// Upper bound on the number of vertex subsets examined by polar vertex
/// enumeration for general polyhedral balls.
inline constexpr std::size_t kMaxPolarSubsets = 3'000'000;

enum class SpaceKind { Lp, Polyhedral };
enum class ArithmeticMode { Exact, Float };

/// How the unit ball is represented internally.
enum class BallShape {
  CrossPolytope,  // l1
  Hypercube,      // l-inf
  General,        // explicit polyhedral vertex list
  Smooth,         // lp, 1 < p < inf (float path)
};

std::string_view mode_name(ArithmeticMode mode);

class LpExponent {
 public:
  static LpExponent infinity() { return LpExponent(); }
  explicit LpExponent(Rational p);

  bool is_infinite() const noexcept { return infinite_; }
  /// Finite exponent value; throws for p = inf.
  const Rational& value() const;
  double as_double() const;
  /// The q with 1/p + 1/q = 1 (1 <-> inf).
  LpExponent conjugate() const;
  std::string to_string() const;

  friend bool operator==(const LpExponent&, const LpExponent&) = default;

 private:
  LpExponent() : infinite_(true) {}
  bool infinite_ = false;
  Rational p_ = 0;
};

/// A finite-dimensional real normed space: an lp space or a polyhedral space
/// given by the (centrally symmetric) vertex list of its unit ball. Values are
/// immutable and cheap to copy; the ball geometry is shared.
class Space {
 public:
  static Space lp(std::size_t dim, LpExponent p, double tolerance = kDefaultTolerance);
  /// Validates symmetry, full span and irredundancy, then computes the facet
  /// functionals (the vertices of the dual ball) exactly.
  static Space polyhedral(std::vector<Vector> ball_vertices, double tolerance = kDefaultTolerance);

  SpaceKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  BallShape shape() const noexcept { return shape_; }
  ArithmeticMode mode() const noexcept {
    return shape_ == BallShape::Smooth ? ArithmeticMode::Float : ArithmeticMode::Exact;
  }
  bool is_exact() const noexcept { return mode() == ArithmeticMode::Exact; }
  bool is_euclidean() const;
  /// Throws for polyhedral spaces.
  const LpExponent& exponent() const;
  double tolerance() const noexcept { return tolerance_; }
  Space with_tolerance(double tolerance) const;

  /// Extreme points of the unit ball (exact spaces only).
  const std::vector<Vector>& ball_vertices() const;
  /// Extreme points of the dual unit ball, i.e. the facet functionals of the
  /// unit ball (exact spaces only).
  const std::vector<Functional>& dual_vertices() const;

  std::string describe() const;

  /// Same kind, dimension, exponent and (for polyhedral) the same vertex set
  /// up to ordering.
  friend bool operator==(const Space& a, const Space& b);

 private:
  struct Geometry {
    std::vector<Vector> ball;
    std::vector<Functional> dual;
  };

  Space() = default;
  void require_exact(const char* what) const;

  SpaceKind kind_ = SpaceKind::Lp;
  std::size_t dim_ = 0;
  BallShape shape_ = BallShape::Smooth;
  std::optional<LpExponent> p_;
  double tolerance_ = kDefaultTolerance;
  std::shared_ptr<const Geometry> geo_;
};

/// Norm of a vector together with the arithmetic that produced it. Exact
/// spaces fill `exact`; l2 additionally fills `exact_square` on any input.
struct NormValue {
  ArithmeticMode mode = ArithmeticMode::Exact;
  std::optional<Rational> exact;
  std::optional<Rational> exact_square;
  double value = 0;
};

void check_dim(const Space& space, std::size_t dim, const char* what = "vector");

NormValue norm(const Space& space, const Vector& x);
/// Exact norm; throws Error(MixedArithmetic) on float-path spaces.
Rational exact_norm(const Space& space, const Vector& x);
double float_norm(const Space& space, std::span<const double> x);

/// Norm of f as an element of the dual space.
Rational exact_dual_norm(const Space& space, const Functional& f);
double float_dual_norm(const Space& space, std::span<const double> f);

/// lp(p) -> lp(q); polyhedral -> polyhedral whose ball is the polar polytope.
Space dual_space(const Space& space);

/// Facet normals {f : f(v) <= 1 for all v, with equality on a facet} of the
/// full-dimensional, origin-symmetric polytope conv(vertices), found by
/// solving f(v_i) = 1 over every n-subset of vertices.
std::vector<Functional> polar_vertices(std::span<const Vector> vertices);

/// Whether `p` is a convex combination of `points` (exact LP).
bool in_convex_hull(const Vector& p, std::span<const Vector> points);

/// The points that are not convex combinations of the others (duplicates
/// collapse to one representative).
std::vector<Vector> extreme_subset(std::span<const Vector> points);

}  // namespace bjlevel
