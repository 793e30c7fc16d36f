#pragma once

#include "bjlevel/operator.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace bjlevel {

/// Deterministic sample generator shared by every randomized routine.
///
/// The state is a 64-bit linear congruential sequence
///   s_{k+1} = 6364136223846793005 * s_k + 1442695040888963407  (mod 2^64)
/// seeded with s_0 = seed. Each draw uses the high 32 bits of the next state;
/// an integer in [lo, hi] is lo + (draw mod (hi - lo + 1)). Rationals are p/q
/// with p and q drawn in that order. No platform distribution is involved,
/// so streams are identical across compilers and operating systems.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for item `index` of a batch seeded with `seed`.
  static SampleStream derive(std::uint64_t seed, std::uint64_t index);

  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_() >> 32); }
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// p/q with p in [-max_num, max_num] and q in [1, max_den].
  Rational rational(int max_num, int max_den);
  Vector vector(std::size_t dim, int max_num = 9, int max_den = 4, bool nonzero = true);

 private:
  std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0ULL> engine_;
};

/// `count` unit vectors of `space`. Exact spaces normalize by the rational
/// norm; float spaces normalize in double precision and store the doubles
/// exactly as rationals (norm within 1e-12 of 1).
std::vector<Vector> sample_sphere(const Space& space, std::size_t count, std::uint64_t seed);

/// Minimizer of lambda -> ||x + lambda y|| on the bracket
/// [-2||x||/||y||, 2||x||/||y||], which contains every minimizer.
struct LineMinimum {
  ArithmeticMode mode = ArithmeticMode::Exact;
  Rational lambda = 0;  // exact mode
  Rational value = 0;   // exact mode
  double lambda_value = 0;
  double min_value = 0;
};

/// Exact breakpoint scan on exact spaces, ternary search to a bracket width
/// of 1e-10 (relative to the bracket) on float spaces. Throws for y = 0.
LineMinimum minimize_norm_1d(const Space& space, const Vector& x, const Vector& y);

struct PreservationViolation {
  Vector y;
  Functional f;  // the sampled f in J(x) with f(y) = 0 (exact mode)
  LineMinimum line;
};

struct PreservationSampleReport {
  std::size_t samples = 0;
  std::vector<PreservationViolation> violations;
};

/// Samples y in x^perp_B (pick f in J(x) by a random convex combination, then
/// y in ker f) and tests Tx perp_B Ty with the line-minimization oracle.
PreservationSampleReport preservation_sample_check(const Operator& t, const Vector& x, std::size_t count,
                                                   std::uint64_t seed);

/// Test-battery generators.
Matrix random_matrix(std::size_t rows, std::size_t cols, SampleStream& rng, int max_num = 4, int max_den = 3);
Matrix signed_permutation(std::size_t n, SampleStream& rng);

}  // namespace bjlevel
