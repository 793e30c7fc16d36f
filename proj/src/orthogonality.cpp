#include "bjlevel/orthogonality.hpp"

#include "bjlevel/lp.hpp"

#include <cmath>

namespace bjlevel {

namespace {

Rational euclidean_dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Functional centroid(const std::vector<Functional>& fs) {
  Functional acc(fs.front().size());
  for (const auto& f : fs) acc += f;
  return acc / Rational(fs.size());
}

}  // namespace

OrthogonalityVerdict bj_orthogonal(const Space& space, const Vector& x, const Vector& y) {
  check_dim(space, x.size(), "x");
  check_dim(space, y.size(), "y");
  OrthogonalityVerdict out;
  out.method = OrthoMethod::Dual;
  out.mode = space.mode();
  if (x.is_zero()) {
    out.orthogonal = true;
    return out;
  }

  if (space.is_exact()) {
    const SupportSet s = support_set(space, x);
    std::vector<Functional> neg, zero, pos;
    Rational lo = 0, hi = 0;
    bool first = true;
    for (const auto& f : s.vertices) {
      const Rational v = apply(f, y);
      if (first || v < lo) lo = v;
      if (first || v > hi) hi = v;
      first = false;
      (v < 0 ? neg : (v > 0 ? pos : zero)).push_back(f);
    }
    out.orthogonal = lo <= 0 && 0 <= hi;
    if (!zero.empty()) {
      out.witness = centroid(zero);
    } else if (out.orthogonal) {
      // Interpolate between the centroids of the negative and positive sides.
      const Functional a = centroid(neg);
      const Functional b = centroid(pos);
      const Rational fa = apply(a, y);
      const Rational fb = apply(b, y);
      const Rational t = fb / (fb - fa);
      out.witness = t * a + (1 - t) * b;
    }
    if (!out.orthogonal) {
      const Rational gap = lo > 0 ? lo : Rational(-hi);
      out.margin = to_double(gap / exact_norm(space, y));
    }
    return out;
  }

  const SupportSet s = support_set(space, x);
  out.float_witness = s.float_vertices.front();
  if (y.is_zero()) {
    out.orthogonal = true;
    return out;
  }
  if (space.is_euclidean()) {
    const Rational dot = euclidean_dot(x, y);
    out.orthogonal = dot == 0;
    out.mode = ArithmeticMode::Exact;
    out.margin = std::fabs(to_double(dot)) / (float_norm(space, to_real(x)) * float_norm(space, to_real(y)));
    return out;
  }
  const RealCoords yr = to_real(y);
  out.margin = std::fabs(pair_real(s.float_vertices.front(), yr)) / float_norm(space, yr);
  out.orthogonal = out.margin <= space.tolerance();
  return out;
}

OrthogonalityVerdict bj_orthogonal_oracle(const Space& space, const Vector& x, const Vector& y) {
  check_dim(space, x.size(), "x");
  check_dim(space, y.size(), "y");
  OrthogonalityVerdict out;
  out.method = OrthoMethod::Oracle;
  out.mode = space.mode();
  if (x.is_zero() || y.is_zero()) {
    out.orthogonal = true;
    return out;
  }
  const LineMinimum line = minimize_norm_1d(space, x, y);
  if (space.is_exact()) {
    const Rational nx = exact_norm(space, x);
    out.orthogonal = line.value >= nx;
    out.margin = to_double((nx - line.value) / nx);
  } else {
    const double nx = float_norm(space, to_real(x));
    out.margin = (nx - line.min_value) / nx;
    out.orthogonal = out.margin <= space.tolerance();
  }
  out.line = line;
  return out;
}

OrthogonalityVerdict subspace_orthogonal(const Space& space, const Vector& x, std::span<const Vector> basis) {
  check_dim(space, x.size(), "x");
  for (const auto& b : basis) check_dim(space, b.size(), "basis vector");
  if (x.is_zero()) throw Error(ErrorCode::ZeroVector, "subspace orthogonality needs x != 0");
  if (rank_of<VectorTag>(basis) != basis.size()) {
    throw Error(ErrorCode::DependentBasis, "subspace basis vectors are linearly dependent");
  }
  OrthogonalityVerdict out;
  out.method = OrthoMethod::Dual;
  out.mode = space.mode();
  const SupportSet s = support_set(space, x);

  if (!space.is_exact()) {
    out.float_witness = s.float_vertices.front();
    out.orthogonal = true;
    for (const auto& b : basis) {
      double m = 0;
      if (space.is_euclidean()) {
        const Rational dot = euclidean_dot(x, b);
        m = std::fabs(to_double(dot)) / (float_norm(space, to_real(x)) * float_norm(space, to_real(b)));
        if (dot != 0) out.orthogonal = false;
        out.mode = ArithmeticMode::Exact;
      } else {
        const RealCoords br = to_real(b);
        m = std::fabs(pair_real(s.float_vertices.front(), br)) / float_norm(space, br);
        if (m > space.tolerance()) out.orthogonal = false;
      }
      out.margin = std::max(out.margin, m);
    }
    return out;
  }

  // Find convex weights on the vertices of J(x) whose combination vanishes
  // on every basis vector.
  lp::Problem prob;
  const std::size_t k = s.vertices.size();
  const std::size_t first = prob.add_variables(k);
  std::vector<lp::Term> sum;
  for (std::size_t i = 0; i < k; ++i) sum.push_back({first + i, 1});
  prob.add_constraint(std::move(sum), lp::Relation::Equal, 1);
  for (const auto& b : basis) {
    std::vector<lp::Term> row;
    for (std::size_t i = 0; i < k; ++i) {
      Rational v = apply(s.vertices[i], b);
      if (v != 0) row.push_back({first + i, std::move(v)});
    }
    prob.add_constraint(std::move(row), lp::Relation::Equal, 0);
  }
  const lp::Solution sol = prob.solve();
  out.orthogonal = sol.feasible();
  if (out.orthogonal) {
    std::vector<Rational> weights(sol.values.begin() + static_cast<std::ptrdiff_t>(first),
                                  sol.values.begin() + static_cast<std::ptrdiff_t>(first + k));
    out.witness = weighted_mean<FunctionalTag>(s.vertices, weights);
  }
  return out;
}

}  // namespace bjlevel
