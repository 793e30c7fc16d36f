#include "bjlevel/isometry.hpp"

#include "bjlevel/oracle.hpp"
#include "bjlevel/orthogonality.hpp"

#include <cmath>

namespace bjlevel {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "certified";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

Rational square_sum(const Vector& v) {
  Rational s = 0;
  for (const auto& c : v) s += c * c;
  return s;
}

bool is_unit(const Space& space, const Vector& x) {
  if (space.is_exact()) return exact_norm(space, x) == 1;
  if (space.is_euclidean() && square_sum(x) == 1) return true;
  return std::fabs(float_norm(space, to_real(x)) - 1) <= space.tolerance();
}

void require_unit(const Space& space, const Vector& x) {
  check_dim(space, x.size());
  if (!is_unit(space, x)) throw Error(ErrorCode::NotUnitVector, format_coords(x) + " is not a unit vector");
}

IsometryReport zero_operator(const Operator& t) {
  IsometryReport r;
  r.verdict = Verdict::Certified;
  r.mode = t.domain().mode();
  r.scale = Rational(0);
  return r;
}

OrthogonalityWitness witness_from(const Vector& x, const PreservationReport& p) {
  if (!p.counterexample) throw InternalError("failed preservation without a counterexample");
  return OrthogonalityWitness{x, p.counterexample->y, p.counterexample->margin};
}

std::optional<Rational> eigenvalue(const Operator& t, const Vector& x) {
  const Vector tx = t(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    const Rational lambda = tx[i] / x[i];
    if (tx == lambda * x) return lambda;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

IsometryReport certify_scalar_isometry_polyhedral(const Operator& t) {
  if (!t.domain().is_exact()) {
    throw Error(ErrorCode::NotPolyhedral, "extreme-point certification needs a polyhedral domain");
  }
  if (!t.codomain().is_exact()) {
    throw Error(ErrorCode::MixedArithmetic, "extreme-point certification needs an exact codomain");
  }
  if (t.is_zero()) return zero_operator(t);
  IsometryReport r;
  r.mode = ArithmeticMode::Exact;
  for (const auto& v : t.domain().ball_vertices()) {
    r.checked_points.push_back(v);
    const PreservationReport p = preserves_bj_at(t, v);
    if (!p.holds) {
      r.verdict = Verdict::Refuted;
      r.scale.reset();
      r.witness = witness_from(v, p);
      return r;
    }
    const Rational ratio = exact_norm(t.codomain(), t(v)) / exact_norm(t.domain(), v);
    if (!r.scale) {
      r.scale = ratio;
    } else if (*r.scale != ratio) {
      throw InternalError("orthogonality is preserved at every extreme point but ||Tv|| varies (" +
                          to_string(*r.scale) + " vs " + to_string(ratio) + ")");
    }
  }
  r.verdict = Verdict::Certified;
  r.scale_value = to_double(*r.scale);
  return r;
}

IsometryReport probe_scalar_isometry_grid(const Operator& t, std::size_t samples, std::uint64_t seed) {
  if (t.is_zero()) return zero_operator(t);
  const Space& dom = t.domain();
  IsometryReport r;
  r.mode = dom.mode();
  const auto points = sample_sphere(dom, samples, seed);
  std::optional<Rational> exact_ratio;
  std::optional<double> float_ratio;
  std::optional<Vector> first;
  bool deviates = false;
  Vector deviant;

  for (const auto& x : points) {
    r.checked_points.push_back(x);
    const auto cert = is_level_vector(t, x);
    if (!cert) {
      r.verdict = Verdict::Refuted;
      r.witness = witness_from(x, preserves_bj_at(t, x));
      return r;
    }
    if (deviates) continue;
    if (dom.is_exact()) {
      const Rational ratio = exact_norm(t.codomain(), t(x));
      if (!exact_ratio) {
        exact_ratio = ratio;
        first = x;
      } else if (ratio != *exact_ratio) {
        deviates = true;
        deviant = x;
      }
    } else {
      const double ratio = float_norm(t.codomain(), to_real(t(x))) / float_norm(dom, to_real(x));
      if (!float_ratio) {
        float_ratio = ratio;
        first = x;
      } else if (std::fabs(ratio - *float_ratio) > dom.tolerance() * std::max(1.0, *float_ratio)) {
        deviates = true;
        deviant = x;
      }
    }
  }

  if (deviates) {
    r.verdict = Verdict::Refuted;
    if (dom.is_exact()) {
      // Supplies an orthogonality witness.
      IsometryReport c = certify_scalar_isometry_polyhedral(t);
      if (c.verdict != Verdict::Refuted) throw InternalError("ratio deviation on a certified operator");
      r.witness = c.witness;
    }
    r.ratio_witness = std::make_pair(*first, deviant);
    return r;
  }
  r.verdict = Verdict::Inconclusive;
  r.positive_evidence = !points.empty();
  if (exact_ratio) {
    r.scale = exact_ratio;
    r.scale_value = to_double(*exact_ratio);
  } else if (float_ratio) {
    r.scale_value = *float_ratio;
  }
  return r;
}

ScalarIdentityReport scalar_identity_test(const Operator& t, std::span<const Vector> candidates) {
  const Space& space = t.domain();
  if (!(t.codomain() == space)) throw Error(ErrorCode::DimensionMismatch, "scalar identity test needs T on one space");
  if (candidates.size() != space.dim()) {
    throw Error(ErrorCode::MalformedInput, "expected " + std::to_string(space.dim()) + " candidates, got " +
                                               std::to_string(candidates.size()));
  }
  for (const auto& x : candidates) require_unit(space, x);

  ScalarIdentityReport r;
  r.independent = rank_of<VectorTag>(candidates) == candidates.size();
  bool eigen = true;
  for (const auto& x : candidates) {
    r.eigenvalues.push_back(eigenvalue(t, x));
    eigen = eigen && r.eigenvalues.back().has_value();
  }
  const Vector& x1 = candidates.front();
  r.conditions[0] = eigen;
  r.conditions[1] = !t(x1).is_zero() && is_smooth(space, x1);
  r.conditions[2] = is_level_vector(t, x1).has_value();
  bool apart = true;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    apart = apart && !bj_orthogonal(space, x1, candidates[i]).orthogonal;
  }
  r.conditions[3] = apart;
  for (int c = 0; c < 4; ++c) {
    if (!r.conditions[static_cast<std::size_t>(c)]) r.failed.push_back(c + 1);
  }
  if (r.independent && r.failed.empty()) {
    r.lambda = r.eigenvalues.front();
    if (!(t.matrix() == Matrix::identity(space.dim()).scaled(*r.lambda))) {
      throw InternalError("all four conditions hold but T is not " + to_string(*r.lambda) + " times the identity");
    }
    r.certified = true;
  }
  return r;
}

AdjointTransfer adjoint_level_transfer(const Operator& t, const Vector& x) {
  require_unit(t.domain(), x);
  const Vector tx = t(x);
  if (tx.is_zero()) throw Error(ErrorCode::ZeroVector, "adjoint transfer needs Tx != 0");
  auto cert = is_level_vector(t, x);
  if (!cert) throw Error(ErrorCode::NotLevelVector, format_coords(x) + " is not a level vector");
  const Operator adj = adjoint(t);

  AdjointTransfer out{Vector(), std::nullopt, *cert, LevelCertificate{}, std::nullopt, 0};
  if (cert->g) {
    out.psi = as_vector(*cert->g);
  } else if (t.codomain().is_euclidean()) {
    out.psi = tx;
    out.float_psi = cert->float_g;
  } else {
    out.psi = Vector(tx.size());
    for (std::size_t i = 0; i < tx.size(); ++i) out.psi[i] = Rational((*cert->float_g)[i]);
    out.float_psi = cert->float_g;
  }
  auto dual = is_level_vector(adj, out.psi);
  if (!dual) throw InternalError("psi is not a level vector of the adjoint");
  out.dual = *dual;
  if (cert->level_number) {
    if (!dual->level_number || *dual->level_number != *cert->level_number) {
      throw InternalError("level numbers of T and its adjoint differ");
    }
    out.level_number = cert->level_number;
    out.level_value = to_double(*cert->level_number);
  } else {
    if (std::fabs(dual->level_value - cert->level_value) > t.domain().tolerance() * std::max(1.0, cert->level_value)) {
      throw InternalError("level numbers of T and its adjoint differ");
    }
    out.level_value = cert->level_value;
  }
  return out;
}

}  // namespace bjlevel
