#include "bjlevel/levelvec.hpp"

#include "bjlevel/lp.hpp"
#include "bjlevel/oracle.hpp"
#include "bjlevel/orthogonality.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bjlevel {

namespace {

ArithmeticMode operator_mode(const Operator& t) {
  const bool d = t.domain().is_exact();
  const bool c = t.codomain().is_exact();
  if (d != c) {
    throw Error(ErrorCode::MixedArithmetic, "operator mixes exact and float spaces: " + t.domain().describe() +
                                                " -> " + t.codomain().describe());
  }
  return d ? ArithmeticMode::Exact : ArithmeticMode::Float;
}

bool both_euclidean(const Operator& t) { return t.domain().is_euclidean() && t.codomain().is_euclidean(); }

void require_nonzero(const Vector& x, const char* op) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroVector, std::string(op) + " needs x != 0");
}

Rational square_sum(const Vector& v) {
  Rational s = 0;
  for (const auto& c : v) s += c * c;
  return s;
}

RealCoords real_pullback(const Operator& t, const RealCoords& g) {
  const Matrix& m = t.matrix();
  RealCoords out(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double gr = g[r];
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += to_double(m(r, c)) * gr;
  }
  return out;
}

// Float path: the unique functionals at x and Tx and the defect of
// T^x g = r f.
struct Alignment {
  RealCoords f;
  RealCoords g;
  RealCoords w;  // T^x g
  double ratio = 0;
  double residual = 0;
  bool aligned = false;
};

Alignment float_alignment(const Operator& t, const Vector& x, const Vector& tx) {
  Alignment a;
  a.f = support_set(t.domain(), x).float_vertices.front();
  a.g = support_set(t.codomain(), tx).float_vertices.front();
  a.w = real_pullback(t, a.g);
  a.ratio = float_norm(t.codomain(), to_real(tx)) / float_norm(t.domain(), to_real(x));
  for (std::size_t i = 0; i < a.f.size(); ++i) a.residual = std::max(a.residual, std::fabs(a.w[i] - a.ratio * a.f[i]));
  a.aligned = a.residual <= t.domain().tolerance() * (1 + a.ratio);
  return a;
}

// Convex weights mu over `gs` (pulled back through T) and, when `fs` has more
// than one entry, lambda over `fs`, with sum mu_j T^x g_j = r sum lambda_i f_i.
struct DualMatch {
  std::vector<Rational> lambda;
  std::vector<Rational> mu;
};

std::optional<DualMatch> match_duals(const Operator& t, std::span<const Functional> fs,
                                     std::span<const Functional> gs, const Rational& r) {
  std::vector<Functional> pulled;
  pulled.reserve(gs.size());
  for (const auto& g : gs) pulled.push_back(t.pullback(g));

  lp::Problem prob;
  const std::size_t lam = prob.add_variables(fs.size());
  const std::size_t mu = prob.add_variables(gs.size());
  std::vector<lp::Term> s1, s2;
  for (std::size_t i = 0; i < fs.size(); ++i) s1.push_back({lam + i, 1});
  for (std::size_t j = 0; j < gs.size(); ++j) s2.push_back({mu + j, 1});
  prob.add_constraint(std::move(s1), lp::Relation::Equal, 1);
  prob.add_constraint(std::move(s2), lp::Relation::Equal, 1);
  const std::size_t n = t.domain().dim();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<lp::Term> row;
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (pulled[j][c] != 0) row.push_back({mu + j, pulled[j][c]});
    }
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (fs[i][c] != 0) row.push_back({lam + i, -r * fs[i][c]});
    }
    prob.add_constraint(std::move(row), lp::Relation::Equal, 0);
  }
  const lp::Solution sol = prob.solve();
  if (!sol.feasible()) return std::nullopt;
  DualMatch m;
  m.lambda.assign(sol.values.begin() + static_cast<std::ptrdiff_t>(lam),
                  sol.values.begin() + static_cast<std::ptrdiff_t>(lam + fs.size()));
  m.mu.assign(sol.values.begin() + static_cast<std::ptrdiff_t>(mu),
              sol.values.begin() + static_cast<std::ptrdiff_t>(mu + gs.size()));
  return m;
}

// y with f(y) = 0 and sign * g(Ty) >= 1 for every vertex g of J(Tx), of
// minimal l1 size.
std::optional<Vector> separating_direction(const Operator& t, const Functional& f, std::span<const Functional> gs,
                                           int sign) {
  const std::size_t n = t.domain().dim();
  lp::Problem prob;
  const std::size_t y = prob.add_variables(n, true);
  const std::size_t u = prob.add_variables(n);
  std::vector<lp::Term> on_kernel, cost;
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] != 0) on_kernel.push_back({y + i, f[i]});
    prob.add_constraint({{u + i, 1}, {y + i, -1}}, lp::Relation::GreaterEqual, 0);
    prob.add_constraint({{u + i, 1}, {y + i, 1}}, lp::Relation::GreaterEqual, 0);
    cost.push_back({u + i, 1});
  }
  prob.add_constraint(std::move(on_kernel), lp::Relation::Equal, 0);
  for (const auto& g : gs) {
    const Functional h = t.pullback(g);
    std::vector<lp::Term> row;
    for (std::size_t i = 0; i < n; ++i) {
      if (h[i] != 0) row.push_back({y + i, h[i]});
    }
    prob.add_constraint(std::move(row), sign > 0 ? lp::Relation::GreaterEqual : lp::Relation::LessEqual,
                        Rational(sign));
  }
  prob.minimize(std::move(cost));
  const lp::Solution sol = prob.solve();
  if (sol.status != lp::Status::Optimal) return std::nullopt;
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = sol.values[y + i];
  return out;
}

Vector rationalize(const RealCoords& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

}  // namespace

std::optional<LevelCertificate> is_level_vector(const Operator& t, const Vector& x) {
  check_dim(t.domain(), x.size(), "x");
  require_nonzero(x, "is_level_vector");
  const ArithmeticMode mode = operator_mode(t);
  LevelCertificate cert;
  cert.x = x;
  cert.mode = mode;
  const Vector tx = t(x);
  if (tx.is_zero()) {
    cert.degenerate = true;
    cert.level_number = Rational(0);
    return cert;
  }

  if (mode == ArithmeticMode::Exact) {
    const SupportSet jx = support_set(t.domain(), x);
    const SupportSet jtx = support_set(t.codomain(), tx);
    const Rational r = exact_norm(t.codomain(), tx) / exact_norm(t.domain(), x);
    const auto m = match_duals(t, jx.vertices, jtx.vertices, r);
    if (!m) return std::nullopt;
    cert.f = weighted_mean<FunctionalTag>(jx.vertices, m->lambda);
    cert.g = weighted_mean<FunctionalTag>(jtx.vertices, m->mu);
    if (t.pullback(*cert.g) != r * *cert.f) throw InternalError("level certificate fails T^x g = r f");
    cert.level_number = r * r;
    cert.level_value = to_double(*cert.level_number);
    return cert;
  }

  if (both_euclidean(t)) {
    // J(x) = {x/||x||}: level iff T^T T x = k x with k = ||Tx||^2/||x||^2.
    const Rational k = square_sum(tx) / square_sum(x);
    const Vector w = as_vector(t.pullback(as_functional(tx)));
    if (w != k * x) return std::nullopt;
    const double nx = std::sqrt(to_double(square_sum(x)));
    const double ntx = std::sqrt(to_double(square_sum(tx)));
    RealCoords f = to_real(x), g = to_real(tx);
    for (auto& c : f) c /= nx;
    for (auto& c : g) c /= ntx;
    cert.float_f = std::move(f);
    cert.float_g = std::move(g);
    cert.level_number = k;
    cert.level_value = to_double(k);
    return cert;
  }

  const Alignment a = float_alignment(t, x, tx);
  if (!a.aligned) return std::nullopt;
  cert.float_f = a.f;
  cert.float_g = a.g;
  cert.residual = a.residual;
  cert.level_value = a.ratio * a.ratio;
  return cert;
}

Rational level_number(const Operator& t, const Vector& x) {
  const auto cert = is_level_vector(t, x);
  if (!cert) throw Error(ErrorCode::NotLevelVector, format_coords(x) + " is not a level vector");
  if (!cert->level_number) {
    throw Error(ErrorCode::MixedArithmetic, "level number is not exact on " + t.domain().describe());
  }
  return *cert->level_number;
}

DirectionalResult preserves_bj_directional(const Operator& t, const Vector& x, const Functional& f) {
  check_dim(t.domain(), x.size(), "x");
  check_dim(t.domain(), f.size(), "functional");
  require_nonzero(x, "preserves_bj_directional");
  const ArithmeticMode mode = operator_mode(t);
  DirectionalResult out;
  const Vector tx = t(x);

  if (mode == ArithmeticMode::Exact) {
    if (!is_supporting(t.domain(), x, f)) {
      throw Error(ErrorCode::NotSupporting, format_coords(f) + " is not in J(" + format_coords(x) + ")");
    }
    if (tx.is_zero()) {
      out.holds = true;
      return out;
    }
    const SupportSet jtx = support_set(t.codomain(), tx);
    const Rational r = exact_norm(t.codomain(), tx) / exact_norm(t.domain(), x);
    const Functional fs[] = {f};
    const auto m = match_duals(t, fs, jtx.vertices, r);
    out.holds = m.has_value();
    if (m) out.g = weighted_mean<FunctionalTag>(jtx.vertices, m->mu);
    return out;
  }

  const double tol = t.domain().tolerance();
  const RealCoords fr = to_real(f);
  const double nx = float_norm(t.domain(), to_real(x));
  if (std::fabs(pair_real(fr, to_real(x)) - nx) > tol * nx || std::fabs(float_dual_norm(t.domain(), fr) - 1) > tol) {
    throw Error(ErrorCode::NotSupporting, format_coords(f) + " is not in J(" + format_coords(x) + ")");
  }
  if (tx.is_zero()) {
    out.holds = true;
    return out;
  }
  Alignment a = float_alignment(t, x, tx);
  double residual = 0;
  for (std::size_t i = 0; i < fr.size(); ++i) residual = std::max(residual, std::fabs(a.w[i] - a.ratio * fr[i]));
  out.holds = residual <= tol * (1 + a.ratio);
  if (out.holds) out.float_g = a.g;
  return out;
}

PreservationReport preserves_bj_at(const Operator& t, const Vector& x) {
  check_dim(t.domain(), x.size(), "x");
  require_nonzero(x, "preserves_bj_at");
  PreservationReport out;
  out.mode = operator_mode(t);
  const Vector tx = t(x);
  if (tx.is_zero()) {
    out.holds = true;
    return out;
  }

  if (out.mode == ArithmeticMode::Exact) {
    const SupportSet jx = support_set(t.domain(), x);
    const SupportSet jtx = support_set(t.codomain(), tx);
    const Rational r = exact_norm(t.codomain(), tx) / exact_norm(t.domain(), x);
    for (const auto& f : jx.vertices) {
      ++out.checked_functionals;
      const Functional fs[] = {f};
      if (match_duals(t, fs, jtx.vertices, r)) continue;
      out.failing_functional = f;
      auto y = separating_direction(t, f, jtx.vertices, 1);
      if (!y) y = separating_direction(t, f, jtx.vertices, -1);
      if (!y) throw InternalError("no separating direction for a failing supporting functional");
      const auto before = bj_orthogonal(t.domain(), x, *y);
      const auto after = bj_orthogonal(t.codomain(), tx, t(*y));
      if (!before.orthogonal || after.orthogonal) throw InternalError("counterexample does not verify");
      out.counterexample = PreservationCounterexample{*y, after.margin};
      return out;
    }
    out.holds = true;
    return out;
  }

  out.checked_functionals = 1;
  Vector y;
  if (both_euclidean(t)) {
    const Vector w = as_vector(t.pullback(as_functional(tx)));
    const Rational k = square_sum(tx) / square_sum(x);
    if (w == k * x) {
      out.holds = true;
      return out;
    }
    Rational xw = 0;
    for (std::size_t i = 0; i < x.size(); ++i) xw += x[i] * w[i];
    y = w - (xw / square_sum(x)) * x;
    RealCoords f = to_real(x);
    const double nx = std::sqrt(to_double(square_sum(x)));
    for (auto& c : f) c /= nx;
    out.float_failing_functional = std::move(f);
  } else {
    const Alignment a = float_alignment(t, x, tx);
    if (a.aligned) {
      out.holds = true;
      return out;
    }
    const double fw = pair_real(a.f, a.w);
    const double ff = pair_real(a.f, a.f);
    RealCoords yr(a.w.size());
    for (std::size_t i = 0; i < yr.size(); ++i) yr[i] = a.w[i] - (fw / ff) * a.f[i];
    y = rationalize(yr);
    out.float_failing_functional = a.f;
  }
  const auto after = bj_orthogonal(t.codomain(), tx, t(y));
  out.counterexample = PreservationCounterexample{y, after.margin};
  return out;
}

bool kernel_condition(const Operator& t, const Vector& x) {
  check_dim(t.domain(), x.size(), "x");
  require_nonzero(x, "kernel_condition");
  if (t(x).is_zero()) return true;
  const auto basis = kernel_basis(t);
  if (basis.empty()) return true;
  return subspace_orthogonal(t.domain(), x, basis).orthogonal;
}

LevelNumberReport enumerate_level_numbers(const Operator& t, std::size_t samples_per_face, std::uint64_t seed) {
  const Space& dom = t.domain();
  if (!dom.is_exact()) throw Error(ErrorCode::NotPolyhedral, "level enumeration needs a polyhedral domain");
  LevelNumberReport report;
  report.samples_per_face = samples_per_face;
  report.seed = seed;
  const auto lattice = face_lattice(dom);
  std::set<Rational> values;

  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (antipodal_index(dom, lattice, i) < i) continue;
    FaceLevelRecord rec;
    rec.face_index = i;
    rec.face = lattice[i];
    const auto verts = face_vertices(dom, lattice[i]);
    std::vector<Vector> pts{face_centroid(dom, lattice[i])};
    SampleStream rng = SampleStream::derive(seed, i);
    for (std::size_t s = 0; s < samples_per_face; ++s) {
      std::vector<Rational> w(verts.size());
      for (auto& wi : w) wi = rng.uniform(1, 9);
      pts.push_back(weighted_mean<VectorTag>(verts, w));
    }
    for (auto& p : pts) {
      PointRecord pr;
      if (auto cert = is_level_vector(t, p)) {
        pr.level_number = cert->level_number;
        values.insert(*cert->level_number);
        if (!rec.level_number) rec.level_number = cert->level_number;
      }
      pr.point = std::move(p);
      rec.points.push_back(std::move(pr));
    }
    report.per_face.push_back(std::move(rec));
  }
  report.values.assign(values.begin(), values.end());
  if (dom.dim() == t.codomain().dim()) report.bound = level_count_bound(t);
  return report;
}

Rational level_count_bound(const Operator& t) {
  const Space& dom = t.domain();
  if (!dom.is_exact()) throw Error(ErrorCode::NotPolyhedral, "level count bound needs a polyhedral domain");
  if (dom.dim() != t.codomain().dim()) {
    throw Error(ErrorCode::DimensionMismatch, "level count bound is defined for operators on one space");
  }
  const FaceCensus f = face_census(dom);
  const auto kernel = kernel_basis(t);
  if (kernel.empty()) return Rational(f.total) / 2;

  // Ball of ker T in kernel coordinates is {c : phi(N c) <= 1}; its polar is
  // conv{N^T phi}, whose k-faces correspond to the (m-1-k)-faces of the ball.
  const std::size_t m = kernel.size();
  std::vector<Vector> normals;
  for (const auto& phi : dom.dual_vertices()) {
    Vector p(m);
    for (std::size_t j = 0; j < m; ++j) p[j] = apply(phi, kernel[j]);
    normals.push_back(std::move(p));
  }
  const FaceCensus polar = polytope_census(normals);
  return Rational(f.total) / 2 - Rational(polar.total) / 2 + 1;
}

}  // namespace bjlevel
