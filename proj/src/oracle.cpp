#include "bjlevel/oracle.hpp"

#include "bjlevel/orthogonality.hpp"
#include "bjlevel/support.hpp"

#include <algorithm>
#include <cmath>

namespace bjlevel {

SampleStream SampleStream::derive(std::uint64_t seed, std::uint64_t index) {
  SampleStream s(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  s.engine_.discard(1);
  return s;
}

std::int64_t SampleStream::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::MalformedInput, "empty sampling range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next_u32() % span);
}

Rational SampleStream::rational(int max_num, int max_den) {
  const std::int64_t p = uniform(-max_num, max_num);
  const std::int64_t q = uniform(1, max_den);
  return Rational(p) / Rational(q);
}

Vector SampleStream::vector(std::size_t dim, int max_num, int max_den, bool nonzero) {
  Vector v(dim);
  do {
    for (std::size_t i = 0; i < dim; ++i) v[i] = rational(max_num, max_den);
  } while (nonzero && v.is_zero());
  return v;
}

std::vector<Vector> sample_sphere(const Space& space, std::size_t count, std::uint64_t seed) {
  SampleStream rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vector v = rng.vector(space.dim());
    if (space.is_exact()) {
      out.push_back(v / exact_norm(space, v));
      continue;
    }
    RealCoords r = to_real(v);
    const double n = float_norm(space, r);
    Vector u(space.dim());
    for (std::size_t i = 0; i < r.size(); ++i) u[i] = Rational(r[i] / n);
    out.push_back(std::move(u));
  }
  return out;
}

namespace {

void add_breakpoint(std::vector<Rational>& out, const Rational& num, const Rational& den, const Rational& bound) {
  if (den == 0) return;
  Rational l = -num / den;
  if (abs(l) <= bound) out.push_back(std::move(l));
}

}  // namespace

LineMinimum minimize_norm_1d(const Space& space, const Vector& x, const Vector& y) {
  check_dim(space, x.size(), "x");
  check_dim(space, y.size(), "y");
  if (y.is_zero()) throw Error(ErrorCode::ZeroVector, "line minimization needs a nonzero direction");
  LineMinimum out;
  out.mode = space.mode();
  const std::size_t n = x.size();

  if (space.is_exact()) {
    const Rational bound = 2 * exact_norm(space, x) / exact_norm(space, y);
    std::vector<Rational> cand{Rational(0), bound, Rational(-bound)};
    switch (space.shape()) {
      case BallShape::CrossPolytope:
        for (std::size_t i = 0; i < n; ++i) add_breakpoint(cand, x[i], y[i], bound);
        break;
      case BallShape::Hypercube:
        for (std::size_t i = 0; i < n; ++i) {
          add_breakpoint(cand, x[i], y[i], bound);
          for (std::size_t j = i + 1; j < n; ++j) {
            add_breakpoint(cand, x[i] - x[j], y[i] - y[j], bound);
            add_breakpoint(cand, x[i] + x[j], y[i] + y[j], bound);
          }
        }
        break;
      default: {
        const auto& dual = space.dual_vertices();
        std::vector<Rational> fx, fy;
        for (const auto& f : dual) {
          fx.push_back(apply(f, x));
          fy.push_back(apply(f, y));
        }
        for (std::size_t i = 0; i < dual.size(); ++i) {
          for (std::size_t j = i + 1; j < dual.size(); ++j) add_breakpoint(cand, fx[i] - fx[j], fy[i] - fy[j], bound);
        }
        break;
      }
    }
    std::sort(cand.begin(), cand.end(), [](const Rational& a, const Rational& b) {
      const Rational aa = abs(a), ab = abs(b);
      return aa != ab ? aa < ab : a < b;
    });
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    bool first = true;
    for (const auto& l : cand) {
      Rational v = exact_norm(space, x + l * y);
      if (first || v < out.value) {
        out.value = std::move(v);
        out.lambda = l;
        first = false;
      }
    }
    out.lambda_value = to_double(out.lambda);
    out.min_value = to_double(out.value);
    return out;
  }

  const RealCoords xr = to_real(x);
  const RealCoords yr = to_real(y);
  RealCoords buf(n);
  auto eval = [&](double l) {
    for (std::size_t i = 0; i < n; ++i) buf[i] = xr[i] + l * yr[i];
    return float_norm(space, buf);
  };
  const double bound = 2 * float_norm(space, xr) / float_norm(space, yr);
  double lo = -bound;
  double hi = bound;
  const double width = 1e-10 * (2 * bound);
  while (hi - lo > width) {
    const double m1 = lo + (hi - lo) / 3;
    const double m2 = hi - (hi - lo) / 3;
    if (eval(m1) <= eval(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  const double mid = (lo + hi) / 2;
  const double at_mid = eval(mid);
  const double at_zero = eval(0);
  if (at_zero <= at_mid) {
    out.lambda_value = 0;
    out.min_value = at_zero;
  } else {
    out.lambda_value = mid;
    out.min_value = at_mid;
  }
  return out;
}

PreservationSampleReport preservation_sample_check(const Operator& t, const Vector& x, std::size_t count,
                                                   std::uint64_t seed) {
  const Space& dom = t.domain();
  check_dim(dom, x.size(), "x");
  if (x.is_zero()) throw Error(ErrorCode::ZeroVector, "preservation check needs x != 0");
  const SupportSet s = support_set(dom, x);
  const Vector tx = t(x);
  PreservationSampleReport report;
  report.samples = count;

  for (std::size_t k = 0; k < count; ++k) {
    SampleStream rng = SampleStream::derive(seed, k);
    Functional f;
    Vector y;
    if (dom.is_exact()) {
      // Sparse random weights so that single vertices and low faces of J(x) are hit.
      std::vector<Rational> w(s.vertices.size());
      bool any = false;
      for (auto& wi : w) {
        wi = rng.uniform(0, 3) == 0 ? rng.uniform(1, 4) : 0;
        any = any || wi != 0;
      }
      if (!any) w[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(w.size()) - 1))] = 1;
      f = weighted_mean<FunctionalTag>(s.vertices, w);
      const Vector v = rng.vector(x.size());
      y = v - (apply(f, v) / apply(f, x)) * x;
    } else {
      const RealCoords& fr = s.float_vertices.front();
      const RealCoords xr = to_real(x);
      const Vector v = rng.vector(x.size());
      const RealCoords vr = to_real(v);
      const double c = pair_real(fr, vr) / pair_real(fr, xr);
      y = Vector(x.size());
      f = Functional(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = Rational(vr[i] - c * xr[i]);
        f[i] = Rational(fr[i]);
      }
    }
    if (y.is_zero() || tx.is_zero()) continue;
    const Vector ty = t(y);
    if (ty.is_zero()) continue;
    const OrthogonalityVerdict v = bj_orthogonal_oracle(t.codomain(), tx, ty);
    if (!v.orthogonal) report.violations.push_back({y, f, *v.line});
  }
  return report;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, SampleStream& rng, int max_num, int max_den) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.rational(max_num, max_den);
  }
  return m;
}

Matrix signed_permutation(std::size_t n, SampleStream& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
    std::swap(perm[i - 1], perm[j]);
  }
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, perm[i]) = rng.uniform(0, 1) == 0 ? 1 : -1;
  return m;
}

}  // namespace bjlevel
