#include "bjlevel/faces.hpp"

#include "bjlevel/lp.hpp"
#include "bjlevel/support.hpp"

#include <algorithm>
#include <set>

namespace bjlevel {

namespace {

void require_polyhedral(const Space& space) {
  if (!space.is_exact()) throw Error(ErrorCode::NotPolyhedral, "face structure needs a polyhedral ball, got " + space.describe());
}

bool face_less(const Face& a, const Face& b) {
  return a.dim != b.dim ? a.dim < b.dim : a.vertex_ids < b.vertex_ids;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t power3(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 3;
  return r;
}

// Sign pattern s in {-1,0,1}^n from its base-3 code (digit 0 -> 0, 1 -> +1, 2 -> -1).
std::vector<int> sign_pattern(std::size_t code, std::size_t n) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i, code /= 3) s[i] = code % 3 == 0 ? 0 : (code % 3 == 1 ? 1 : -1);
  return s;
}

// Cube face {v : v_i = s_i for s_i != 0}; facets are -/+ e_i in the dual cross-polytope.
Face cube_face(const std::vector<int>& s) {
  Face f;
  const std::size_t n = s.size();
  std::size_t fixed = 0;
  std::vector<std::size_t> free_bits;
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == 0) {
      free_bits.push_back(i);
    } else {
      if (s[i] < 0) fixed |= std::size_t{1} << i;
      f.functional_ids.push_back(2 * i + (s[i] < 0 ? 1 : 0));
    }
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << free_bits.size()); ++mask) {
    std::size_t b = fixed;
    for (std::size_t k = 0; k < free_bits.size(); ++k) {
      if ((mask >> k) & 1) b |= std::size_t{1} << free_bits[k];
    }
    f.vertex_ids.push_back(b);
  }
  std::sort(f.vertex_ids.begin(), f.vertex_ids.end());
  f.dim = static_cast<int>(free_bits.size());
  return f;
}

// Cross-polytope face conv{s_i e_i : s_i != 0}; facets are the sign vectors extending s.
Face cross_face(const std::vector<int>& s) {
  Face f;
  const std::size_t n = s.size();
  std::size_t fixed = 0;
  std::vector<std::size_t> free_bits;
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == 0) {
      free_bits.push_back(i);
    } else {
      f.vertex_ids.push_back(2 * i + (s[i] < 0 ? 1 : 0));
      if (s[i] < 0) fixed |= std::size_t{1} << i;
    }
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << free_bits.size()); ++mask) {
    std::size_t b = fixed;
    for (std::size_t k = 0; k < free_bits.size(); ++k) {
      if ((mask >> k) & 1) b |= std::size_t{1} << free_bits[k];
    }
    f.functional_ids.push_back(b);
  }
  std::sort(f.functional_ids.begin(), f.functional_ids.end());
  f.dim = static_cast<int>(f.vertex_ids.size()) - 1;
  return f;
}

std::vector<std::size_t> incidence(const Functional& phi, std::span<const Vector> vertices) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (apply(phi, vertices[i]) == 1) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> containing_facets(std::span<const Functional> facets, std::span<const Vector> vertices,
                                           const std::vector<std::size_t>& ids) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < facets.size(); ++j) {
    bool all = true;
    for (auto i : ids) {
      if (apply(facets[j], vertices[i]) != 1) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(j);
  }
  return out;
}

std::vector<Vector> pick(std::span<const Vector> vertices, const std::vector<std::size_t>& ids) {
  std::vector<Vector> out;
  out.reserve(ids.size());
  for (auto i : ids) out.push_back(vertices[i]);
  return out;
}

std::vector<Face> incidence_lattice(std::span<const Vector> vertices, std::span<const Functional> facets) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> frontier;
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& phi : facets) {
    auto s = incidence(phi, vertices);
    facet_sets.push_back(s);
    if (seen.insert(s).second) frontier.push_back(std::move(s));
  }
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& a : frontier) {
      for (const auto& b : facet_sets) {
        std::vector<std::size_t> c;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
        if (!c.empty() && seen.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Face> out;
  out.reserve(seen.size());
  for (const auto& ids : seen) {
    Face f;
    f.vertex_ids = ids;
    f.dim = affine_dimension(pick(vertices, ids));
    f.functional_ids = containing_facets(facets, vertices, ids);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), face_less);
  return out;
}

void require_unit(const Space& space, const Vector& x) {
  check_dim(space, x.size());
  if (exact_norm(space, x) != 1) throw Error(ErrorCode::NotUnitVector, "expected a unit vector, got " + format_coords(x));
}

}  // namespace

std::vector<Face> face_lattice(const Space& space) {
  require_polyhedral(space);
  const std::size_t n = space.dim();
  std::vector<Face> out;
  if (space.shape() == BallShape::Hypercube || space.shape() == BallShape::CrossPolytope) {
    const std::size_t codes = power3(n);
    out.reserve(codes - 1);
    for (std::size_t code = 1; code < codes; ++code) {
      const auto s = sign_pattern(code, n);
      out.push_back(space.shape() == BallShape::Hypercube ? cube_face(s) : cross_face(s));
    }
    std::sort(out.begin(), out.end(), face_less);
    return out;
  }
  if (n > kMaxLatticeDim) {
    throw Error(ErrorCode::TooLarge, "face lattice of a general polytope is limited to dimension " +
                                         std::to_string(kMaxLatticeDim));
  }
  return incidence_lattice(space.ball_vertices(), space.dual_vertices());
}

FaceCensus census_of(std::span<const Face> faces, std::size_t dim) {
  FaceCensus c;
  c.counts.assign(dim, 0);
  for (const auto& f : faces) {
    if (f.dim < 0 || static_cast<std::size_t>(f.dim) >= dim) throw InternalError("face dimension out of range");
    ++c.counts[static_cast<std::size_t>(f.dim)];
  }
  for (auto k : c.counts) c.total += k;
  return c;
}

FaceCensus face_census(const Space& space) {
  require_polyhedral(space);
  const std::size_t n = space.dim();
  if (space.shape() == BallShape::Hypercube || space.shape() == BallShape::CrossPolytope) {
    FaceCensus c;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t count = space.shape() == BallShape::Hypercube ? binomial(n, k) << (n - k)
                                                                      : binomial(n, k + 1) << (k + 1);
      c.counts.push_back(count);
      c.total += count;
    }
    return c;
  }
  const auto lattice = face_lattice(space);
  return census_of(lattice, n);
}

FaceCensus polytope_census(std::span<const Vector> points) {
  if (points.empty()) throw Error(ErrorCode::MalformedInput, "empty point set");
  const std::size_t m = points.front().size();
  if (m > kMaxLatticeDim) throw Error(ErrorCode::TooLarge, "polytope census is limited to dimension 6");
  const auto vertices = extreme_subset(points);
  const auto facets = polar_vertices(vertices);
  const auto lattice = incidence_lattice(vertices, facets);
  return census_of(lattice, m);
}

Face minimal_face(const Space& space, const Vector& x) {
  require_polyhedral(space);
  require_unit(space, x);
  const auto& vertices = space.ball_vertices();
  const auto& dual = space.dual_vertices();
  const SupportSet s = support_set(space, x);
  Face f;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    bool on = true;
    for (auto j : s.dual_indices) {
      if (apply(dual[j], vertices[i]) != 1) {
        on = false;
        break;
      }
    }
    if (on) f.vertex_ids.push_back(i);
  }
  f.functional_ids = containing_facets(dual, vertices, f.vertex_ids);
  f.dim = affine_dimension(pick(vertices, f.vertex_ids));
  return f;
}

bool is_relative_interior(const Space& space, const Vector& x, const Face& face) {
  require_polyhedral(space);
  require_unit(space, x);
  const auto pts = face_vertices(space, face);
  lp::Problem prob;
  const std::size_t k = pts.size();
  const std::size_t mu = prob.add_variables(k);
  const std::size_t t = prob.add_variable(true);
  std::vector<lp::Term> sum;
  for (std::size_t i = 0; i < k; ++i) {
    sum.push_back({mu + i, 1});
    prob.add_constraint({{mu + i, 1}, {t, -1}}, lp::Relation::GreaterEqual, 0);
  }
  prob.add_constraint(std::move(sum), lp::Relation::Equal, 1);
  for (std::size_t c = 0; c < x.size(); ++c) {
    std::vector<lp::Term> row;
    for (std::size_t i = 0; i < k; ++i) {
      if (pts[i][c] != 0) row.push_back({mu + i, pts[i][c]});
    }
    prob.add_constraint(std::move(row), lp::Relation::Equal, x[c]);
  }
  prob.maximize({{t, 1}});
  const lp::Solution sol = prob.solve();
  return sol.status == lp::Status::Optimal && sol.objective > 0;
}

std::vector<Vector> extreme_points(const Space& space) {
  require_polyhedral(space);
  return space.ball_vertices();
}

std::vector<Vector> face_vertices(const Space& space, const Face& face) {
  require_polyhedral(space);
  const auto& vertices = space.ball_vertices();
  for (auto i : face.vertex_ids) {
    if (i >= vertices.size()) throw Error(ErrorCode::MalformedInput, "face refers to a vertex outside the ball");
  }
  return pick(vertices, face.vertex_ids);
}

Vector face_centroid(const Space& space, const Face& face) {
  const auto pts = face_vertices(space, face);
  if (pts.empty()) throw Error(ErrorCode::MalformedInput, "empty face");
  Vector c(space.dim());
  for (const auto& p : pts) c += p;
  return c / Rational(pts.size());
}

std::size_t antipodal_index(const Space& space, std::span<const Face> lattice, std::size_t index) {
  require_polyhedral(space);
  const auto& vertices = space.ball_vertices();
  const std::size_t n = space.dim();
  auto negate = [&](std::size_t i) -> std::size_t {
    switch (space.shape()) {
      case BallShape::Hypercube:
        return i ^ ((std::size_t{1} << n) - 1);
      case BallShape::CrossPolytope:
        return i ^ 1;
      default:
        for (std::size_t j = 0; j < vertices.size(); ++j) {
          if (vertices[j] == -vertices[i]) return j;
        }
        throw InternalError("ball vertex without antipode");
    }
  };
  Face target;
  target.dim = lattice[index].dim;
  for (auto i : lattice[index].vertex_ids) target.vertex_ids.push_back(negate(i));
  std::sort(target.vertex_ids.begin(), target.vertex_ids.end());
  auto it = std::lower_bound(lattice.begin(), lattice.end(), target, face_less);
  if (it == lattice.end() || it->vertex_ids != target.vertex_ids) throw InternalError("face without antipode");
  return static_cast<std::size_t>(it - lattice.begin());
}

}  // namespace bjlevel
