#pragma once

#include "bjlevel/space.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bjlevel {

/// Largest dimension handled by the general (incidence closure) lattice.
inline constexpr std::size_t kMaxLatticeDim = 6;

/// A proper face of a polyhedral unit ball, stored by incidence.
struct Face {
  /// Sorted indices into Space::ball_vertices() of the vertices on the face.
  std::vector<std::size_t> vertex_ids;
  int dim = 0;
  /// Sorted indices into Space::dual_vertices() of the facets containing it.
  std::vector<std::size_t> functional_ids;

  friend bool operator==(const Face&, const Face&) = default;
};

struct FaceCensus {
  std::vector<std::size_t> counts;  // |F_k| for k = 0 .. n-1
  std::size_t total = 0;
};

/// All proper faces ordered by (dim, vertex_ids). Cubes and cross-polytopes
/// are generated from sign patterns; other balls by closing the facet
/// incidence sets under intersection.
std::vector<Face> face_lattice(const Space& space);

/// Closed forms for l1 and l-inf, lattice count otherwise.
FaceCensus face_census(const Space& space);
FaceCensus census_of(std::span<const Face> faces, std::size_t dim);

/// Census of the boundary of conv(points) for a full-dimensional symmetric
/// point set in R^m (redundant points are dropped first).
FaceCensus polytope_census(std::span<const Vector> points);

/// The face containing x in its relative interior (requires ||x|| = 1).
Face minimal_face(const Space& space, const Vector& x);

/// Decided independently of minimal_face: x is a convex combination of the
/// vertices of F with every weight bounded below by a positive margin.
bool is_relative_interior(const Space& space, const Vector& x, const Face& face);

std::vector<Vector> extreme_points(const Space& space);
std::vector<Vector> face_vertices(const Space& space, const Face& face);
Vector face_centroid(const Space& space, const Face& face);

/// Index of the face -F (the antipodal face) in a lattice.
std::size_t antipodal_index(const Space& space, std::span<const Face> lattice, std::size_t index);

}  // namespace bjlevel
