#pragma once

#include "bjlevel/space.hpp"

#include <vector>

namespace bjlevel {

/// A linear map between two spaces, stored as an m x n exact matrix
/// (n = dim(domain), m = dim(codomain)).
class Operator {
 public:
  Operator(Matrix matrix, Space domain, Space codomain);
  /// Endomorphism of `space`.
  Operator(Matrix matrix, const Space& space) : Operator(std::move(matrix), space, space) {}

  const Matrix& matrix() const noexcept { return matrix_; }
  const Space& domain() const noexcept { return domain_; }
  const Space& codomain() const noexcept { return codomain_; }

  Vector operator()(const Vector& x) const;
  /// (T^x g) as a functional on the domain: g composed with T.
  Functional pullback(const Functional& g) const;

  bool is_zero() const { return matrix_.is_zero(); }
  Operator scaled(const Rational& s) const { return Operator(matrix_.scaled(s), domain_, codomain_); }

 private:
  Matrix matrix_;
  Space domain_;
  Space codomain_;
};

/// T^x : codomain* -> domain*, represented by the transposed matrix.
Operator adjoint(const Operator& t);

std::vector<Vector> kernel_basis(const Operator& t);
bool is_injective(const Operator& t);

}  // namespace bjlevel
