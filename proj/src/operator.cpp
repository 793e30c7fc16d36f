#include "bjlevel/operator.hpp"

namespace bjlevel {

Operator::Operator(Matrix matrix, Space domain, Space codomain)
    : matrix_(std::move(matrix)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (matrix_.cols() != domain_.dim() || matrix_.rows() != codomain_.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                    " but maps " + domain_.describe() + " to " + codomain_.describe());
  }
}

Vector Operator::operator()(const Vector& x) const {
  check_dim(domain_, x.size());
  return matrix_ * x;
}

Functional Operator::pullback(const Functional& g) const {
  check_dim(codomain_, g.size(), "functional");
  Functional out(matrix_.cols());
  for (std::size_t c = 0; c < matrix_.cols(); ++c) {
    Rational s = 0;
    for (std::size_t r = 0; r < matrix_.rows(); ++r) s += matrix_(r, c) * g[r];
    out[c] = s;
  }
  return out;
}

Operator adjoint(const Operator& t) {
  return Operator(t.matrix().transpose(), dual_space(t.codomain()), dual_space(t.domain()));
}

std::vector<Vector> kernel_basis(const Operator& t) { return nullspace(t.matrix()); }

bool is_injective(const Operator& t) { return rank(t.matrix()) == t.matrix().cols(); }

}  // namespace bjlevel
