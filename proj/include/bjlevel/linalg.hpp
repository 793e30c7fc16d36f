#pragma once

#include "bjlevel/error.hpp"
#include "bjlevel/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bjlevel {

/// A coordinate list of exact rationals. The tag keeps primal vectors and
/// dual functionals apart at compile time; the pairing `apply` is the only
/// operation that mixes them.
template <class Tag>
class Coords {
 public:
  Coords() = default;
  explicit Coords(std::size_t dim) : c_(dim, Rational(0)) {}
  explicit Coords(std::vector<Rational> coords) : c_(std::move(coords)) {}
  Coords(std::initializer_list<Rational> coords) : c_(coords) {}

  std::size_t size() const noexcept { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }
  const std::vector<Rational>& coords() const noexcept { return c_; }

  bool is_zero() const {
    for (const auto& v : c_) {
      if (v != 0) return false;
    }
    return true;
  }

  Coords& operator+=(const Coords& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Coords& operator-=(const Coords& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Coords& operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Coords& operator/=(const Rational& s) {
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend Coords operator+(Coords a, const Coords& b) { return a += b; }
  friend Coords operator-(Coords a, const Coords& b) { return a -= b; }
  friend Coords operator*(const Rational& s, Coords a) { return a *= s; }
  friend Coords operator*(Coords a, const Rational& s) { return a *= s; }
  friend Coords operator/(Coords a, const Rational& s) { return a /= s; }
  friend Coords operator-(Coords a) { return a *= Rational(-1); }

  friend bool operator==(const Coords& a, const Coords& b) { return a.c_ == b.c_; }
  friend bool operator<(const Coords& a, const Coords& b) { return a.c_ < b.c_; }

 private:
  void check_same(const Coords& o) const {
    if (o.size() != size()) {
      throw Error(ErrorCode::DimensionMismatch, "coordinate lists of different dimension");
    }
  }

  std::vector<Rational> c_;
};

struct VectorTag {};
struct FunctionalTag {};

using Vector = Coords<VectorTag>;
using Functional = Coords<FunctionalTag>;

/// Float-path coordinates (lp spaces with 1 < p < inf).
using RealCoords = std::vector<double>;

/// Standard pairing f(x) = sum f_i x_i.
Rational apply(const Functional& f, const Vector& x);
double pair_real(std::span<const double> f, std::span<const double> x);

/// A functional on X is a vector of X*, and vice versa.
inline Functional as_functional(const Vector& v) { return Functional(v.coords()); }
inline Vector as_vector(const Functional& f) { return Vector(f.coords()); }

RealCoords to_real(const Vector& v);
RealCoords to_real(const Functional& f);

/// Convex combination sum w_i p_i / sum w_i (weights nonnegative, not all zero).
template <class Tag>
Coords<Tag> weighted_mean(std::span<const Coords<Tag>> points, std::span<const Rational> weights);

/// Comma separated "1,1/2,0" form.
template <class Tag>
std::string format_coords(const Coords<Tag>& v);

Vector parse_vector(std::string_view text);

/// Dense row-major exact matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  Matrix transpose() const;
  Vector operator*(const Vector& x) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Rational& s) const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

/// Reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m);

std::size_t rank(Matrix m);

/// Rank of a list of vectors (as rows).
template <class Tag>
std::size_t rank_of(std::span<const Coords<Tag>> rows);

/// Dimension of the affine hull of the points (-1 for the empty set).
int affine_dimension(std::span<const Vector> points);

/// Basis of {x : m x = 0}, one vector per free column, in column order.
std::vector<Vector> nullspace(const Matrix& m);

/// Solves the square system m x = b; nullopt if m is singular.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

}  // namespace bjlevel
