#include "bjlevel/linalg.hpp"

#include <sstream>

namespace bjlevel {

Rational apply(const Functional& f, const Vector& x) {
  if (f.size() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "functional of dimension " + std::to_string(f.size()) +
                    " applied to vector of dimension " + std::to_string(x.size()));
  }
  Rational s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * x[i];
  return s;
}

double pair_real(std::span<const double> f, std::span<const double> x) {
  if (f.size() != x.size()) throw Error(ErrorCode::DimensionMismatch, "pairing of different dimensions");
  double s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * x[i];
  return s;
}

RealCoords to_real(const Vector& v) {
  RealCoords out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(to_double(c));
  return out;
}

RealCoords to_real(const Functional& f) { return to_real(as_vector(f)); }

template <class Tag>
Coords<Tag> weighted_mean(std::span<const Coords<Tag>> points, std::span<const Rational> weights) {
  if (points.empty() || points.size() != weights.size()) {
    throw Error(ErrorCode::MalformedInput, "weighted_mean: weights do not match points");
  }
  Coords<Tag> acc(points.front().size());
  Rational total = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] == 0) continue;
    acc += weights[i] * points[i];
    total += weights[i];
  }
  if (total == 0) throw Error(ErrorCode::MalformedInput, "weighted_mean: zero total weight");
  return acc / total;
}

template Vector weighted_mean(std::span<const Vector>, std::span<const Rational>);
template Functional weighted_mean(std::span<const Functional>, std::span<const Rational>);

template <class Tag>
std::string format_coords(const Coords<Tag>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << to_string(v[i]);
  }
  return out.str();
}

template std::string format_coords(const Vector&);
template std::string format_coords(const Functional&);

Vector parse_vector(std::string_view text) {
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    coords.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Vector(std::move(coords));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty() || rows.front().empty()) throw Error(ErrorCode::MalformedInput, "empty matrix");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw Error(ErrorCode::MalformedInput, "ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector Matrix::operator*(const Vector& x) const {
  if (x.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix with " + std::to_string(cols_) + " columns applied to vector of dimension " +
                    std::to_string(x.size()));
  }
  Vector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(r, k) == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) p(r, c) += (*this)(r, k) * o(k, c);
    }
  return p;
}

Matrix Matrix::scaled(const Rational& s) const {
  Matrix m = *this;
  for (auto& v : m.a_) v *= s;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& v : a_) {
    if (v != 0) return false;
  }
  return true;
}

std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return row_reduce(m).size(); }

template <class Tag>
std::size_t rank_of(std::span<const Coords<Tag>> rows) {
  if (rows.empty()) return 0;
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "rank_of: ragged rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return rank(std::move(m));
}

template std::size_t rank_of(std::span<const Vector>);
template std::size_t rank_of(std::span<const Functional>);

int affine_dimension(std::span<const Vector> points) {
  if (points.empty()) return -1;
  std::vector<Vector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(rank_of<VectorTag>(diffs));
}

std::vector<Vector> nullspace(const Matrix& m) {
  Matrix r = m;
  auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (m.rows() != m.cols() || b.size() != m.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve: expected a square system");
  }
  const std::size_t n = m.rows();
  Matrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n) = b[r];
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots.back() >= n) return std::nullopt;
  Vector x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

}  // namespace bjlevel
