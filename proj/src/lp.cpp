#include "bjlevel/lp.hpp"

#include "bjlevel/error.hpp"

#include <optional>

namespace bjlevel::lp {

std::size_t Problem::add_variable(bool free) {
  free_.push_back(free);
  return free_.size() - 1;
}

std::size_t Problem::add_variables(std::size_t count, bool free) {
  std::size_t first = free_.size();
  free_.insert(free_.end(), count, free);
  return first;
}

void Problem::add_constraint(std::vector<Term> terms, Relation rel, Rational rhs) {
  for (const auto& t : terms) {
    if (t.var >= free_.size()) throw Error(ErrorCode::Internal, "lp: constraint on undeclared variable");
  }
  rows_.push_back(Row{std::move(terms), rel, std::move(rhs)});
}

void Problem::minimize(std::vector<Term> objective) {
  objective_ = std::move(objective);
  maximize_ = false;
}

void Problem::maximize(std::vector<Term> objective) {
  objective_ = std::move(objective);
  maximize_ = true;
}

namespace {

// Dense tableau. Row i < m holds constraint i with the right-hand side in the
// last column; row m holds reduced costs with -(objective value) at the end.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), t_(rows + 1, std::vector<Rational>(cols + 1, Rational(0))), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][n_]; }
  Rational& cost(std::size_t c) { return t_[m_][c]; }
  Rational& value() { return t_[m_][n_]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational inv = 1 / t_[pr][pc];
    for (auto& v : t_[pr]) v *= inv;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr || t_[r][pc] == 0) continue;
      Rational f = t_[r][pc];
      for (std::size_t c = 0; c <= n_; ++c) {
        if (t_[pr][c] != 0) t_[r][c] -= f * t_[pr][c];
      }
    }
    basis_[pr] = pc;
  }

  /// Runs Bland's rule over columns [0, limit). Returns false if unbounded.
  bool optimize(std::size_t limit) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t c = 0; c < limit; ++c) {
        if (t_[m_][c] < 0) {
          enter = c;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (t_[r][*enter] <= 0) continue;
        Rational ratio = t_[r][n_] / t_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution Problem::solve() const {
  // Column layout: structural columns (free variables split in two), then one
  // slack per inequality row, then one artificial per row.
  std::vector<std::size_t> pos_col(free_.size());
  std::vector<std::optional<std::size_t>> neg_col(free_.size());
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < free_.size(); ++j) {
    pos_col[j] = ncols++;
    if (free_[j]) neg_col[j] = ncols++;
  }
  std::vector<std::optional<std::size_t>> slack_col(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].rel != Relation::Equal) slack_col[i] = ncols++;
  }
  const std::size_t real_cols = ncols;
  const std::size_t m = rows_.size();
  const std::size_t total = real_cols + m;

  Tableau tab(m, total);
  for (std::size_t i = 0; i < m; ++i) {
    const Row& row = rows_[i];
    for (const auto& t : row.terms) {
      tab.at(i, pos_col[t.var]) += t.coef;
      if (neg_col[t.var]) tab.at(i, *neg_col[t.var]) -= t.coef;
    }
    if (slack_col[i]) tab.at(i, *slack_col[i]) = row.rel == Relation::LessEqual ? 1 : -1;
    tab.rhs(i) = row.rhs;
    if (tab.rhs(i) < 0) {
      for (std::size_t c = 0; c < real_cols; ++c) tab.at(i, c) = -tab.at(i, c);
      tab.rhs(i) = -tab.rhs(i);
    }
    tab.at(i, real_cols + i) = 1;
    tab.basic(i) = real_cols + i;
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < real_cols; ++c) tab.cost(c) -= tab.at(i, c);
    tab.value() -= tab.rhs(i);
  }
  tab.optimize(total);

  Solution sol;
  if (tab.value() != 0) {
    sol.status = Status::Infeasible;
    return sol;
  }

  // Drive remaining artificials out of the basis; rows that cannot pivot are
  // linearly dependent and dropped.
  for (std::size_t r = 0; r < tab.rows();) {
    if (tab.basic(r) < real_cols) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t c = 0; c < real_cols; ++c) {
      if (tab.at(r, c) != 0) {
        col = c;
        break;
      }
    }
    if (col) {
      tab.pivot(r, *col);
      ++r;
    } else {
      tab.drop_row(r);
    }
  }

  // Phase 2 cost row over the real columns.
  std::vector<Rational> cost(total, Rational(0));
  for (const auto& t : objective_) {
    Rational c = maximize_ ? Rational(-t.coef) : t.coef;
    cost[pos_col[t.var]] += c;
    if (neg_col[t.var]) cost[*neg_col[t.var]] -= c;
  }
  for (std::size_t c = 0; c <= total; ++c) tab.cost(c) = c < total ? cost[c] : Rational(0);
  for (std::size_t r = 0; r < tab.rows(); ++r) {
    const Rational cb = cost[tab.basic(r)];
    if (cb == 0) continue;
    for (std::size_t c = 0; c < total; ++c) tab.cost(c) -= cb * tab.at(r, c);
    tab.value() -= cb * tab.rhs(r);
  }
  const bool bounded = tab.optimize(real_cols);

  std::vector<Rational> column_value(total, Rational(0));
  for (std::size_t r = 0; r < tab.rows(); ++r) column_value[tab.basic(r)] = tab.rhs(r);
  sol.values.resize(free_.size());
  for (std::size_t j = 0; j < free_.size(); ++j) {
    sol.values[j] = column_value[pos_col[j]];
    if (neg_col[j]) sol.values[j] -= column_value[*neg_col[j]];
  }
  sol.status = bounded ? Status::Optimal : Status::Unbounded;
  if (bounded) {
    Rational obj = 0;
    for (const auto& t : objective_) obj += t.coef * sol.values[t.var];
    sol.objective = obj;
  }
  return sol;
}

}  // namespace bjlevel::lp
