#pragma once

#include "bjlevel/rational.hpp"

#include <cstddef>
#include <vector>

namespace bjlevel::lp {

enum class Relation { Equal, LessEqual, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };

struct Term {
  std::size_t var;
  Rational coef;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<Rational> values;  // one per declared variable
  Rational objective = 0;

  bool feasible() const { return status != Status::Infeasible; }
};

/// A small exact linear program
///
///   minimize / maximize  c^T x
///   subject to           a_i^T x (=, <=, >=) b_i
///                        x_j >= 0 or x_j free
///
/// solved by a dense two-phase tableau simplex over rationals. Bland's
/// smallest-index rule is used for both entering and leaving variables, so
/// the method terminates on degenerate problems. Intended for the small
/// feasibility problems of this library (tens of variables).
class Problem {
 public:
  /// Returns the index of a new variable (nonnegative unless `free`).
  std::size_t add_variable(bool free = false);
  std::size_t add_variables(std::size_t count, bool free = false);

  void add_constraint(std::vector<Term> terms, Relation rel, Rational rhs);
  void minimize(std::vector<Term> objective);
  void maximize(std::vector<Term> objective);

  std::size_t variable_count() const noexcept { return free_.size(); }

  /// With no objective set this is a pure feasibility check.
  Solution solve() const;

 private:
  struct Row {
    std::vector<Term> terms;
    Relation rel;
    Rational rhs;
  };

  std::vector<bool> free_;
  std::vector<Row> rows_;
  std::vector<Term> objective_;
  bool maximize_ = false;
};

}  // namespace bjlevel::lp
