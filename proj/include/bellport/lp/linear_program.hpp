#ifndef BELLPORT_LP_LINEAR_PROGRAM_HPP
#define BELLPORT_LP_LINEAR_PROGRAM_HPP

// Equality-constrained linear programs over a generic scalar:
//
//   maximize    c^T x
//   subject to  A x = b,   lower <= x <= upper
//
// and their conversion to the standard form A' x' = b', x' >= 0, b' >= 0
// consumed by the simplex solvers.

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bellport/exact.hpp"

namespace bellport::lp {

using Index = Eigen::Index;

template <typename Scalar>
struct LinearTerm {
  Index column;
  Scalar coefficient;
};

template <typename Scalar>
struct Constraint {
  std::vector<LinearTerm<Scalar>> terms;
  Scalar rhs;
  std::string name;
};

/// Empty optional means unbounded in that direction.
template <typename Scalar>
struct VariableBounds {
  std::optional<Scalar> lower = Scalar(0L);
  std::optional<Scalar> upper;
};

template <typename Scalar>
class LinearProgram {
 public:
  LinearProgram() = default;
  explicit LinearProgram(Index num_vars)
      : objective_(static_cast<std::size_t>(num_vars), Scalar(0L)),
        bounds_(static_cast<std::size_t>(num_vars)),
        names_(static_cast<std::size_t>(num_vars)) {}

  Index add_variable(std::string name = {}, Scalar objective = Scalar(0L),
                     VariableBounds<Scalar> bounds = {}) {
    objective_.push_back(std::move(objective));
    bounds_.push_back(std::move(bounds));
    names_.push_back(std::move(name));
    return num_vars() - 1;
  }

  void set_objective(Index var, Scalar coefficient) { objective_.at(check_var(var)) = std::move(coefficient); }
  void set_bounds(Index var, VariableBounds<Scalar> bounds) { bounds_.at(check_var(var)) = std::move(bounds); }
  void set_variable_name(Index var, std::string name) { names_.at(check_var(var)) = std::move(name); }

  /// Appends the row sum(terms) = rhs and returns its index.
  Index add_constraint(std::vector<LinearTerm<Scalar>> terms, Scalar rhs, std::string name = {}) {
    for (const auto& t : terms) check_var(t.column);
    constraints_.push_back({std::move(terms), std::move(rhs), std::move(name)});
    return num_constraints() - 1;
  }

  Index num_vars() const { return static_cast<Index>(objective_.size()); }
  Index num_constraints() const { return static_cast<Index>(constraints_.size()); }
  const std::vector<Scalar>& objective() const { return objective_; }
  const std::vector<Constraint<Scalar>>& constraints() const { return constraints_; }
  const Constraint<Scalar>& constraint(Index r) const { return constraints_.at(static_cast<std::size_t>(r)); }
  const VariableBounds<Scalar>& bounds(Index var) const { return bounds_.at(static_cast<std::size_t>(var)); }
  const std::string& variable_name(Index var) const { return names_.at(static_cast<std::size_t>(var)); }

  Index num_nonzeros() const {
    Index total = 0;
    for (const auto& c : constraints_) total += static_cast<Index>(c.terms.size());
    return total;
  }

  /// Row activity A x for a dense point.
  Eigen::VectorX<Scalar> activity(const Eigen::VectorX<Scalar>& x) const {
    Eigen::VectorX<Scalar> out = Eigen::VectorX<Scalar>::Constant(num_constraints(), Scalar(0L));
    for (Index r = 0; r < num_constraints(); ++r) {
      for (const auto& t : constraints_[static_cast<std::size_t>(r)].terms) out(r) += t.coefficient * x(t.column);
    }
    return out;
  }

  /// Same program with every coefficient mapped through `convert`.
  template <typename Other, typename Convert>
  LinearProgram<Other> cast(Convert convert) const {
    LinearProgram<Other> out;
    for (Index j = 0; j < num_vars(); ++j) {
      const auto& b = bounds(j);
      VariableBounds<Other> ob{std::nullopt, std::nullopt};
      if (b.lower) ob.lower = convert(*b.lower);
      if (b.upper) ob.upper = convert(*b.upper);
      out.add_variable(variable_name(j), convert(objective_[static_cast<std::size_t>(j)]), ob);
    }
    for (const auto& c : constraints_) {
      std::vector<LinearTerm<Other>> terms;
      terms.reserve(c.terms.size());
      for (const auto& t : c.terms) terms.push_back({t.column, convert(t.coefficient)});
      out.add_constraint(std::move(terms), convert(c.rhs), c.name);
    }
    return out;
  }

 private:
  Index check_var(Index var) const {
    if (var < 0 || var >= num_vars()) {
      throw std::out_of_range("variable index " + std::to_string(var) + " outside 0.." +
                              std::to_string(num_vars() - 1));
    }
    return var;
  }

  std::vector<Scalar> objective_;
  std::vector<VariableBounds<Scalar>> bounds_;
  std::vector<std::string> names_;
  std::vector<Constraint<Scalar>> constraints_;
};

using LinearProgramd = LinearProgram<double>;
/// Exact program over the rationals.
using RationalLp = LinearProgram<Rational>;
/// Exact program over Q(sqrt(D)).
template <int D>
using SurdLp = LinearProgram<QuadraticSurd<D>>;

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus status);

/// Basis of the standard form: one column index per standard-form row.
/// Indices >= num_columns of the standard form denote the artificial of
/// row (index - num_columns).
using Basis = std::vector<Index>;

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Scalar objective_value = Scalar(0L);
  /// One value per variable of the original program.
  Eigen::VectorX<Scalar> primal;
  /// One multiplier per constraint row of the original program.
  Eigen::VectorX<Scalar> dual;
  std::int64_t iterations = 0;
  Basis basis;
  /// Rows whose artificial stayed basic because the row is linearly dependent.
  std::vector<Index> redundant_rows;
};

using LpSolutiond = LpSolution<double>;

/// Standard form A x = b, x >= 0, b >= 0 of a LinearProgram.
///
/// Column layout: one column per variable with a finite lower bound
/// (x = lower + x'), two columns for a free variable (x = x+ - x-), one
/// slack per finite upper bound. Rows: the original equality rows, then one
/// row x' + s = upper - lower per finite upper bound. Rows with negative
/// right-hand side are negated (row_sign = -1).
template <typename Scalar>
struct StandardForm {
  Eigen::SparseMatrix<Scalar> matrix;  // column-major
  Eigen::VectorX<Scalar> rhs;
  Eigen::VectorX<Scalar> cost;
  Scalar objective_offset = Scalar(0L);
  std::vector<int> row_sign;
  /// For each original variable: positive column, negative column (or -1) and shift.
  std::vector<Index> positive_column, negative_column;
  std::vector<Scalar> shift;
  Index num_original_rows = 0;

  Index rows() const { return matrix.rows(); }
  Index cols() const { return matrix.cols(); }

  /// Original variable values from a standard-form point.
  Eigen::VectorX<Scalar> recover_primal(const Eigen::VectorX<Scalar>& x) const {
    const Index n = static_cast<Index>(positive_column.size());
    Eigen::VectorX<Scalar> out(n);
    for (Index j = 0; j < n; ++j) {
      Scalar value = shift[static_cast<std::size_t>(j)] + x(positive_column[static_cast<std::size_t>(j)]);
      if (negative_column[static_cast<std::size_t>(j)] >= 0) value -= x(negative_column[static_cast<std::size_t>(j)]);
      out(j) = value;
    }
    return out;
  }

  /// Original-row multipliers from standard-form row multipliers.
  Eigen::VectorX<Scalar> recover_dual(const Eigen::VectorX<Scalar>& y) const {
    Eigen::VectorX<Scalar> out(num_original_rows);
    for (Index r = 0; r < num_original_rows; ++r) {
      out(r) = row_sign[static_cast<std::size_t>(r)] < 0 ? Scalar(-y(r)) : y(r);
    }
    return out;
  }
};

template <typename Scalar>
StandardForm<Scalar> to_standard_form(const LinearProgram<Scalar>& lp) {
  StandardForm<Scalar> sf;
  const Index n = lp.num_vars();
  sf.positive_column.assign(static_cast<std::size_t>(n), -1);
  sf.negative_column.assign(static_cast<std::size_t>(n), -1);
  sf.shift.assign(static_cast<std::size_t>(n), Scalar(0L));

  std::vector<Index> upper_vars;
  Index next_col = 0;
  for (Index j = 0; j < n; ++j) {
    const auto& b = lp.bounds(j);
    if (b.lower && b.upper && *b.upper < *b.lower) {
      throw std::invalid_argument("variable " + std::to_string(j) + " has upper bound below lower bound");
    }
    sf.positive_column[static_cast<std::size_t>(j)] = next_col++;
    if (b.lower) {
      sf.shift[static_cast<std::size_t>(j)] = *b.lower;
      if (b.upper) upper_vars.push_back(j);
    } else if (b.upper) {
      // x = upper - x'
      throw std::invalid_argument("variables bounded only from above are not supported");
    } else {
      sf.negative_column[static_cast<std::size_t>(j)] = next_col++;
    }
  }
  const Index num_structural = next_col;
  const Index m_orig = lp.num_constraints();
  const Index m = m_orig + static_cast<Index>(upper_vars.size());
  const Index cols = num_structural + static_cast<Index>(upper_vars.size());

  sf.num_original_rows = m_orig;
  sf.rhs = Eigen::VectorX<Scalar>::Constant(m, Scalar(0L));
  sf.cost = Eigen::VectorX<Scalar>::Constant(cols, Scalar(0L));
  sf.row_sign.assign(static_cast<std::size_t>(m), 1);

  for (Index j = 0; j < n; ++j) {
    const Scalar& c = lp.objective()[static_cast<std::size_t>(j)];
    sf.cost(sf.positive_column[static_cast<std::size_t>(j)]) = c;
    if (sf.negative_column[static_cast<std::size_t>(j)] >= 0) sf.cost(sf.negative_column[static_cast<std::size_t>(j)]) = -c;
    sf.objective_offset += c * sf.shift[static_cast<std::size_t>(j)];
  }

  std::vector<Eigen::Triplet<Scalar>> triplets;
  triplets.reserve(static_cast<std::size_t>(lp.num_nonzeros() + 2 * static_cast<Index>(upper_vars.size())));
  for (Index r = 0; r < m_orig; ++r) {
    const auto& row = lp.constraint(r);
    Scalar rhs = row.rhs;
    for (const auto& t : row.terms) rhs -= t.coefficient * sf.shift[static_cast<std::size_t>(t.column)];
    const bool negate = rhs < Scalar(0L);
    sf.row_sign[static_cast<std::size_t>(r)] = negate ? -1 : 1;
    sf.rhs(r) = negate ? Scalar(-rhs) : rhs;
    for (const auto& t : row.terms) {
      const Scalar coef = negate ? Scalar(-t.coefficient) : t.coefficient;
      triplets.emplace_back(r, sf.positive_column[static_cast<std::size_t>(t.column)], coef);
      if (sf.negative_column[static_cast<std::size_t>(t.column)] >= 0) {
        triplets.emplace_back(r, sf.negative_column[static_cast<std::size_t>(t.column)], Scalar(-coef));
      }
    }
  }
  for (std::size_t u = 0; u < upper_vars.size(); ++u) {
    const Index j = upper_vars[u];
    const Index r = m_orig + static_cast<Index>(u);
    const auto& b = lp.bounds(j);
    sf.rhs(r) = *b.upper - *b.lower;
    triplets.emplace_back(r, sf.positive_column[static_cast<std::size_t>(j)], Scalar(1L));
    triplets.emplace_back(r, num_structural + static_cast<Index>(u), Scalar(1L));
  }
  sf.matrix.resize(m, cols);
  sf.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sf.matrix.makeCompressed();
  return sf;
}

/// Optimality measures of a solution against its program (all >= 0).
struct OptimalityReport {
  double primal_residual = 0;     // max |A x - b|
  double bound_violation = 0;     // max violation of lower/upper bounds
  double dual_infeasibility = 0;  // max wrong-signed reduced cost
  double complementarity = 0;     // max |reduced cost * distance to its bound|
  double duality_gap = 0;         // |primal obj - dual obj| / max(1, |primal obj|)
};

OptimalityReport certify(const LinearProgramd& lp, const LpSolutiond& solution);

}  // namespace bellport::lp

#endif  // BELLPORT_LP_LINEAR_PROGRAM_HPP
