#include "bellport/lp/revised_simplex.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

namespace bellport::lp {

namespace {

using SparseMatrixd = Eigen::SparseMatrix<double>;

enum class Pricing { dantzig, bland };

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardForm<double>& sf, const SolverOptions& options)
      : a_(sf.matrix),
        b_(sf.rhs),
        cost_(sf.cost),
        m_(sf.rows()),
        ncols_(sf.cols()),
        options_(options),
        basis_(static_cast<std::size_t>(m_)),
        position_(static_cast<std::size_t>(ncols_ + m_), -1) {
    iteration_limit_ = options.iteration_limit > 0 ? options.iteration_limit : 50 * (m_ + ncols_);
    for (Index r = 0; r < m_; ++r) {
      basis_[static_cast<std::size_t>(r)] = ncols_ + r;
      position_[static_cast<std::size_t>(ncols_ + r)] = r;
    }
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
    xb_ = b_;
  }

  LpStatus run() {
    phase_ = 1;
    recompute_duals();
    LpStatus status = iterate();
    if (status != LpStatus::optimal) return status;
    for (Index r = 0; r < m_; ++r) {
      if (is_artificial(basis_[static_cast<std::size_t>(r)]) && xb_(r) > options_.feasibility_tol) {
        return LpStatus::infeasible;
      }
    }
    drive_out_artificials();
    phase_ = 2;
    recompute_duals();
    // Harris steps may leave basics slightly negative; repair them with dual
    // pivots, then re-optimize with the textbook ratio test.
    for (int round = 0;; ++round) {
      status = iterate();
      if (status != LpStatus::optimal || round == kCleanupRounds) return status;
      if (!restore_primal_feasibility()) return status;
      harris_ = false;
    }
  }

  Eigen::VectorXd primal() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(ncols_);
    for (Index r = 0; r < m_; ++r) {
      const Index j = basis_[static_cast<std::size_t>(r)];
      if (!is_artificial(j)) x(j) = std::max(0.0, xb_(r));
    }
    return x;
  }

  const Eigen::VectorXd& duals() const { return y_; }
  const std::vector<Index>& basis() const { return basis_; }
  const std::vector<Index>& redundant_rows() const { return redundant_; }
  std::int64_t iterations() const { return iterations_; }

 private:
  bool is_artificial(Index j) const { return j >= ncols_; }

  double column_cost(Index j) const {
    if (is_artificial(j)) return phase_ == 1 ? -1.0 : 0.0;
    return phase_ == 1 ? 0.0 : cost_(j);
  }

  // alpha = B^{-1} a_j
  Eigen::VectorXd ftran(Index j) const {
    if (is_artificial(j)) return binv_.col(j - ncols_);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_);
    for (SparseMatrixd::InnerIterator it(a_, j); it; ++it) alpha.noalias() += it.value() * binv_.col(it.row());
    return alpha;
  }

  void recompute_duals() {
    Eigen::VectorXd cb(m_);
    for (Index r = 0; r < m_; ++r) cb(r) = column_cost(basis_[static_cast<std::size_t>(r)]);
    y_.noalias() = binv_.transpose() * cb;
  }

  void refactor() {
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
    for (Index r = 0; r < m_; ++r) {
      const Index j = basis_[static_cast<std::size_t>(r)];
      if (is_artificial(j)) {
        basis_matrix(j - ncols_, r) = 1.0;
      } else {
        for (SparseMatrixd::InnerIterator it(a_, j); it; ++it) basis_matrix(it.row(), r) = it.value();
      }
    }
    binv_ = basis_matrix.partialPivLu().inverse();
    xb_.noalias() = binv_ * b_;
    recompute_duals();
    since_refactor_ = 0;
  }

  void pivot(Index entering, Index row, const Eigen::VectorXd& alpha, double theta) {
    const double pivot_value = alpha(row);
    xb_.noalias() -= theta * alpha;
    xb_(row) = theta;
    // duals: y += (d_q / alpha_r) * (row r of old B^{-1})
    const double dq = column_cost(entering) - reduced_price(entering);
    const Eigen::RowVectorXd pivot_row = binv_.row(row) / pivot_value;
    y_.noalias() += dq * pivot_row.transpose();
    Eigen::VectorXd eta = alpha;
    eta(row) = 0.0;
    binv_.noalias() -= eta * pivot_row;
    binv_.row(row) = pivot_row;

    const Index leaving = basis_[static_cast<std::size_t>(row)];
    position_[static_cast<std::size_t>(leaving)] = -1;
    position_[static_cast<std::size_t>(entering)] = row;
    basis_[static_cast<std::size_t>(row)] = entering;
    ++iterations_;
    if (++since_refactor_ >= options_.refactor_interval) refactor();
  }

  // y^T a_j
  double reduced_price(Index j) const {
    if (is_artificial(j)) return y_(j - ncols_);
    double s = 0.0;
    for (SparseMatrixd::InnerIterator it(a_, j); it; ++it) s += it.value() * y_(it.row());
    return s;
  }

  Index choose_entering(Pricing pricing) {
    reduced_.noalias() = a_.transpose() * y_;
    Index best = -1;
    double best_value = options_.optimality_tol;
    for (Index j = 0; j < ncols_; ++j) {
      if (position_[static_cast<std::size_t>(j)] >= 0) continue;
      const double d = column_cost(j) - reduced_(j);
      if (d > best_value) {
        best = j;
        if (pricing == Pricing::bland) break;
        best_value = d;
      }
    }
    return best;
  }

  // Returns the leaving row or -1 when the column is unbounded.
  Index choose_leaving(const Eigen::VectorXd& alpha, Pricing pricing, double& theta) const {
    const double ptol = options_.pivot_tol;
    Index best = -1;
    if (pricing == Pricing::bland) {
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Index r = 0; r < m_; ++r) {
        const Index j = basis_[static_cast<std::size_t>(r)];
        double ratio;
        if (phase_ == 2 && is_artificial(j)) {
          if (std::abs(alpha(r)) <= ptol) continue;
          ratio = 0.0;
        } else {
          if (alpha(r) <= ptol) continue;
          ratio = std::max(0.0, xb_(r)) / alpha(r);
        }
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && j < basis_[static_cast<std::size_t>(best)])) {
          best_ratio = std::min(ratio, best_ratio);
          best = r;
        }
      }
      theta = best >= 0 ? best_ratio : 0.0;
      return best;
    }

    if (!harris_) return choose_leaving(alpha, Pricing::bland, theta);

    // Harris two-pass ratio test.
    const double ftol = options_.feasibility_tol;
    double bound = std::numeric_limits<double>::infinity();
    for (Index r = 0; r < m_; ++r) {
      const Index j = basis_[static_cast<std::size_t>(r)];
      if (phase_ == 2 && is_artificial(j)) {
        if (std::abs(alpha(r)) > ptol) bound = std::min(bound, ftol / std::abs(alpha(r)));
      } else if (alpha(r) > ptol) {
        bound = std::min(bound, (std::max(0.0, xb_(r)) + ftol) / alpha(r));
      }
    }
    if (!std::isfinite(bound)) return -1;
    double best_alpha = 0.0;
    for (Index r = 0; r < m_; ++r) {
      const Index j = basis_[static_cast<std::size_t>(r)];
      double ratio;
      double magnitude;
      if (phase_ == 2 && is_artificial(j)) {
        if (std::abs(alpha(r)) <= ptol) continue;
        ratio = 0.0;
        magnitude = std::abs(alpha(r));
      } else {
        if (alpha(r) <= ptol) continue;
        ratio = std::max(0.0, xb_(r)) / alpha(r);
        magnitude = alpha(r);
      }
      if (ratio <= bound && magnitude > best_alpha) {
        best_alpha = magnitude;
        best = r;
      }
    }
    const Index j = basis_[static_cast<std::size_t>(best)];
    theta = (phase_ == 2 && is_artificial(j)) ? 0.0 : std::max(0.0, xb_(best)) / alpha(best);
    return best;
  }

  LpStatus iterate() {
    int degenerate_streak = 0;
    Pricing pricing = Pricing::dantzig;
    while (true) {
      if (iterations_ >= iteration_limit_) return LpStatus::iteration_limit;
      const Index entering = choose_entering(pricing);
      if (entering < 0) {
        if (since_refactor_ == 0) return LpStatus::optimal;
        // confirm optimality on a fresh factorization
        refactor();
        if (choose_entering(pricing) < 0) return LpStatus::optimal;
        continue;
      }
      const Eigen::VectorXd alpha = ftran(entering);
      double theta = 0.0;
      const Index row = choose_leaving(alpha, pricing, theta);
      if (row < 0) return LpStatus::unbounded;
      pivot(entering, row, alpha, theta);
      for (Index r = 0; r < m_; ++r) {
        if (xb_(r) < 0.0 && xb_(r) > -options_.feasibility_tol) xb_(r) = 0.0;
      }
      if (theta <= options_.feasibility_tol) {
        if (++degenerate_streak >= options_.bland_after) pricing = Pricing::bland;
      } else {
        degenerate_streak = 0;
        pricing = Pricing::dantzig;
      }
    }
  }

  // Dual simplex on the optimal basis: drive the most negative basic out
  // while keeping the reduced costs dual feasible. Returns whether it pivoted.
  bool restore_primal_feasibility() {
    bool pivoted = false;
    for (Index step = 0; step < m_ && iterations_ < iteration_limit_; ++step) {
      Index row = -1;
      double worst = -kCleanupTol;
      for (Index r = 0; r < m_; ++r) {
        if (!is_artificial(basis_[static_cast<std::size_t>(r)]) && xb_(r) < worst) {
          worst = xb_(r);
          row = r;
        }
      }
      if (row < 0) break;
      const Eigen::VectorXd rho = a_.transpose() * binv_.row(row).transpose();
      reduced_.noalias() = a_.transpose() * y_;
      Index entering = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < ncols_; ++j) {
        if (position_[static_cast<std::size_t>(j)] >= 0 || rho(j) >= -options_.pivot_tol) continue;
        const double ratio = std::max(0.0, reduced_(j) - column_cost(j)) / -rho(j);
        if (ratio < best_ratio) {
          best_ratio = ratio;
          entering = j;
        }
      }
      if (entering < 0) break;
      const Eigen::VectorXd alpha = ftran(entering);
      pivot(entering, row, alpha, xb_(row) / alpha(row));
      pivoted = true;
    }
    if (pivoted) refactor();
    return pivoted;
  }

  // After phase 1: swap zero-valued basic artificials for structural columns
  // where the row allows it; the rest belong to dependent rows.
  void drive_out_artificials() {
    for (Index r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[static_cast<std::size_t>(r)])) continue;
      const Eigen::VectorXd row = binv_.row(r).transpose();
      const Eigen::VectorXd rho = a_.transpose() * row;
      Index best = -1;
      double best_value = 1e-7;
      for (Index j = 0; j < ncols_; ++j) {
        if (position_[static_cast<std::size_t>(j)] >= 0) continue;
        if (std::abs(rho(j)) > best_value) {
          best_value = std::abs(rho(j));
          best = j;
        }
      }
      if (best < 0) {
        redundant_.push_back(r);
        continue;
      }
      const Eigen::VectorXd alpha = ftran(best);
      pivot(best, r, alpha, 0.0);
      xb_(r) = 0.0;
    }
    // rows may have been re-pivoted; keep only those still holding artificials
    std::vector<Index> still;
    for (Index r : redundant_) {
      if (is_artificial(basis_[static_cast<std::size_t>(r)])) still.push_back(r);
    }
    redundant_ = std::move(still);
  }

  const SparseMatrixd& a_;
  const Eigen::VectorXd& b_;
  const Eigen::VectorXd& cost_;
  Index m_;
  Index ncols_;
  SolverOptions options_;
  std::int64_t iteration_limit_ = 0;

  int phase_ = 1;
  std::vector<Index> basis_;
  std::vector<Index> position_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd y_ = Eigen::VectorXd::Zero(m_);
  Eigen::VectorXd reduced_;
  std::vector<Index> redundant_;
  std::int64_t iterations_ = 0;
  int since_refactor_ = 0;
  bool harris_ = true;
  static constexpr int kCleanupRounds = 3;
  static constexpr double kCleanupTol = 1e-11;
};

void validate(const LinearProgramd& lp) {
  for (Index j = 0; j < lp.num_vars(); ++j) {
    if (!std::isfinite(lp.objective()[static_cast<std::size_t>(j)])) {
      throw std::invalid_argument("non-finite objective coefficient at variable " + std::to_string(j));
    }
    const auto& b = lp.bounds(j);
    if ((b.lower && !std::isfinite(*b.lower)) || (b.upper && !std::isfinite(*b.upper))) {
      throw std::invalid_argument("non-finite bound at variable " + std::to_string(j));
    }
  }
  for (Index r = 0; r < lp.num_constraints(); ++r) {
    const auto& c = lp.constraint(r);
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("non-finite rhs in row " + std::to_string(r));
    for (const auto& t : c.terms) {
      if (!std::isfinite(t.coefficient)) {
        throw std::invalid_argument("non-finite coefficient in row " + std::to_string(r));
      }
    }
  }
}

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

LpSolutiond simplex_solve(const LinearProgramd& lp, const SolverOptions& options) {
  validate(lp);
  const StandardForm<double> sf = to_standard_form(lp);
  RevisedSimplex solver(sf, options);
  LpSolutiond out;
  out.status = solver.run();
  out.iterations = solver.iterations();
  out.basis = solver.basis();
  out.redundant_rows = solver.redundant_rows();
  if (out.status == LpStatus::optimal) {
    const Eigen::VectorXd x = solver.primal();
    out.primal = sf.recover_primal(x);
    out.dual = sf.recover_dual(solver.duals());
    out.objective_value = sf.cost.dot(x) + sf.objective_offset;
  }
  return out;
}

OptimalityReport certify(const LinearProgramd& lp, const LpSolutiond& solution) {
  OptimalityReport report;
  const Eigen::VectorXd& x = solution.primal;
  const Eigen::VectorXd& y = solution.dual;
  const Eigen::VectorXd ax = lp.activity(x);
  for (Index r = 0; r < lp.num_constraints(); ++r) {
    report.primal_residual = std::max(report.primal_residual, std::abs(ax(r) - lp.constraint(r).rhs));
  }
  Eigen::VectorXd reduced(lp.num_vars());
  for (Index j = 0; j < lp.num_vars(); ++j) reduced(j) = lp.objective()[static_cast<std::size_t>(j)];
  for (Index r = 0; r < lp.num_constraints(); ++r) {
    for (const auto& t : lp.constraint(r).terms) reduced(t.column) -= t.coefficient * y(r);
  }
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  for (Index r = 0; r < lp.num_constraints(); ++r) dual_obj += lp.constraint(r).rhs * y(r);
  for (Index j = 0; j < lp.num_vars(); ++j) {
    const auto& b = lp.bounds(j);
    const double d = reduced(j);
    primal_obj += lp.objective()[static_cast<std::size_t>(j)] * x(j);
    if (b.lower) report.bound_violation = std::max(report.bound_violation, *b.lower - x(j));
    if (b.upper) report.bound_violation = std::max(report.bound_violation, x(j) - *b.upper);
    // maximization: d > 0 needs a finite upper bound, d < 0 a finite lower bound
    if (d > 0.0) {
      if (b.upper) {
        dual_obj += *b.upper * d;
        report.complementarity = std::max(report.complementarity, d * std::abs(*b.upper - x(j)));
      } else {
        report.dual_infeasibility = std::max(report.dual_infeasibility, d);
      }
    } else if (d < 0.0) {
      if (b.lower) {
        dual_obj += *b.lower * d;
        report.complementarity = std::max(report.complementarity, -d * std::abs(x(j) - *b.lower));
      } else {
        report.dual_infeasibility = std::max(report.dual_infeasibility, -d);
      }
    }
  }
  report.duality_gap = std::abs(primal_obj - dual_obj) / std::max(1.0, std::abs(primal_obj));
  return report;
}

}  // namespace bellport::lp
