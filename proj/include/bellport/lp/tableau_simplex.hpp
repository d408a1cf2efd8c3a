#ifndef BELLPORT_LP_TABLEAU_SIMPLEX_HPP
#define BELLPORT_LP_TABLEAU_SIMPLEX_HPP

// Dense-tableau two-phase simplex with Bland's rule, templated on the
// scalar. With an exact scalar (Rational, QuadraticSurd) every pivot is
// exact and the returned optimum carries no rounding error; with double it
// serves as a small independent reference solver.

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bellport/exact.hpp"
#include "bellport/lp/linear_program.hpp"

namespace bellport::lp {

template <typename Scalar>
class TableauSimplex {
  using Traits = ScalarTraits<Scalar>;

 public:
  /// Tolerances only matter for inexact scalars.
  explicit TableauSimplex(const StandardForm<Scalar>& sf, double tol = 1e-9)
      : sf_(sf), m_(sf.rows()), ncols_(sf.cols()), tol_(tol) {}

  /// Cold start from the all-artificial basis.
  LpStatus solve() {
    cold_start();
    phase_ = 1;
    LpStatus status = iterate();
    if (status != LpStatus::optimal) return status;
    for (Index r = 0; r < m_; ++r) {
      if (is_artificial(basis_[static_cast<std::size_t>(r)]) && Traits::sign(xb_(r), tol_) > 0) {
        return LpStatus::infeasible;
      }
    }
    drive_out_artificials();
    phase_ = 2;
    return iterate();
  }

  /// Phase 2 from a given basis. Returns nullopt when the basis is singular,
  /// has the wrong size, or is not primal feasible.
  std::optional<LpStatus> solve_from_basis(const Basis& hint) {
    if (static_cast<Index>(hint.size()) != m_) return std::nullopt;
    std::vector<bool> seen(static_cast<std::size_t>(ncols_ + m_), false);
    for (Index j : hint) {
      if (j < 0 || j >= ncols_ + m_ || seen[static_cast<std::size_t>(j)]) return std::nullopt;
      seen[static_cast<std::size_t>(j)] = true;
    }
    Eigen::MatrixX<Scalar> b(m_, m_);
    for (Index r = 0; r < m_; ++r) b.col(r) = full_column(hint[static_cast<std::size_t>(r)]);
    auto inverse = invert(b);
    if (!inverse) return std::nullopt;
    build_tableau(*inverse);
    basis_ = hint;
    for (Index r = 0; r < m_; ++r) {
      const int s = Traits::sign(xb_(r), tol_);
      if (s < 0) return std::nullopt;
      if (is_artificial(basis_[static_cast<std::size_t>(r)]) && s != 0) return std::nullopt;
    }
    phase_ = 2;
    return iterate();
  }

  Eigen::VectorX<Scalar> primal() const {
    Eigen::VectorX<Scalar> x = Eigen::VectorX<Scalar>::Constant(ncols_, Scalar(0L));
    for (Index r = 0; r < m_; ++r) {
      const Index j = basis_[static_cast<std::size_t>(r)];
      if (!is_artificial(j)) x(j) = xb_(r);
    }
    return x;
  }

  /// Row multipliers y with y^T B = c_B (phase-2 costs).
  Eigen::VectorX<Scalar> duals() const {
    // B^{-1} sits in the artificial block of the tableau.
    Eigen::VectorX<Scalar> y = Eigen::VectorX<Scalar>::Constant(m_, Scalar(0L));
    for (Index r = 0; r < m_; ++r) {
      const Scalar cb = cost(basis_[static_cast<std::size_t>(r)]);
      if (cb == Scalar(0L)) continue;
      for (Index i = 0; i < m_; ++i) y(i) += cb * tableau_(r, ncols_ + i);
    }
    return y;
  }

  const Basis& basis() const { return basis_; }
  std::int64_t iterations() const { return iterations_; }
  const std::vector<Index>& redundant_rows() const { return redundant_; }

 private:
  bool is_artificial(Index j) const { return j >= ncols_; }

  Scalar cost(Index j) const {
    if (is_artificial(j)) return phase_ == 1 ? Scalar(-1L) : Scalar(0L);
    return phase_ == 1 ? Scalar(0L) : sf_.cost(j);
  }

  Eigen::VectorX<Scalar> full_column(Index j) const {
    Eigen::VectorX<Scalar> col = Eigen::VectorX<Scalar>::Constant(m_, Scalar(0L));
    if (is_artificial(j)) {
      col(j - ncols_) = Scalar(1L);
    } else {
      for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(sf_.matrix, j); it; ++it) col(it.row()) = it.value();
    }
    return col;
  }

  // Gauss-Jordan with partial pivoting on magnitude (any nonzero pivot is
  // fine for exact scalars).
  std::optional<Eigen::MatrixX<Scalar>> invert(Eigen::MatrixX<Scalar> a) const {
    const Index n = a.rows();
    Eigen::MatrixX<Scalar> inv = Eigen::MatrixX<Scalar>::Identity(n, n);
    for (Index c = 0; c < n; ++c) {
      Index p = -1;
      double best = 0.0;
      for (Index r = c; r < n; ++r) {
        if (Traits::sign(a(r, c), tol_) == 0) continue;
        const double mag = Traits::magnitude(a(r, c));
        if (p < 0 || mag > best) {
          p = r;
          best = mag;
        }
      }
      if (p < 0) return std::nullopt;
      a.row(p).swap(a.row(c));
      inv.row(p).swap(inv.row(c));
      const Scalar pivot = a(c, c);
      a.row(c) /= pivot;
      inv.row(c) /= pivot;
      for (Index r = 0; r < n; ++r) {
        if (r == c || Traits::sign(a(r, c), 0.0) == 0) continue;
        const Scalar f = a(r, c);
        a.row(r) -= f * a.row(c);
        inv.row(r) -= f * inv.row(c);
      }
    }
    return inv;
  }

  void build_tableau(const Eigen::MatrixX<Scalar>& binv) {
    tableau_ = Eigen::MatrixX<Scalar>::Constant(m_, ncols_ + m_, Scalar(0L));
    for (Index j = 0; j < ncols_; ++j) {
      for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(sf_.matrix, j); it; ++it) {
        for (Index r = 0; r < m_; ++r) tableau_(r, j) += binv(r, it.row()) * it.value();
      }
    }
    tableau_.rightCols(m_) = binv;
    xb_ = Eigen::VectorX<Scalar>::Constant(m_, Scalar(0L));
    for (Index r = 0; r < m_; ++r) {
      for (Index i = 0; i < m_; ++i) xb_(r) += binv(r, i) * sf_.rhs(i);
    }
  }

  void cold_start() {
    build_tableau(Eigen::MatrixX<Scalar>::Identity(m_, m_));
    basis_.resize(static_cast<std::size_t>(m_));
    for (Index r = 0; r < m_; ++r) basis_[static_cast<std::size_t>(r)] = ncols_ + r;
  }

  Scalar reduced_cost(Index j) const {
    Scalar d = cost(j);
    for (Index r = 0; r < m_; ++r) {
      if (Traits::sign(tableau_(r, j), 0.0) == 0) continue;
      d -= cost(basis_[static_cast<std::size_t>(r)]) * tableau_(r, j);
    }
    return d;
  }

  bool is_basic(Index j) const {
    for (Index b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  void pivot(Index row, Index col) {
    const Scalar p = tableau_(row, col);
    tableau_.row(row) /= p;
    xb_(row) /= p;
    for (Index r = 0; r < m_; ++r) {
      if (r == row || Traits::sign(tableau_(r, col), 0.0) == 0) continue;
      const Scalar f = tableau_(r, col);
      tableau_.row(r) -= f * tableau_.row(row);
      xb_(r) -= f * xb_(row);
      if constexpr (!Traits::is_exact) tableau_(r, col) = Scalar(0L);
    }
    basis_[static_cast<std::size_t>(row)] = col;
    ++iterations_;
  }

  LpStatus iterate() {
    const std::int64_t limit = 50 * (m_ + ncols_ + m_) + 1000;
    while (true) {
      if (iterations_ >= limit) return LpStatus::iteration_limit;
      // Bland: lowest-index improving column
      Index entering = -1;
      for (Index j = 0; j < ncols_; ++j) {
        if (is_basic(j)) continue;
        if (Traits::sign(reduced_cost(j), tol_) > 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return LpStatus::optimal;

      Index leaving = -1;
      Scalar best_ratio(0L);
      for (Index r = 0; r < m_; ++r) {
        const Scalar& a = tableau_(r, entering);
        const Index bj = basis_[static_cast<std::size_t>(r)];
        Scalar ratio;
        if (phase_ == 2 && is_artificial(bj)) {
          if (Traits::sign(a, tol_) == 0) continue;
          ratio = Scalar(0L);
        } else {
          if (Traits::sign(a, tol_) <= 0) continue;
          ratio = xb_(r) / a;
        }
        bool take = leaving < 0;
        if (!take) {
          const int cmp = Traits::sign(Scalar(ratio - best_ratio), tol_);
          take = cmp < 0 || (cmp == 0 && bj < basis_[static_cast<std::size_t>(leaving)]);
        }
        if (take) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return LpStatus::unbounded;
      pivot(leaving, entering);
      if constexpr (!Traits::is_exact) {
        for (Index r = 0; r < m_; ++r) {
          if (Traits::sign(xb_(r), tol_) == 0) xb_(r) = Scalar(0L);
        }
      }
    }
  }

  void drive_out_artificials() {
    for (Index r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[static_cast<std::size_t>(r)])) continue;
      Index col = -1;
      for (Index j = 0; j < ncols_; ++j) {
        if (!is_basic(j) && Traits::sign(tableau_(r, j), tol_) != 0) {
          col = j;
          break;
        }
      }
      if (col < 0) {
        redundant_.push_back(r);
      } else {
        pivot(r, col);
      }
    }
  }

  const StandardForm<Scalar>& sf_;
  Index m_;
  Index ncols_;
  double tol_;
  int phase_ = 1;
  Eigen::MatrixX<Scalar> tableau_;
  Eigen::VectorX<Scalar> xb_;
  Basis basis_;
  std::vector<Index> redundant_;
  std::int64_t iterations_ = 0;
};

namespace detail {

template <typename Scalar>
LpSolution<Scalar> collect(const StandardForm<Scalar>& sf, const TableauSimplex<Scalar>& solver, LpStatus status) {
  LpSolution<Scalar> out;
  out.status = status;
  out.iterations = solver.iterations();
  out.basis = solver.basis();
  out.redundant_rows = solver.redundant_rows();
  if (status == LpStatus::optimal) {
    const Eigen::VectorX<Scalar> x = solver.primal();
    out.primal = sf.recover_primal(x);
    out.dual = sf.recover_dual(solver.duals());
    Scalar obj = sf.objective_offset;
    for (Index j = 0; j < sf.cols(); ++j) obj += sf.cost(j) * x(j);
    out.objective_value = obj;
  }
  return out;
}

}  // namespace detail

/// Cold-start tableau solve (Bland's rule throughout).
template <typename Scalar>
LpSolution<Scalar> tableau_solve(const LinearProgram<Scalar>& lp, double tol = 1e-9) {
  const StandardForm<Scalar> sf = to_standard_form(lp);
  TableauSimplex<Scalar> solver(sf, tol);
  const LpStatus status = solver.solve();
  return detail::collect(sf, solver, status);
}

template <typename Scalar>
struct ExactVerification {
  LpSolution<Scalar> solution;
  /// True when the hinted basis was nonsingular and primal feasible, so the
  /// exact solve continued from it (zero extra pivots means it was optimal).
  bool used_hint = false;
};

/// Exact optimum of `lp`, starting from `basis_hint` (typically the basis
/// returned by simplex_solve on the floating-point image of the same
/// program). Falls back to a cold exact solve when the hint is singular or
/// infeasible.
template <typename Scalar>
ExactVerification<Scalar> rational_verify(const LinearProgram<Scalar>& lp, const Basis& basis_hint) {
  static_assert(ScalarTraits<Scalar>::is_exact, "rational_verify needs an exact scalar type");
  const StandardForm<Scalar> sf = to_standard_form(lp);
  {
    TableauSimplex<Scalar> warm(sf);
    if (auto status = warm.solve_from_basis(basis_hint)) {
      return {detail::collect(sf, warm, *status), true};
    }
  }
  TableauSimplex<Scalar> cold(sf);
  const LpStatus status = cold.solve();
  return {detail::collect(sf, cold, status), false};
}

/// Exact rational image of a double program (every finite double is a
/// dyadic rational, so this loses nothing).
inline RationalLp to_rational(const LinearProgramd& lp) {
  return lp.cast<Rational>([](double v) { return Rational::from_double(v); });
}

}  // namespace bellport::lp

#endif  // BELLPORT_LP_TABLEAU_SIMPLEX_HPP
