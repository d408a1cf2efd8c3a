#ifndef BELLPORT_LP_REVISED_SIMPLEX_HPP
#define BELLPORT_LP_REVISED_SIMPLEX_HPP

#include <cstdint>

#include "bellport/lp/linear_program.hpp"

namespace bellport::lp {

struct SolverOptions {
  double feasibility_tol = 1e-8;
  double optimality_tol = 1e-7;
  double pivot_tol = 1e-10;
  /// Consecutive degenerate pivots before switching from Dantzig to Bland pricing.
  int bland_after = 50;
  /// Pivots between refactorizations of the basis inverse.
  int refactor_interval = 1000;
  /// 0 selects 50 * (rows + columns) of the standard form.
  std::int64_t iteration_limit = 0;
};

/// Two-phase dense revised simplex (maximization). Redundant equality rows
/// are tolerated: their artificials stay basic at zero and are reported in
/// LpSolution::redundant_rows. Throws std::invalid_argument for malformed
/// programs; an exhausted iteration budget is reported as
/// LpStatus::iteration_limit.
LpSolutiond simplex_solve(const LinearProgramd& lp, const SolverOptions& options = {});

}  // namespace bellport::lp

#endif  // BELLPORT_LP_REVISED_SIMPLEX_HPP
