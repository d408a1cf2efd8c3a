#ifndef BELLPORT_ORACLE_HPP
#define BELLPORT_ORACLE_HPP

// Small-scale reference computations for the threshold programs: the local
// polytope in vertex form (deterministic strategies) and the closed-form
// CHSH threshold for two-level systems.

#include <Eigen/Core>
#include <array>
#include <vector>

#include "bellport/lp/linear_program.hpp"
#include "bellport/lp/tableau_simplex.hpp"
#include "bellport/multiport.hpp"

namespace bellport::oracle {

inline constexpr int kMaxOracleDimension = 6;

/// One fixed outcome per observable: a vertex of the local polytope.
struct DeterministicStrategy {
  int k1 = 0, k2 = 0, l1 = 0, l2 = 0;

  int alice(int i) const { return i == 0 ? k1 : k2; }
  int bob(int j) const { return j == 0 ? l1 : l2; }

  /// 0/1 table of observable pair p: a single 1 at (alice outcome, bob outcome).
  Eigen::MatrixXd marginal(int n, int pair) const;
};

/// All n^4 strategies, k1 slowest. Throws std::invalid_argument for n > 6.
std::vector<DeterministicStrategy> enumerate_vertices(int n);

/// max v s.t. sum_s w_s marginals(s) = v Q + (1 - v)/n^2 for every pair,
/// sum_s w_s = 1, w >= 0, built from the strategy list.
template <typename Scalar>
lp::LinearProgram<Scalar> build_vertex_lp(const PairTables<Scalar>& tables) {
  const int n = tables[0].dimension();
  const auto strategies = enumerate_vertices(n);
  const Eigen::Index rows_per_pair = static_cast<Eigen::Index>(n) * n;
  const Eigen::Index num_rows = 4 * rows_per_pair;

  // Gather each row's terms column by column.
  std::vector<std::vector<lp::LinearTerm<Scalar>>> rows(static_cast<std::size_t>(num_rows + 1));
  lp::LinearProgram<Scalar> program;
  for (const auto& s : strategies) {
    const Eigen::Index col = program.add_variable();
    for (int p = 0; p < 4; ++p) {
      const Eigen::Index row = p * rows_per_pair + s.alice(kObservablePairs[p].alice) * n + s.bob(kObservablePairs[p].bob);
      rows[static_cast<std::size_t>(row)].push_back({col, Scalar(1L)});
    }
    rows[static_cast<std::size_t>(num_rows)].push_back({col, Scalar(1L)});
  }
  const Eigen::Index v = program.add_variable("V", Scalar(1L), {Scalar(0L), Scalar(1L)});
  for (int p = 0; p < 4; ++p) {
    const Scalar noise = tables[static_cast<std::size_t>(p)].uniform_cell();
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        auto& terms = rows[static_cast<std::size_t>(p * rows_per_pair + k * n + l)];
        // w-part = noise + v (Q - noise)
        terms.push_back({v, Scalar(noise - tables[static_cast<std::size_t>(p)].base(k, l))});
        program.add_constraint(std::move(terms), noise);
      }
    }
  }
  program.add_constraint(std::move(rows[static_cast<std::size_t>(num_rows)]), Scalar(1L));
  return program;
}

/// Critical noise fraction 1 - v_crit from the vertex program, solved with
/// the dense tableau simplex. n <= 6.
double oracle_threshold(const PhaseSettings& settings);

/// Exact critical noise fraction in Field (Sqrt2Field for multiples of pi/4,
/// Sqrt3Field for multiples of pi/6).
template <typename Field>
Field exact_oracle_threshold(const RationalPhaseSettings& settings) {
  check_dimension(settings.dimension(), kMaxOracleDimension);
  const auto program = build_vertex_lp(exact_prediction_tables<Field>(settings));
  const auto solution = lp::tableau_solve(program);
  if (solution.status != lp::LpStatus::optimal) throw std::runtime_error("exact vertex LP did not reach an optimum");
  return Field(1L) - solution.objective_value;
}

/// Correlators E_ij = sum_{k,l} (-1)^(k+l) Q_ij(k,l) in kObservablePairs order. n = 2 only.
std::array<double, 4> chsh_correlators(const PhaseSettings& settings);

/// Largest |CHSH combination| over the four placements of the minus sign.
double chsh_value(const PhaseSettings& settings);

/// v_crit = 2 / |S| when |S| > 2, else 1. n = 2 only.
double chsh_analytic(const PhaseSettings& settings);

}  // namespace bellport::oracle

#endif  // BELLPORT_ORACLE_HPP
