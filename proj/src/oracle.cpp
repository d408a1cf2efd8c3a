#include "bellport/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellport::oracle {

Eigen::MatrixXd DeterministicStrategy::marginal(int n, int pair) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  out(alice(kObservablePairs[static_cast<std::size_t>(pair)].alice),
      bob(kObservablePairs[static_cast<std::size_t>(pair)].bob)) = 1.0;
  return out;
}

std::vector<DeterministicStrategy> enumerate_vertices(int n) {
  check_dimension(n, kMaxOracleDimension);
  std::vector<DeterministicStrategy> out;
  out.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2)
      for (int l1 = 0; l1 < n; ++l1)
        for (int l2 = 0; l2 < n; ++l2) out.push_back({k1, k2, l1, l2});
  return out;
}

double oracle_threshold(const PhaseSettings& settings) {
  settings.validate();
  check_dimension(settings.dimension(), kMaxOracleDimension);
  const auto program = build_vertex_lp(prediction_tables(settings));
  const auto solution = lp::tableau_solve(program);
  if (solution.status != lp::LpStatus::optimal) {
    throw std::runtime_error(std::string("vertex LP not solved: ") + lp::to_string(solution.status));
  }
  return 1.0 - std::clamp(solution.objective_value, 0.0, 1.0);
}

std::array<double, 4> chsh_correlators(const PhaseSettings& settings) {
  settings.validate();
  if (settings.dimension() != 2) throw std::invalid_argument("CHSH correlators need n = 2");
  std::array<double, 4> e{};
  for (std::size_t p = 0; p < kObservablePairs.size(); ++p) {
    const auto table = prediction_table(settings, kObservablePairs[p].alice, kObservablePairs[p].bob);
    e[p] = table.base(0, 0) + table.base(1, 1) - table.base(0, 1) - table.base(1, 0);
  }
  return e;
}

double chsh_value(const PhaseSettings& settings) {
  const auto e = chsh_correlators(settings);
  const double total = e[0] + e[1] + e[2] + e[3];
  double best = 0.0;
  for (double x : e) best = std::max(best, std::abs(total - 2.0 * x));
  return best;
}

double chsh_analytic(const PhaseSettings& settings) {
  const double s = chsh_value(settings);
  return s > 2.0 ? 2.0 / s : 1.0;
}

}  // namespace bellport::oracle
