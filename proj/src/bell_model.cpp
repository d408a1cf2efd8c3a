#include "bellport/bell_model.hpp"

#include <chrono>
#include <cmath>

namespace bellport {

namespace detail {

std::string base36(int value) {
  static constexpr char kDigits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  if (value < 0 || value >= 36) throw std::out_of_range("base36 digit out of range");
  return std::string(1, kDigits[value]);
}

}  // namespace detail

namespace {

std::array<EfficiencyPredictionTabled, 4> efficiency_tables(const PhaseSettings& settings, double eta) {
  const PairTables<double> ideal = prediction_tables(settings);
  std::array<EfficiencyPredictionTabled, 4> out;
  for (std::size_t p = 0; p < ideal.size(); ++p) out[p] = efficiency_table(ideal[p], eta);
  return out;
}

}  // namespace

lp::LinearProgramd build_threshold_lp(const PhaseSettings& settings) {
  return build_threshold_lp(prediction_tables(settings));
}

lp::LinearProgramd build_efficiency_lp(const PhaseSettings& settings, double eta) {
  return build_marginal_lp(affine_tables(efficiency_tables(settings, eta)));
}

std::array<Eigen::MatrixXd, 4> hidden_marginals(const Eigen::VectorXd& distribution, int base) {
  if (distribution.size() < visibility_column(base)) {
    throw std::invalid_argument("distribution shorter than base^4");
  }
  std::array<Eigen::MatrixXd, 4> out;
  for (auto& m : out) m = Eigen::MatrixXd::Zero(base, base);
  for (Eigen::Index c = 0; c < visibility_column(base); ++c) {
    const HiddenVarIndex h = HiddenVarIndex::unflatten(c, base);
    for (std::size_t p = 0; p < kObservablePairs.size(); ++p) {
      out[p](h.alice(kObservablePairs[p].alice), h.bob(kObservablePairs[p].bob)) += distribution(c);
    }
  }
  return out;
}

ThresholdResult solve_marginal_lp(const AffinePairTables<double>& tables, const lp::SolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int base = tables[0].outcomes();
  const lp::LinearProgramd program = build_marginal_lp(tables);
  const lp::LpSolutiond solution = lp::simplex_solve(program, options);

  ThresholdResult result;
  SolveDiagnostics& diag = result.diagnostics;
  diag.iterations = solution.iterations;
  diag.status = solution.status;
  diag.redundant_rows = solution.redundant_rows.size();
  if (solution.status != lp::LpStatus::optimal) {
    throw SolverError(std::string("marginal LP not solved: ") + lp::to_string(solution.status) + " after " +
                          std::to_string(solution.iterations) + " iterations",
                      diag);
  }

  const Eigen::Index hidden = visibility_column(base);
  result.v_crit = std::clamp(solution.primal(hidden), 0.0, 1.0);
  result.f_threshold = 1.0 - result.v_crit;
  result.certificate = solution.primal.head(hidden);

  const double min_entry = result.certificate.minCoeff();
  const double total = result.certificate.sum();
  const auto marginals = hidden_marginals(result.certificate, base);
  for (std::size_t p = 0; p < marginals.size(); ++p) {
    const Eigen::MatrixXd target = tables[p].at(result.v_crit);
    diag.certificate_residual = std::max(diag.certificate_residual, (marginals[p] - target).cwiseAbs().maxCoeff());
  }
  diag.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (min_entry < -1e-9 || std::abs(total - 1.0) > 1e-8 || diag.certificate_residual > 1e-7) {
    throw SolverError("hidden-variable certificate failed validation (min entry " + std::to_string(min_entry) +
                          ", total " + std::to_string(total) + ", marginal residual " +
                          std::to_string(diag.certificate_residual) + ")",
                      diag);
  }
  return result;
}

ThresholdResult solve_threshold(const PhaseSettings& settings, const lp::SolverOptions& options) {
  settings.validate();
  ThresholdResult result = solve_marginal_lp(affine_tables(prediction_tables(settings)), options);
  result.n = settings.dimension();
  result.settings = settings;
  return result;
}

ThresholdResult solve_efficiency(const PhaseSettings& settings, double eta, const lp::SolverOptions& options) {
  settings.validate();
  ThresholdResult result = solve_marginal_lp(affine_tables(efficiency_tables(settings, eta)), options);
  result.n = settings.dimension();
  result.settings = settings;
  result.eta = eta;
  return result;
}

EfficiencyScanResult scan_critical_efficiency(const PhaseSettings& settings, double step,
                                              const lp::SolverOptions& options) {
  if (!(step > 0.0 && step < 1.0)) throw std::invalid_argument("scan step must lie in (0, 1)");
  settings.validate();
  EfficiencyScanResult result;
  result.n = settings.dimension();
  result.settings = settings;
  result.method = EfficiencyMethod::scan;
  for (long k = 0;; ++k) {
    const double eta = std::max(0.0, 1.0 - static_cast<double>(k) * step);
    ThresholdResult point;
    try {
      point = solve_efficiency(settings, eta, options);
    } catch (const SolverError& e) {
      throw ScanError(e, result);
    }
    result.samples.push_back({eta, point.v_crit, point.diagnostics.iterations});
    if (point.v_crit >= kLocalVisibility || eta == 0.0) {
      result.eta_critical = eta;
      return result;
    }
  }
}

EfficiencyScanResult bisect_critical_efficiency(const PhaseSettings& settings, double tol,
                                                const lp::SolverOptions& options) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");
  settings.validate();
  EfficiencyScanResult result;
  result.n = settings.dimension();
  result.settings = settings;
  result.method = EfficiencyMethod::bisection;

  auto is_local = [&](double eta) {
    ThresholdResult point;
    try {
      point = solve_efficiency(settings, eta, options);
    } catch (const SolverError& e) {
      throw ScanError(e, result);
    }
    result.samples.push_back({eta, point.v_crit, point.diagnostics.iterations});
    return point.v_crit >= kLocalVisibility;
  };

  // eta = 0 is local by construction: nothing ever fires.
  double lo = 0.0;
  double hi = 1.0;
  if (is_local(hi)) {
    result.eta_critical = 1.0;
    return result;
  }
  while ((hi - lo) / 2.0 > tol) {
    const double mid = 0.5 * (lo + hi);
    (is_local(mid) ? lo : hi) = mid;
  }
  result.eta_critical = 0.5 * (lo + hi);
  return result;
}

}  // namespace bellport
