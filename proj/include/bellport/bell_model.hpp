#ifndef BELLPORT_BELL_MODEL_HPP
#define BELLPORT_BELL_MODEL_HPP

// Local-realism linear programs. A local hidden-variable model is a joint
// distribution P(k1, k2, l1, l2) over the outcomes of all four observables
// whose two-observable marginals reproduce every measured table. The
// programs maximize the visibility v at which such a distribution exists.

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellport/lp/linear_program.hpp"
#include "bellport/lp/revised_simplex.hpp"
#include "bellport/multiport.hpp"

namespace bellport {

/// Outcomes (k1, k2, l1, l2) of A1, A2, B1, B2, each in [0, base).
/// base = n for ideal detectors, n + 1 with non-detection (outcome 0).
struct HiddenVarIndex {
  int k1 = 0, k2 = 0, l1 = 0, l2 = 0;

  Eigen::Index flatten(int base) const {
    return ((static_cast<Eigen::Index>(k1) * base + k2) * base + l1) * base + l2;
  }
  static HiddenVarIndex unflatten(Eigen::Index index, int base) {
    HiddenVarIndex h;
    h.l2 = static_cast<int>(index % base);
    index /= base;
    h.l1 = static_cast<int>(index % base);
    index /= base;
    h.k2 = static_cast<int>(index % base);
    h.k1 = static_cast<int>(index / base);
    return h;
  }
  int alice(int i) const { return i == 0 ? k1 : k2; }
  int bob(int j) const { return j == 0 ? l1 : l2; }

  friend bool operator==(const HiddenVarIndex&, const HiddenVarIndex&) = default;
};

/// A table whose cells depend affinely on the visibility:
/// cell(v) = constant + v * slope.
template <typename Scalar>
struct AffineTable {
  Eigen::MatrixX<Scalar> constant;
  Eigen::MatrixX<Scalar> slope;

  int outcomes() const { return static_cast<int>(constant.rows()); }
  Eigen::MatrixX<Scalar> at(const Scalar& v) const { return constant + slope * v; }
};

template <typename Scalar>
using AffinePairTables = std::array<AffineTable<Scalar>, 4>;

template <typename Scalar>
AffinePairTables<Scalar> affine_tables(const PairTables<Scalar>& tables) {
  AffinePairTables<Scalar> out;
  for (std::size_t p = 0; p < tables.size(); ++p) {
    const auto& t = tables[p];
    const int n = t.dimension();
    out[p].constant = Eigen::MatrixX<Scalar>::Constant(n, n, t.uniform_cell());
    out[p].slope = t.base;
    out[p].slope.array() -= t.uniform_cell();
  }
  return out;
}

template <typename Scalar>
AffinePairTables<Scalar> affine_tables(const std::array<EfficiencyPredictionTable<Scalar>, 4>& tables) {
  AffinePairTables<Scalar> out;
  for (std::size_t p = 0; p < tables.size(); ++p) {
    out[p].constant = tables[p].constant_part();
    out[p].slope = tables[p].visibility_slope();
  }
  return out;
}

namespace detail {
std::string base36(int value);
}

/// Column index of the visibility variable (it follows the hidden variables).
inline Eigen::Index visibility_column(int base) {
  return static_cast<Eigen::Index>(base) * base * base * base;
}

/// maximize v subject to: for every observable pair p and outcomes (k, l),
///   sum over the unmeasured outcomes of P  -  v * slope_p(k, l) = constant_p(k, l),
/// plus the normalization sum P = 1; P >= 0, 0 <= v <= 1.
template <typename Scalar>
lp::LinearProgram<Scalar> build_marginal_lp(const AffinePairTables<Scalar>& tables) {
  const int base = tables[0].outcomes();
  for (const auto& t : tables) {
    if (t.outcomes() != base || t.slope.rows() != base || t.slope.cols() != base || t.constant.cols() != base) {
      throw std::invalid_argument("marginal tables differ in size");
    }
  }
  const Eigen::Index hidden = visibility_column(base);
  lp::LinearProgram<Scalar> program;
  for (Eigen::Index c = 0; c < hidden; ++c) {
    const HiddenVarIndex h = HiddenVarIndex::unflatten(c, base);
    program.add_variable("P" + detail::base36(h.k1) + detail::base36(h.k2) + detail::base36(h.l1) +
                         detail::base36(h.l2));
  }
  const Eigen::Index v = program.add_variable("V", Scalar(1L), {Scalar(0L), Scalar(1L)});

  const Scalar zero(0L);
  for (std::size_t p = 0; p < kObservablePairs.size(); ++p) {
    const auto [i, j] = kObservablePairs[p];
    for (int k = 0; k < base; ++k) {
      for (int l = 0; l < base; ++l) {
        std::vector<lp::LinearTerm<Scalar>> terms;
        terms.reserve(static_cast<std::size_t>(base) * base + 1);
        for (int u = 0; u < base; ++u) {
          for (int w = 0; w < base; ++w) {
            HiddenVarIndex h;
            (i == 0 ? h.k1 : h.k2) = k;
            (i == 0 ? h.k2 : h.k1) = u;
            (j == 0 ? h.l1 : h.l2) = l;
            (j == 0 ? h.l2 : h.l1) = w;
            terms.push_back({h.flatten(base), Scalar(1L)});
          }
        }
        const Scalar& slope = tables[p].slope(k, l);
        if (slope != zero) terms.push_back({v, Scalar(-slope)});
        program.add_constraint(std::move(terms), tables[p].constant(k, l),
                               "M" + std::to_string(p) + detail::base36(k) + detail::base36(l));
      }
    }
  }
  std::vector<lp::LinearTerm<Scalar>> norm;
  norm.reserve(static_cast<std::size_t>(hidden));
  for (Eigen::Index c = 0; c < hidden; ++c) norm.push_back({c, Scalar(1L)});
  program.add_constraint(std::move(norm), Scalar(1L), "NORM");
  return program;
}

/// Ideal-detector program: n^4 hidden variables + v, 4 n^2 marginal rows + normalization.
template <typename Scalar>
lp::LinearProgram<Scalar> build_threshold_lp(const PairTables<Scalar>& tables) {
  return build_marginal_lp(affine_tables(tables));
}

lp::LinearProgramd build_threshold_lp(const PhaseSettings& settings);

/// Inefficient-detector program: (n+1)^4 hidden variables + v, 4 (n+1)^2 rows + normalization.
lp::LinearProgramd build_efficiency_lp(const PhaseSettings& settings, double eta);

/// The four two-observable marginals of a hidden-variable distribution.
std::array<Eigen::MatrixXd, 4> hidden_marginals(const Eigen::VectorXd& distribution, int base);

struct SolveDiagnostics {
  std::int64_t iterations = 0;
  lp::LpStatus status = lp::LpStatus::optimal;
  std::size_t redundant_rows = 0;
  /// Max |marginal of certificate - table at v_crit| over all cells.
  double certificate_residual = 0;
  double wall_ms = 0;
};

struct ThresholdResult {
  int n = 0;
  PhaseSettings settings;
  /// Set for inefficient-detector solves.
  std::optional<double> eta;
  double v_crit = 0;
  double f_threshold = 1;
  /// Hidden-variable distribution at the optimum, flattened by HiddenVarIndex.
  Eigen::VectorXd certificate;
  SolveDiagnostics diagnostics;
};

/// Raised when the LP does not reach an optimum or the certificate fails validation.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolveDiagnostics diagnostics)
      : std::runtime_error(what), diagnostics_(diagnostics) {}
  const SolveDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  SolveDiagnostics diagnostics_;
};

ThresholdResult solve_threshold(const PhaseSettings& settings, const lp::SolverOptions& options = {});
ThresholdResult solve_efficiency(const PhaseSettings& settings, double eta,
                                 const lp::SolverOptions& options = {});

/// Solves a program produced by build_marginal_lp and validates its certificate.
ThresholdResult solve_marginal_lp(const AffinePairTables<double>& tables, const lp::SolverOptions& options = {});

/// v_crit at or above this counts as "the noise-free state admits a local model".
inline constexpr double kLocalVisibility = 1.0 - 1e-7;

struct EfficiencySample {
  double eta = 0;
  double v_crit = 0;
  std::int64_t iterations = 0;
};

enum class EfficiencyMethod { scan, bisection };

struct EfficiencyScanResult {
  int n = 0;
  PhaseSettings settings;
  std::vector<EfficiencySample> samples;
  double eta_critical = 0;
  EfficiencyMethod method = EfficiencyMethod::scan;

  std::int64_t total_iterations() const {
    std::int64_t total = 0;
    for (const auto& s : samples) total += s.iterations;
    return total;
  }
};

/// Aborted scan; carries the samples gathered before the failing solve.
class ScanError : public SolverError {
 public:
  ScanError(const SolverError& cause, EfficiencyScanResult partial)
      : SolverError(cause.what(), cause.diagnostics()), partial_(std::move(partial)) {}
  const EfficiencyScanResult& partial() const { return partial_; }

 private:
  EfficiencyScanResult partial_;
};

/// Walks eta = 1, 1 - step, 1 - 2 step, ... (ending at 0) and stops at the
/// first eta whose noise-free statistics admit a local model.
EfficiencyScanResult scan_critical_efficiency(const PhaseSettings& settings, double step = 0.01,
                                              const lp::SolverOptions& options = {});

/// Bisection on eta in [0, 1] for the same predicate; |error| <= tol.
EfficiencyScanResult bisect_critical_efficiency(const PhaseSettings& settings, double tol = 1e-3,
                                                const lp::SolverOptions& options = {});

}  // namespace bellport

#endif  // BELLPORT_BELL_MODEL_HPP
