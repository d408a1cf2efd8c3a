#ifndef BELLPORT_MULTIPORT_HPP
#define BELLPORT_MULTIPORT_HPP

// Bell multiports, phase settings and the quantum joint-outcome predictions
// for a maximally entangled pair of N-level systems.
//
// Indexing is 0-based throughout: mode m, Alice outcome k and Bob outcome l
// all run over 0..n-1 (outcome k here is detector k+1 in 1-based labelling).

#include <Eigen/Core>
#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellport/exact.hpp"

namespace bellport {

inline constexpr int kDefaultDimensionCeiling = 16;

/// Throws std::invalid_argument unless 2 <= n <= ceiling.
void check_dimension(int n, int ceiling = kDefaultDimensionCeiling);

/// Local phase shifts in radians, one per input mode. Stored unreduced.
using PhaseVector = Eigen::VectorXd;

/// Two observables per side, each defined by its phase vector.
struct PhaseSettings {
  PhaseVector a1, a2, b1, b2;

  int dimension() const { return static_cast<int>(a1.size()); }
  /// Alice observable i in {0, 1}.
  const PhaseVector& alice(int i) const { return i == 0 ? a1 : a2; }
  /// Bob observable j in {0, 1}.
  const PhaseVector& bob(int j) const { return j == 0 ? b1 : b2; }
  /// Throws std::invalid_argument on size mismatch, n < 2 or non-finite phases.
  void validate() const;

  friend bool operator==(const PhaseSettings&, const PhaseSettings&) = default;
};

/// The four (Alice, Bob) observable pairs in row-major order: (A1,B1),
/// (A1,B2), (A2,B1), (A2,B2). Pair p has alice = p / 2, bob = p % 2.
struct ObservablePair {
  int alice;
  int bob;
};
inline constexpr std::array<ObservablePair, 4> kObservablePairs{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

/// n x n Bell multiport: U(j, i) = exp(2 pi i j i / n) / sqrt(n).
Eigen::MatrixXcd bell_multiport(int n);

/// Fixed settings: a1 = 0, a2_m = m pi / n, b1_m = m pi / (2n), b2 = -b1.
PhaseSettings paper_settings(int n);

/// Pure-state joint probability from the amplitude sum
/// (1/n) |sum_m exp(i(a_m + b_m)) U(m,k) U(m,l)|^2.
double joint_probability(const PhaseVector& phase_a, const PhaseVector& phase_b, int k, int l);

/// Same quantity from the cosine form
/// (1/n^3) (n + 2 sum_{m > m'} cos(Phi_m - Phi_m')), Phi_m = a_m + b_m + 2 pi m (k + l) / n.
double joint_probability_cosine(const PhaseVector& phase_a, const PhaseVector& phase_b, int k, int l);

/// Joint outcome table of one observable pair. `base` holds the pure-state
/// probabilities; the table at visibility v (noise fraction 1 - v) is
/// v * base + (1 - v) / n^2 cellwise.
template <typename Scalar>
struct PredictionTable {
  Eigen::MatrixX<Scalar> base;

  int dimension() const { return static_cast<int>(base.rows()); }

  Scalar uniform_cell() const {
    const Scalar n(static_cast<long>(dimension()));
    return Scalar(1L) / (n * n);
  }

  Eigen::MatrixX<Scalar> realize(const Scalar& visibility) const {
    const Scalar noise = (Scalar(1L) - visibility) * uniform_cell();
    Eigen::MatrixX<Scalar> out = base * visibility;
    out.array() += noise;
    return out;
  }
};

using PredictionTabled = PredictionTable<double>;

/// Tables for all four observable pairs, indexed like kObservablePairs.
template <typename Scalar>
using PairTables = std::array<PredictionTable<Scalar>, 4>;

/// Table for observables (A_i, B_j), i, j in {0, 1}.
PredictionTabled prediction_table(const PhaseSettings& settings, int i, int j);
PairTables<double> prediction_tables(const PhaseSettings& settings);

/// Joint statistics with identical detector efficiency eta on every detector.
/// Outcome 0 is "no detector fired"; outcome c >= 1 is detector c-1 of the
/// ideal table. Cells: fired block eta^2 * (ideal cell), single no-fire
/// eta (1 - eta) / n, double no-fire (1 - eta)^2.
template <typename Scalar>
struct EfficiencyPredictionTable {
  PredictionTable<Scalar> ideal;
  Scalar eta;

  int dimension() const { return ideal.dimension(); }

  /// Visibility-independent part of every cell.
  Eigen::MatrixX<Scalar> constant_part() const {
    const int n = dimension();
    const Scalar one(1L);
    const Scalar miss = one - eta;
    Eigen::MatrixX<Scalar> out(n + 1, n + 1);
    out(0, 0) = miss * miss;
    const Scalar single = eta * miss / Scalar(static_cast<long>(n));
    for (int c = 1; c <= n; ++c) {
      out(0, c) = single;
      out(c, 0) = single;
    }
    const Scalar fired = eta * eta * ideal.uniform_cell();
    out.bottomRightCorner(n, n).setConstant(fired);
    return out;
  }

  /// d(cell)/dv: nonzero only in the fired block.
  Eigen::MatrixX<Scalar> visibility_slope() const {
    const int n = dimension();
    Eigen::MatrixX<Scalar> out = Eigen::MatrixX<Scalar>::Constant(n + 1, n + 1, Scalar(0L));
    Eigen::MatrixX<Scalar> centred = ideal.base;
    centred.array() -= ideal.uniform_cell();
    out.bottomRightCorner(n, n) = centred * (eta * eta);
    return out;
  }

  Eigen::MatrixX<Scalar> realize(const Scalar& visibility) const {
    return constant_part() + visibility_slope() * visibility;
  }
};

using EfficiencyPredictionTabled = EfficiencyPredictionTable<double>;

/// Throws std::invalid_argument unless 0 <= eta <= 1.
EfficiencyPredictionTabled efficiency_table(const PredictionTabled& table, double eta);

// ---------------------------------------------------------------------------
// Exact predictions. Phases are rational multiples of pi, which makes every
// cell an element of Q(sqrt(2)) (multiples of pi/4) or Q(sqrt(3)) (multiples
// of pi/6).

/// Phases in units of pi.
using RationalPhaseVector = std::vector<Rational>;

struct RationalPhaseSettings {
  RationalPhaseVector a1, a2, b1, b2;

  int dimension() const { return static_cast<int>(a1.size()); }
  const RationalPhaseVector& alice(int i) const { return i == 0 ? a1 : a2; }
  const RationalPhaseVector& bob(int j) const { return j == 0 ? b1 : b2; }
  /// Radian image, for feeding the floating-point pipeline.
  PhaseSettings to_radians() const;
};

/// paper_settings(n) with phases kept as exact multiples of pi.
RationalPhaseSettings paper_settings_exact(int n);

/// cos(t * pi) in the field Field (double, Sqrt2Field or Sqrt3Field).
/// Throws std::domain_error when the value is not representable there.
template <typename Field>
Field cos_pi(const Rational& t);

template <>
inline double cos_pi<double>(const Rational& t) {
  return std::cos(t.to_double() * std::numbers::pi);
}

namespace detail {
/// t mod 2 scaled to twelfths of pi, or -1 when t is not a multiple of 1/12.
int twelfths_of_pi(const Rational& t);
}  // namespace detail

template <>
inline Sqrt2Field cos_pi<Sqrt2Field>(const Rational& t) {
  const int s = detail::twelfths_of_pi(t);
  if (s < 0 || s % 3 != 0) throw std::domain_error("cos_pi: angle not a multiple of pi/4");
  const Rational half(1, 2);
  switch (s / 3) {
    case 0: return Sqrt2Field(1L);
    case 1: return Sqrt2Field(Rational(0), half);
    case 2: return Sqrt2Field(0L);
    case 3: return Sqrt2Field(Rational(0), -half);
    case 4: return Sqrt2Field(-1L);
    case 5: return Sqrt2Field(Rational(0), -half);
    case 6: return Sqrt2Field(0L);
    default: return Sqrt2Field(Rational(0), half);
  }
}

template <>
inline Sqrt3Field cos_pi<Sqrt3Field>(const Rational& t) {
  const int s = detail::twelfths_of_pi(t);
  if (s < 0 || s % 2 != 0) throw std::domain_error("cos_pi: angle not a multiple of pi/6");
  const Rational half(1, 2);
  switch (s / 2) {
    case 0: return Sqrt3Field(1L);
    case 1: return Sqrt3Field(Rational(0), half);
    case 2: return Sqrt3Field(half);
    case 3: return Sqrt3Field(0L);
    case 4: return Sqrt3Field(-half);
    case 5: return Sqrt3Field(Rational(0), -half);
    case 6: return Sqrt3Field(-1L);
    case 7: return Sqrt3Field(Rational(0), -half);
    case 8: return Sqrt3Field(-half);
    case 9: return Sqrt3Field(0L);
    case 10: return Sqrt3Field(half);
    default: return Sqrt3Field(Rational(0), half);
  }
}

/// Cosine-form table evaluated in Field.
template <typename Field>
PredictionTable<Field> exact_prediction_table(const RationalPhaseSettings& settings, int i, int j) {
  const int n = settings.dimension();
  const RationalPhaseVector& a = settings.alice(i);
  const RationalPhaseVector& b = settings.bob(j);
  const Field nf(static_cast<long>(n));
  PredictionTable<Field> table{Eigen::MatrixX<Field>(n, n)};
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      Field sum = nf;
      for (int m = 1; m < n; ++m) {
        for (int mp = 0; mp < m; ++mp) {
          const Rational phi = a[m] + b[m] - a[mp] - b[mp] + Rational(2L * (m - mp) * (k + l), n);
          sum += Field(2L) * cos_pi<Field>(phi);
        }
      }
      table.base(k, l) = sum / (nf * nf * nf);
    }
  }
  return table;
}

template <typename Field>
PairTables<Field> exact_prediction_tables(const RationalPhaseSettings& settings) {
  PairTables<Field> out;
  for (std::size_t p = 0; p < kObservablePairs.size(); ++p) {
    out[p] = exact_prediction_table<Field>(settings, kObservablePairs[p].alice, kObservablePairs[p].bob);
  }
  return out;
}

}  // namespace bellport

#endif  // BELLPORT_MULTIPORT_HPP
