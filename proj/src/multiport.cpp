#include "bellport/multiport.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bellport {

namespace {

constexpr double kPi = std::numbers::pi;

void check_outcome(int n, int k, const char* what) {
  if (k < 0 || k >= n) {
    throw std::out_of_range(std::string(what) + " outcome " + std::to_string(k) + " outside 0.." +
                            std::to_string(n - 1));
  }
}

int checked_pair_dimension(const PhaseVector& phase_a, const PhaseVector& phase_b) {
  if (phase_a.size() != phase_b.size()) {
    throw std::invalid_argument("phase vectors differ in length: " + std::to_string(phase_a.size()) +
                                " vs " + std::to_string(phase_b.size()));
  }
  const int n = static_cast<int>(phase_a.size());
  check_dimension(n, std::numeric_limits<int>::max());
  return n;
}

}  // namespace

void check_dimension(int n, int ceiling) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2, got " + std::to_string(n));
  if (n > ceiling) {
    throw std::invalid_argument("dimension " + std::to_string(n) + " exceeds ceiling " +
                                std::to_string(ceiling));
  }
}

void PhaseSettings::validate() const {
  const int n = dimension();
  check_dimension(n, std::numeric_limits<int>::max());
  for (const PhaseVector* v : {&a1, &a2, &b1, &b2}) {
    if (v->size() != n) throw std::invalid_argument("phase settings: vectors differ in length");
    if (!v->allFinite()) throw std::invalid_argument("phase settings: non-finite phase");
  }
}

Eigen::MatrixXcd bell_multiport(int n) {
  check_dimension(n, std::numeric_limits<int>::max());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd u(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // reduce the exponent first so large n keeps full accuracy
      const double angle = 2.0 * kPi * static_cast<double>((j * i) % n) / n;
      u(j, i) = std::polar(scale, angle);
    }
  }
  return u;
}

PhaseSettings paper_settings(int n) {
  check_dimension(n, std::numeric_limits<int>::max());
  return paper_settings_exact(n).to_radians();
}

RationalPhaseSettings paper_settings_exact(int n) {
  check_dimension(n, std::numeric_limits<int>::max());
  RationalPhaseSettings s;
  for (int m = 0; m < n; ++m) {
    s.a1.emplace_back(0L);
    s.a2.emplace_back(m, n);
    s.b1.emplace_back(m, 2L * n);
    s.b2.emplace_back(-m, 2L * n);
  }
  return s;
}

PhaseSettings RationalPhaseSettings::to_radians() const {
  auto convert = [](const RationalPhaseVector& v) {
    PhaseVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t m = 0; m < v.size(); ++m) out(static_cast<Eigen::Index>(m)) = v[m].to_double() * kPi;
    return out;
  };
  return {convert(a1), convert(a2), convert(b1), convert(b2)};
}

double joint_probability(const PhaseVector& phase_a, const PhaseVector& phase_b, int k, int l) {
  const int n = checked_pair_dimension(phase_a, phase_b);
  check_outcome(n, k, "Alice");
  check_outcome(n, l, "Bob");
  const Eigen::MatrixXcd u = bell_multiport(n);
  std::complex<double> amplitude{0.0, 0.0};
  for (int m = 0; m < n; ++m) {
    amplitude += std::polar(1.0, phase_a(m) + phase_b(m)) * u(m, k) * u(m, l);
  }
  return std::norm(amplitude) / n;
}

double joint_probability_cosine(const PhaseVector& phase_a, const PhaseVector& phase_b, int k, int l) {
  const int n = checked_pair_dimension(phase_a, phase_b);
  check_outcome(n, k, "Alice");
  check_outcome(n, l, "Bob");
  Eigen::VectorXd big_phi(n);
  for (int m = 0; m < n; ++m) {
    big_phi(m) = phase_a(m) + phase_b(m) + 2.0 * kPi * static_cast<double>((m * (k + l)) % n) / n;
  }
  double sum = n;
  for (int m = 1; m < n; ++m) {
    for (int mp = 0; mp < m; ++mp) sum += 2.0 * std::cos(big_phi(m) - big_phi(mp));
  }
  return sum / (static_cast<double>(n) * n * n);
}

PredictionTabled prediction_table(const PhaseSettings& settings, int i, int j) {
  settings.validate();
  if (i < 0 || i > 1 || j < 0 || j > 1) throw std::out_of_range("observable index must be 0 or 1");
  const int n = settings.dimension();
  const PhaseVector& a = settings.alice(i);
  const PhaseVector& b = settings.bob(j);
  const Eigen::MatrixXcd u = bell_multiport(n);
  Eigen::VectorXcd weights(n);
  for (int m = 0; m < n; ++m) weights(m) = std::polar(1.0, a(m) + b(m));
  PredictionTabled table{Eigen::MatrixXd(n, n)};
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const std::complex<double> amplitude = (weights.array() * u.col(k).array() * u.col(l).array()).sum();
      table.base(k, l) = std::norm(amplitude) / n;
    }
  }
  return table;
}

PairTables<double> prediction_tables(const PhaseSettings& settings) {
  PairTables<double> out;
  for (std::size_t p = 0; p < kObservablePairs.size(); ++p) {
    out[p] = prediction_table(settings, kObservablePairs[p].alice, kObservablePairs[p].bob);
  }
  return out;
}

EfficiencyPredictionTabled efficiency_table(const PredictionTabled& table, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("detector efficiency must lie in [0, 1], got " + std::to_string(eta));
  }
  return {table, eta};
}

namespace detail {

int twelfths_of_pi(const Rational& t) {
  const Rational scaled = t * Rational(12L);
  const mpq_class& q = scaled.get();
  if (q.get_den() != 1) return -1;
  mpz_class r = q.get_num() % 24;
  if (r < 0) r += 24;
  return static_cast<int>(r.get_si());
}

}  // namespace detail

}  // namespace bellport
