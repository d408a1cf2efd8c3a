#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bellport/bell_model.hpp"
#include "bellport/oracle.hpp"

using namespace bellport;
using namespace bellport::oracle;

namespace {

PhaseSettings random_settings(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  auto draw = [&] {
    PhaseVector v(n);
    for (int m = 0; m < n; ++m) v(m) = angle(rng);
    return v;
  };
  return {draw(), draw(), draw(), draw()};
}

}  // namespace

TEST_CASE("vertex enumeration") {
  CHECK(enumerate_vertices(2).size() == 16);
  CHECK(enumerate_vertices(3).size() == 81);
  CHECK_THROWS_AS(enumerate_vertices(kMaxOracleDimension + 1), std::invalid_argument);
  for (const auto& s : enumerate_vertices(3)) {
    for (int p = 0; p < 4; ++p) {
      const Eigen::MatrixXd m = s.marginal(3, p);
      CHECK(m.sum() == 1.0);
      CHECK(m(s.alice(kObservablePairs[p].alice), s.bob(kObservablePairs[p].bob)) == 1.0);
      CHECK(((m.array() == 0.0) || (m.array() == 1.0)).all());
    }
  }
}

TEST_CASE("vertex and hidden-variable programs agree on the fixed settings") {
  for (int n = 2; n <= 4; ++n) {
    const auto s = paper_settings(n);
    CHECK(std::abs(oracle_threshold(s) - solve_threshold(s).f_threshold) < 1e-7);
  }
}

TEST_CASE("CHSH closed form, two levels") {
  const auto s = paper_settings(2);
  CHECK(std::abs(chsh_value(s) - 2.0 * std::numbers::sqrt2) < 1e-12);
  CHECK(std::abs(chsh_analytic(s) - 1.0 / std::numbers::sqrt2) < 1e-12);
  CHECK_THROWS_AS(chsh_value(paper_settings(3)), std::invalid_argument);
}

TEST_CASE("CHSH bound matches both programs for random two-level settings") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_settings(2, rng);
    const double closed = 1.0 - chsh_analytic(s);
    CHECK(std::abs(solve_threshold(s).f_threshold - closed) < 1e-6);
    CHECK(std::abs(oracle_threshold(s) - closed) < 1e-6);
  }
}

TEST_CASE("equal phase vectors on one side admit a local model") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 3; ++n) {
    auto s = random_settings(n, rng);
    s.a2 = s.a1;
    CHECK(solve_threshold(s).v_crit == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(oracle_threshold(s) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("random settings: vertex and hidden-variable programs agree") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const auto s = random_settings(n, rng);
    CHECK(std::abs(oracle_threshold(s) - solve_threshold(s).f_threshold) < 1e-7);
  }
}

TEST_CASE("exact thresholds") {
  CHECK(exact_oracle_threshold<Sqrt2Field>(paper_settings_exact(2)) == Sqrt2Field(Rational(1), Rational(-1, 2)));
  CHECK(exact_oracle_threshold<Sqrt3Field>(paper_settings_exact(3)) == Sqrt3Field(Rational(11, 2), Rational(-3)));
  CHECK_THROWS_AS(exact_oracle_threshold<Sqrt2Field>(paper_settings_exact(3)), std::domain_error);
}
