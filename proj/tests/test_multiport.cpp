#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "bellport/multiport.hpp"

using namespace bellport;
using std::numbers::pi;

namespace {

PhaseVector random_phases(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> dist(-2 * pi, 2 * pi);
  PhaseVector v(n);
  for (int m = 0; m < n; ++m) v(m) = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("bell_multiport small cases") {
  const Eigen::MatrixXcd u2 = bell_multiport(2);
  const double h = 1 / std::sqrt(2.0);
  CHECK(std::abs(u2(0, 0) - h) < 1e-15);
  CHECK(std::abs(u2(0, 1) - h) < 1e-15);
  CHECK(std::abs(u2(1, 0) - h) < 1e-15);
  CHECK(std::abs(u2(1, 1) + h) < 1e-15);

  // 1-based entry (2,3) = exp(i 4 pi / 3) / sqrt(3)
  const Eigen::MatrixXcd u3 = bell_multiport(3);
  CHECK(std::abs(u3(1, 2) - std::polar(1 / std::sqrt(3.0), 4 * pi / 3)) < 1e-15);

  CHECK_THROWS_AS(bell_multiport(1), std::invalid_argument);
}

TEST_CASE("bell_multiport is unitary and unbiased" * doctest::test_suite("properties")) {
  for (int n = 2; n <= 16; ++n) {
    const Eigen::MatrixXcd u = bell_multiport(n);
    const Eigen::MatrixXcd prod = u.adjoint() * u;
    CHECK((prod - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((u.cwiseAbs().array() - 1 / std::sqrt(double(n))).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("paper_settings phases") {
  const PhaseSettings s2 = paper_settings(2);
  CHECK(s2.a1 == PhaseVector::Zero(2));
  CHECK(s2.a2(1) == pi / 2);
  CHECK(s2.b1(1) == pi / 4);
  CHECK(s2.b2(1) == -pi / 4);

  const PhaseSettings s3 = paper_settings(3);
  CHECK(s3.a2(1) == pi / 3);
  CHECK(s3.a2(2) == 2 * pi / 3);
  CHECK(s3.b1(1) == pi / 6);
  CHECK(s3.b1(2) == pi / 3);
  CHECK(s3.b2(2) == -pi / 3);

  const PhaseSettings s4 = paper_settings(4);
  CHECK(s4.b1(1) == doctest::Approx(pi / 8).epsilon(1e-15));
  CHECK(s4.b1(2) == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(s4.b1(3) == doctest::Approx(3 * pi / 8).epsilon(1e-15));

  CHECK_THROWS_AS(paper_settings(1), std::invalid_argument);
}

TEST_CASE("joint_probability with all phases zero") {
  for (int n = 2; n <= 7; ++n) {
    const PhaseVector zero = PhaseVector::Zero(n);
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const double expected = (k + l) % n == 0 ? 1.0 / n : 0.0;
        CHECK(std::abs(joint_probability(zero, zero, k, l) - expected) < 1e-14);
      }
    }
  }
}

TEST_CASE("joint_probability qubit value") {
  // cosine form by hand: (1/8)(2 + 2 cos(pi/4))
  const PhaseSettings s = paper_settings(2);
  const double expected = (2 + std::sqrt(2.0)) / 8;
  CHECK(std::abs(joint_probability(s.a1, s.b1, 0, 0) - expected) < 1e-14);
  CHECK(std::abs(joint_probability(s.a1, s.b1, 0, 1) - (2 - std::sqrt(2.0)) / 8) < 1e-14);
}

TEST_CASE("joint_probability argument errors") {
  const PhaseVector a = PhaseVector::Zero(3);
  CHECK_THROWS_AS(joint_probability(a, PhaseVector::Zero(4), 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(joint_probability(a, a, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(joint_probability_cosine(a, a, 0, -1), std::out_of_range);
}

TEST_CASE("amplitude and cosine forms agree on random phases" * doctest::test_suite("properties")) {
  std::mt19937_64 rng(20240611);
  for (int n = 2; n <= 16; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const PhaseVector a = random_phases(rng, n);
      const PhaseVector b = random_phases(rng, n);
      double total = 0;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const double p = joint_probability(a, b, k, l);
          CHECK(std::abs(p - joint_probability_cosine(a, b, k, l)) < 1e-12);
          total += p;
        }
      }
      CHECK(std::abs(total - 1) < 1e-12);
    }
  }
}

TEST_CASE("prediction tables have uniform marginals" * doctest::test_suite("properties")) {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 16; ++n) {
    PhaseSettings s = paper_settings(n);
    if (n % 2 == 0) s = {random_phases(rng, n), random_phases(rng, n), random_phases(rng, n), random_phases(rng, n)};
    for (const auto& t : prediction_tables(s)) {
      CHECK(t.base.minCoeff() >= 0);
      CHECK(t.base.maxCoeff() <= 1);
      CHECK(std::abs(t.base.sum() - 1) < 1e-10);
      CHECK((t.base.rowwise().sum().array() - 1.0 / n).abs().maxCoeff() < 1e-10);
      CHECK((t.base.colwise().sum().array() - 1.0 / n).abs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("prediction table realizations") {
  const auto t = prediction_table(paper_settings(2), 0, 0);
  CHECK((t.realize(0.0).array() - 0.25).abs().maxCoeff() < 1e-15);
  const double diag = (2 + std::sqrt(2.0)) / 8;
  const double off = (2 - std::sqrt(2.0)) / 8;
  CHECK(std::abs(t.base(0, 0) - diag) < 1e-14);
  CHECK(std::abs(t.base(1, 1) - diag) < 1e-14);
  CHECK(std::abs(t.base(0, 1) - off) < 1e-14);
  CHECK(std::abs(t.base(1, 0) - off) < 1e-14);
  CHECK_THROWS_AS(prediction_table(paper_settings(2), 2, 0), std::out_of_range);
}

TEST_CASE("efficiency table limits") {
  const auto t = prediction_table(paper_settings(2), 0, 0);
  const double v = 0.7;

  const auto ideal = efficiency_table(t, 1.0).realize(v);
  CHECK(ideal.row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(ideal.col(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ideal.bottomRightCorner(2, 2) - t.realize(v)).cwiseAbs().maxCoeff() < 1e-15);

  const auto dark = efficiency_table(t, 0.0).realize(v);
  CHECK(dark(0, 0) == 1.0);
  CHECK(dark.sum() == doctest::Approx(1.0).epsilon(1e-15));

  const auto half = efficiency_table(t, 0.5);
  const auto cells = half.realize(v);
  CHECK((cells.bottomRightCorner(2, 2) - 0.25 * t.realize(v)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(cells(0, 1) == doctest::Approx(0.125));
  CHECK(cells(2, 0) == doctest::Approx(0.125));
  CHECK(cells(0, 0) == doctest::Approx(0.25));
  CHECK(half.visibility_slope().row(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(half.visibility_slope().col(0).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(efficiency_table(t, 1.01), std::invalid_argument);
  CHECK_THROWS_AS(efficiency_table(t, -0.1), std::invalid_argument);
}

TEST_CASE("efficiency table total mass is one") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dim(2, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = dim(rng);
    const auto t = prediction_table(paper_settings(n), trial % 2, (trial / 2) % 2);
    const auto cells = efficiency_table(t, unit(rng)).realize(unit(rng));
    CHECK(cells.minCoeff() >= -1e-15);
    CHECK(std::abs(cells.sum() - 1) < 1e-10);
  }
}

TEST_CASE("exact tables match the floating-point tables") {
  const auto t2 = exact_prediction_tables<Sqrt2Field>(paper_settings_exact(2));
  const auto f2 = prediction_tables(paper_settings(2));
  const auto t3 = exact_prediction_tables<Sqrt3Field>(paper_settings_exact(3));
  const auto f3 = prediction_tables(paper_settings(3));
  for (int p = 0; p < 4; ++p) {
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) CHECK(std::abs(t2[p].base(k, l).to_double() - f2[p].base(k, l)) < 1e-14);
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) CHECK(std::abs(t3[p].base(k, l).to_double() - f3[p].base(k, l)) < 1e-14);
  }
  // (2 + sqrt 2) / 8 exactly
  CHECK(t2[0].base(0, 0) == Sqrt2Field(Rational(1, 4), Rational(1, 8)));
}
