#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bellport/exact.hpp"
#include "bellport/multiport.hpp"

using bellport::Rational;
using bellport::Sqrt2Field;
using bellport::Sqrt3Field;

TEST_CASE("rational arithmetic is exact") {
  const Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK((Rational(1, 2) - Rational(1, 3)) == Rational(1, 6));
  CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("quadratic surd sign is decided exactly") {
  // 7 - 5 sqrt(2) = -0.0710...; 99 - 70 sqrt(2) = +0.00714...
  CHECK(Sqrt2Field(Rational(7), Rational(-5)).sign() == -1);
  CHECK(Sqrt2Field(Rational(99), Rational(-70)).sign() == 1);
  CHECK(Sqrt3Field(Rational(-2), Rational(1)).sign() == -1);  // sqrt3 < 2
  CHECK(Sqrt2Field(0L).sign() == 0);
}

TEST_CASE("quadratic surd field operations") {
  const Sqrt2Field r = Sqrt2Field::root();
  CHECK(r * r == Sqrt2Field(2L));
  const Sqrt2Field x(Rational(3), Rational(1, 2));
  const Sqrt2Field y(Rational(-1), Rational(2));
  CHECK((x / y) * y == x);
  CHECK(std::abs((x * y).to_double() - x.to_double() * y.to_double()) < 1e-12);
  CHECK_THROWS_AS(x / Sqrt2Field(0L), std::domain_error);
}

TEST_CASE("exact cosines of rational multiples of pi") {
  using bellport::cos_pi;
  for (int k = -24; k <= 24; ++k) {
    const Rational t(k, 4);
    CHECK(std::abs(cos_pi<Sqrt2Field>(t).to_double() - std::cos(k * std::numbers::pi / 4)) < 1e-14);
    const Rational s(k, 6);
    CHECK(std::abs(cos_pi<Sqrt3Field>(s).to_double() - std::cos(k * std::numbers::pi / 6)) < 1e-14);
  }
  CHECK_THROWS_AS(cos_pi<Sqrt2Field>(Rational(1, 6)), std::domain_error);
  CHECK_THROWS_AS(cos_pi<Sqrt3Field>(Rational(1, 4)), std::domain_error);
  CHECK_THROWS_AS(cos_pi<Sqrt3Field>(Rational(1, 5)), std::domain_error);
}
