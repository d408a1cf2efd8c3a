#ifndef BELLPORT_EXACT_HPP
#define BELLPORT_EXACT_HPP

// Exact scalar types usable as Eigen scalars: arbitrary-precision rationals
// and elements a + b*sqrt(D) of the real quadratic fields Q(sqrt(D)).

#include <gmpxx.h>

#include <Eigen/Core>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bellport {

/// Arbitrary-precision rational. Wraps mpq_class so that every operator
/// returns a concrete value (no GMP expression templates leak into Eigen).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : value_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    value_.canonicalize();
  }
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Exact binary value of a finite double.
  static Rational from_double(double value) {
    if (!std::isfinite(value)) throw std::domain_error("Rational: non-finite double");
    return Rational(mpq_class(value));
  }

  const mpq_class& get() const { return value_; }
  double to_double() const { return value_.get_d(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  std::string str() const { return value_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

/// Element a + b*sqrt(D) of Q(sqrt(D)); D must be a positive non-square.
/// Sign (and hence ordering) is decided exactly.
template <int D>
class QuadraticSurd {
  static_assert(D > 1, "QuadraticSurd needs a positive non-square radicand");

 public:
  QuadraticSurd() = default;
  QuadraticSurd(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  QuadraticSurd(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadraticSurd(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  /// sqrt(D) itself.
  static QuadraticSurd root() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  static constexpr int radicand = D;

  double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(double(D)); }

  int sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with D b^2
    const Rational lhs = a_ * a_;
    const Rational rhs = Rational(D) * b_ * b_;
    if (lhs == rhs) return 0;  // unreachable for non-square D
    return lhs > rhs ? sa : sb;
  }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadraticSurd conjugate() const { return {a_, -b_}; }
  /// Field norm a^2 - D b^2.
  Rational norm() const { return a_ * a_ - Rational(D) * b_ * b_; }

  QuadraticSurd operator-() const { return {-a_, -b_}; }
  QuadraticSurd& operator+=(const QuadraticSurd& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QuadraticSurd& operator-=(const QuadraticSurd& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QuadraticSurd& operator*=(const QuadraticSurd& o) {
    Rational a = a_ * o.a_ + Rational(D) * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QuadraticSurd& operator/=(const QuadraticSurd& o) {
    const Rational n = o.norm();
    if (n.is_zero()) throw std::domain_error("QuadraticSurd: division by zero");
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend QuadraticSurd operator+(QuadraticSurd x, const QuadraticSurd& y) { return x += y; }
  friend QuadraticSurd operator-(QuadraticSurd x, const QuadraticSurd& y) { return x -= y; }
  friend QuadraticSurd operator*(QuadraticSurd x, const QuadraticSurd& y) { return x *= y; }
  friend QuadraticSurd operator/(QuadraticSurd x, const QuadraticSurd& y) { return x /= y; }
  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadraticSurd& x, const QuadraticSurd& y) { return !(x == y); }
  friend bool operator<(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() >= 0; }
  friend std::ostream& operator<<(std::ostream& os, const QuadraticSurd& x) {
    return os << x.a_ << " + " << x.b_ << "*sqrt(" << D << ")";
  }

 private:
  Rational a_{0};
  Rational b_{0};
};

using Sqrt2Field = QuadraticSurd<2>;
using Sqrt3Field = QuadraticSurd<3>;

// Uniform helpers so templated code can treat double and exact scalars alike.
inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }
template <int D>
double to_double(const QuadraticSurd<D>& x) { return x.to_double(); }

template <typename Scalar>
struct ScalarTraits {
  static constexpr bool is_exact = false;
  /// -1, 0 or +1 with |x| <= tol treated as zero.
  static int sign(const Scalar& x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }
  static double magnitude(const Scalar& x) { return std::abs(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static int sign(const Rational& x, double /*tol*/) { return x.sign(); }
  static double magnitude(const Rational& x) { return std::abs(x.to_double()); }
};

template <int D>
struct ScalarTraits<QuadraticSurd<D>> {
  static constexpr bool is_exact = true;
  static int sign(const QuadraticSurd<D>& x, double /*tol*/) { return x.sign(); }
  static double magnitude(const QuadraticSurd<D>& x) { return std::abs(x.to_double()); }
};

}  // namespace bellport

namespace Eigen {

template <>
struct NumTraits<bellport::Rational> : GenericNumTraits<bellport::Rational> {
  using Real = bellport::Rational;
  using NonInteger = bellport::Rational;
  using Nested = bellport::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <int D>
struct NumTraits<bellport::QuadraticSurd<D>> : GenericNumTraits<bellport::QuadraticSurd<D>> {
  using Real = bellport::QuadraticSurd<D>;
  using NonInteger = bellport::QuadraticSurd<D>;
  using Nested = bellport::QuadraticSurd<D>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 64,
    MulCost = 256
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // BELLPORT_EXACT_HPP
