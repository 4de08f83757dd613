#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <string>

namespace gz {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number in lowest terms with a positive denominator.
/// Arbitrary precision: arithmetic never wraps.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const boost::multiprecision::cpp_rational& v) : v_(v) {}

  /// Accepts "p/q", "p" or "-p/q"; throws ValidationError otherwise.
  static Rational parse(const std::string& s);

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }
  double to_double() const { return v_.convert_to<double>(); }
  bool is_integer() const { return den() == 1; }
  std::string str() const;  ///< "p/q", or "p" when integral
  int sign() const { return v_.sign(); }

  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }

  Rational abs() const { return v_.sign() < 0 ? -*this : *this; }
  Rational inverse() const;

  const boost::multiprecision::cpp_rational& raw() const { return v_; }

 private:
  boost::multiprecision::cpp_rational v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Converts a rational whose value fits in 64 bits; throws otherwise.
long long to_int64(const BigInt& v);

}  // namespace gz
