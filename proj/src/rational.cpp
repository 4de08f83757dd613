#include "gaborzak/rational.hpp"

#include <limits>
#include <ostream>
#include <regex>

#include "gaborzak/core.hpp"

namespace gz {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  v_ = boost::multiprecision::cpp_rational(num, den);
}

Rational Rational::parse(const std::string& s) {
  static const std::regex re(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ValidationError("expected a rational 'p/q', got '" + s + "'");
  const BigInt num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
  const BigInt den(m[2].matched ? m[2].str() : std::string("1"));
  return {num, den};
}

std::string Rational::str() const {
  if (is_integer()) return num().str();
  return num().str() + "/" + den().str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.v_ == 0) throw ValidationError("division by zero rational");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const { return Rational(1) / *this; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

long long to_int64(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<long long>::max()) || v < BigInt(std::numeric_limits<long long>::min()))
    throw ValidationError("integer does not fit in 64 bits: " + v.str());
  return v.convert_to<long long>();
}

}  // namespace gz
