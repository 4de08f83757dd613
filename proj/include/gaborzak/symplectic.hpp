#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gaborzak/rational.hpp"

namespace gz {

/// Exact 2x2 rational matrix (a b; c d).
struct RationalMatrix2 {
  Rational a{1}, b{0}, c{0}, d{1};

  static RationalMatrix2 identity() { return {}; }
  static RationalMatrix2 diag(const Rational& x, const Rational& y) { return {x, 0, 0, y}; }

  Rational det() const { return a * d - b * c; }
  bool is_sl() const { return det() == Rational(1); }
  RationalMatrix2 inverse() const;
  std::pair<Rational, Rational> apply(const Rational& x, const Rational& y) const {
    return {a * x + b * y, c * x + d * y};
  }

  friend RationalMatrix2 operator*(const RationalMatrix2& l, const RationalMatrix2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
  friend bool operator==(const RationalMatrix2&, const RationalMatrix2&) = default;

  /// "a,b,c,d" with each entry "p/q".
  static RationalMatrix2 parse(const std::string& csv);
  std::string str() const;
};

/// One factor of the SL(2) generator set:
///   J = (0 1; -1 0),  dilation(alpha) = diag(alpha, 1/alpha),  chirp(beta) = (1 0; beta 1).
struct GeneratorStep {
  enum class Kind { J, Dilation, Chirp };
  Kind kind = Kind::J;
  Rational parameter{0};

  static GeneratorStep j() { return {Kind::J, 0}; }
  static GeneratorStep dilation(const Rational& alpha);
  static GeneratorStep chirp(const Rational& beta) { return {Kind::Chirp, beta}; }

  RationalMatrix2 matrix() const;
  std::string kind_name() const;
};

/// |det A|^{-1}.
Rational lattice_density(const RationalMatrix2& A);

struct LatticeReduction {
  RationalMatrix2 B;           ///< det B = 1, B A Z^2 = (1/Q)Z x PZ
  long long P = 1, Q = 1;      ///< coprime, det A' = P/Q
  bool column_flipped = false; ///< second column of A negated to make det > 0
  RationalMatrix2 normalized;  ///< the matrix A' actually reduced
};

LatticeReduction lattice_reduce(const RationalMatrix2& A);

/// Factors S in SL(2,Q) into generator steps listed in application order:
/// the first step acts first on vectors, so S = steps[n-1] * ... * steps[0].
std::vector<GeneratorStep> sl2_factorize(const RationalMatrix2& S);

/// steps[n-1] * ... * steps[0].
RationalMatrix2 product(const std::vector<GeneratorStep>& steps);

/// p/q with |p| <= bound, 1 <= q <= bound.
Rational random_rational(std::mt19937_64& rng, long long bound, bool nonzero = false);
/// det 1, entries built from random_rational; about one draw in four has a = 0.
RationalMatrix2 random_sl2(std::mt19937_64& rng, long long bound);
/// Any nonzero determinant, either sign.
RationalMatrix2 random_gl2(std::mt19937_64& rng, long long bound);

}  // namespace gz
