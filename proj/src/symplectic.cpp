#include "gaborzak/symplectic.hpp"

#include <sstream>

#include "gaborzak/core.hpp"

namespace gz {

RationalMatrix2 RationalMatrix2::inverse() const {
  const Rational D = det();
  if (D == Rational(0)) throw ValidationError("singular matrix");
  return {d / D, -b / D, -c / D, a / D};
}

RationalMatrix2 RationalMatrix2::parse(const std::string& csv) {
  std::vector<Rational> e;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) e.push_back(Rational::parse(item));
  if (e.size() != 4) throw ValidationError("matrix needs four entries 'a,b,c,d', got '" + csv + "'");
  return {e[0], e[1], e[2], e[3]};
}

std::string RationalMatrix2::str() const { return a.str() + "," + b.str() + "," + c.str() + "," + d.str(); }

GeneratorStep GeneratorStep::dilation(const Rational& alpha) {
  if (alpha == Rational(0)) throw ValidationError("dilation parameter must be nonzero");
  return {Kind::Dilation, alpha};
}

RationalMatrix2 GeneratorStep::matrix() const {
  switch (kind) {
    case Kind::J: return {0, 1, -1, 0};
    case Kind::Dilation: return RationalMatrix2::diag(parameter, parameter.inverse());
    case Kind::Chirp: return {1, 0, parameter, 1};
  }
  return {};
}

std::string GeneratorStep::kind_name() const {
  switch (kind) {
    case Kind::J: return "J";
    case Kind::Dilation: return "dilation";
    case Kind::Chirp: return "chirp";
  }
  return "?";
}

Rational lattice_density(const RationalMatrix2& A) {
  const Rational D = A.det();
  if (D == Rational(0)) throw ValidationError("singular lattice matrix");
  return D.abs().inverse();
}

LatticeReduction lattice_reduce(const RationalMatrix2& A) {
  LatticeReduction out;
  out.normalized = A;
  if (A.det() == Rational(0)) throw ValidationError("singular lattice matrix");
  if (A.det() < Rational(0)) {
    // A diag(1,-1) generates the same lattice.
    out.normalized.b = -A.b;
    out.normalized.d = -A.d;
    out.column_flipped = true;
  }
  const Rational D = out.normalized.det();
  out.P = to_int64(D.num());
  out.Q = to_int64(D.den());
  out.B = RationalMatrix2::diag(Rational(1, out.Q), Rational(out.P)) * out.normalized.inverse();
  return out;
}

std::vector<GeneratorStep> sl2_factorize(const RationalMatrix2& S) {
  if (!S.is_sl()) throw ValidationError("sl2_factorize needs det S = 1, got " + S.det().str());
  const Rational& a = S.a;
  const Rational& b = S.b;
  const Rational& c = S.c;
  const Rational& d = S.d;
  if (a != Rational(0)) {
    // S = chirp(c/a) J chirp(-ab) J dilation(-a)
    return {GeneratorStep::dilation(-a), GeneratorStep::j(), GeneratorStep::chirp(-(a * b)), GeneratorStep::j(),
            GeneratorStep::chirp(c / a)};
  }
  // a = 0: S = chirp(-cd) J dilation(1/b)
  return {GeneratorStep::dilation(b.inverse()), GeneratorStep::j(), GeneratorStep::chirp(-(c * d))};
}

RationalMatrix2 product(const std::vector<GeneratorStep>& steps) {
  RationalMatrix2 m = RationalMatrix2::identity();
  for (const auto& s : steps) m = s.matrix() * m;
  return m;
}

Rational random_rational(std::mt19937_64& rng, long long bound, bool nonzero) {
  std::uniform_int_distribution<long long> num(-bound, bound), den(1, bound);
  for (;;) {
    Rational r(BigInt(num(rng)), BigInt(den(rng)));
    if (!nonzero || r != Rational(0)) return r;
  }
}

RationalMatrix2 random_sl2(std::mt19937_64& rng, long long bound) {
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    // a = 0 forces b c = -1
    const Rational b = random_rational(rng, bound, true);
    return {0, b, -b.inverse(), random_rational(rng, bound)};
  }
  const Rational a = random_rational(rng, bound, true);
  const Rational b = random_rational(rng, bound);
  const Rational c = random_rational(rng, bound);
  return {a, b, c, (Rational(1) + b * c) / a};
}

RationalMatrix2 random_gl2(std::mt19937_64& rng, long long bound) {
  for (;;) {
    RationalMatrix2 m{random_rational(rng, bound), random_rational(rng, bound), random_rational(rng, bound),
                      random_rational(rng, bound)};
    if (m.det() != Rational(0)) return m;
  }
}

}  // namespace gz
