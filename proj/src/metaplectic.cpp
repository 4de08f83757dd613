#include "gaborzak/metaplectic.hpp"

#include <algorithm>
#include <cmath>

#include "gaborzak/zak.hpp"

namespace gz {

namespace {

std::pair<std::int64_t, std::int64_t> small_fraction(const Rational& r) {
  return {to_int64(r.num()), to_int64(r.den())};
}

double as_double(const Rational& r) { return r.to_double(); }

}  // namespace

SampledFunction dilate(const SampledFunction& f, const Rational& alpha) {
  if (alpha == Rational(0)) throw ValidationError("dilation parameter must be nonzero");
  const auto [p, q] = small_fraction(alpha);
  const int S = f.samples_per_unit();
  if (S % q != 0 || !is_power_of_two(S / q) || S / q < 2)
    throw ValidationError("dilation by " + alpha.str() + " needs S/q to be a power of two >= 2 (S = " +
                          std::to_string(S) + ")");
  const int So = static_cast<int>(S / q);
  const double a = as_double(alpha);
  const double e1 = static_cast<double>(f.support().lo) / a, e2 = static_cast<double>(f.support().hi) / a;
  const Interval sup{static_cast<std::int64_t>(std::floor(std::min(e1, e2))),
                     static_cast<std::int64_t>(std::ceil(std::max(e1, e2)))};
  const double scale = std::sqrt(std::abs(a));
  std::vector<cd> v(static_cast<std::size_t>(sup.length() * So));
  for (std::int64_t j = sup.lo * So; j < sup.hi * So; ++j)
    v[static_cast<std::size_t>(j - sup.lo * So)] = scale * f.at(p * j);
  return {So, sup, std::move(v)};
}

SampledFunction chirp(const SampledFunction& f, const Rational& beta) {
  const auto [p, q] = small_fraction(beta);
  const std::int64_t S = f.samples_per_unit();
  const std::int64_t den = q * S * S;
  std::vector<cd> v = f.values();
  for (std::int64_t j = f.first_index(); j < f.end_index(); ++j) {
    const auto jj = static_cast<__int128>(floor_mod(j, den));
    const auto num = static_cast<std::int64_t>((jj * jj % den) * floor_mod(p, den) % den);
    v[static_cast<std::size_t>(j - f.first_index())] *= unit_root(num, den);
  }
  return {f.samples_per_unit(), f.support(), std::move(v)};
}

SampledFunction downsample(const SampledFunction& f, int target_S) {
  const int S = f.samples_per_unit();
  if (target_S < 1 || S % target_S != 0) throw ValidationError("downsample target must divide S");
  const int r = S / target_S;
  const Interval sup = f.support();
  std::vector<cd> v(static_cast<std::size_t>(sup.length() * target_S));
  for (std::int64_t j = sup.lo * target_S; j < sup.hi * target_S; ++j)
    v[static_cast<std::size_t>(j - sup.lo * target_S)] = f.at(j * r);
  return {target_S, sup, std::move(v)};
}

SampledFunction apply_generator(const GeneratorStep& step, const SampledFunction& f) {
  switch (step.kind) {
    case GeneratorStep::Kind::J: return fourier_transform(f);
    case GeneratorStep::Kind::Dilation: return dilate(f, step.parameter.inverse());
    case GeneratorStep::Kind::Chirp: return chirp(f, step.parameter / Rational(2));
  }
  return f;
}

MetaplecticChain MetaplecticChain::from_matrix(const RationalMatrix2& S) { return {S, sl2_factorize(S)}; }

SampledFunction apply_metaplectic(const MetaplecticChain& chain, const SampledFunction& f) {
  SampledFunction out = f;
  for (const auto& s : chain.steps) out = apply_generator(s, out);
  return out;
}

double covariance_residual(const MetaplecticChain& chain, const std::pair<Rational, Rational>& lambda,
                           const SampledFunction& f) {
  const auto [u2, e2] = chain.S.apply(lambda.first, lambda.second);
  const SampledFunction lhs = apply_metaplectic(chain, tf_shift(f, {as_double(lambda.first), as_double(lambda.second)}));
  SampledFunction rhs = tf_shift(apply_metaplectic(chain, f), {as_double(u2), as_double(e2)});
  const double n = norm(f), nl = norm(lhs), nr = norm(rhs);
  // the two routes may land on different power-of-two rates; compare on the coarser one
  const int common = std::min(lhs.samples_per_unit(), rhs.samples_per_unit());
  const SampledFunction a = downsample(lhs, common), b = downsample(rhs, common);
  const double na = norm(a), nb = norm(b);
  if (n == 0) throw ValidationError("covariance needs a nonzero test function");
  const double phase_gap = na > 0 && nb > 0 ? 1.0 - std::abs(inner_product(a, b)) / (na * nb) : 1.0;
  return std::max({phase_gap, std::abs(nl - n) / n, std::abs(nr - n) / n});
}

double easy_chirp_residual(const SampledFunction& f, const Rational& beta, const Rational& gamma) {
  const SampledFunction rhs = dilate(chirp(dilate(f, gamma), beta * gamma * gamma), gamma.inverse());
  const SampledFunction lhs = downsample(chirp(f, beta), rhs.samples_per_unit());
  return distance(lhs, rhs);
}

ZakFormulaReport check_zak_formulas(const SampledFunction& g, const Rational& alpha, long long m, int n,
                                    Interval fourier_support) {
  ZakFormulaReport rep;
  const int S = g.samples_per_unit();
  if (S % n != 0) throw ValidationError("Zak grid n must divide S");

  {
    const ZakGrid Zg = zak_transform(g, n, n);
    const ZakGrid Zh = zak_transform(fourier_transform(g, n, fourier_support), n, n);
    for (int jx = 0; jx < n; ++jx)
      for (int jw = 0; jw < n; ++jw) {
        const cd rhs = unit_root(static_cast<std::int64_t>(jx) * jw, static_cast<std::int64_t>(n) * n) * Zg.at(-jw, jx);
        rep.fourier = std::max(rep.fourier, std::abs(Zh.at(jx, jw) - rhs));
      }
    rep.n_fourier = n;
  }

  {
    const auto [p, q] = small_fraction(alpha);
    const SampledFunction D = dilate(g, alpha);
    const int nL = D.samples_per_unit();
    const std::int64_t ap = std::abs(p), sg = p > 0 ? 1 : -1;
    const ZakGrid ZD = zak_transform(D, nL, nL);
    const ZakGrid Zg = zak_transform(g, S, static_cast<int>(ap * nL));
    const double c = 1.0 / std::sqrt(static_cast<double>(ap * q));
    for (int jx = 0; jx < nL; ++jx)
      for (int jw = 0; jw < nL; ++jw) {
        cd s = 0;
        for (std::int64_t l = 0; l < q; ++l)
          for (std::int64_t r = 0; r < ap; ++r)
            s += unit_root(-l * jw, nL) * Zg.at(p * (jx + l * nL), sg * (q * jw + r * nL));
        rep.dilation = std::max(rep.dilation, std::abs(ZD.at(jx, jw) - c * s));
      }
    rep.n_dilation = nL;
  }

  {
    const ZakGrid Zg = zak_transform(g, n, n);
    const ZakGrid ZC = zak_transform(chirp(g, Rational(m)), n, n);
    for (std::int64_t jx = 0; jx < n; ++jx)
      for (std::int64_t jw = 0; jw < n; ++jw) {
        const cd rhs = unit_root(m * jx * jx, static_cast<std::int64_t>(n) * n) * Zg.at(jx, jw - 2 * m * jx);
        rep.chirp = std::max(rep.chirp, std::abs(ZC.at(jx, jw) - rhs));
      }
    rep.n_chirp = n;
  }
  return rep;
}

}  // namespace gz
