#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gaborzak/core.hpp"
#include "gaborzak/symplectic.hpp"

namespace gz {

/// D_alpha f(x) = sqrt|alpha| f(alpha x) for alpha = p/q. The output grid has
/// S/q samples per unit so every read of f stays on its grid; needs q | S and
/// S/q >= 2 a power of two.
SampledFunction dilate(const SampledFunction& f, const Rational& alpha);

/// C_beta f(x) = e^{2 pi i beta x^2} f(x), phases exact on the grid.
SampledFunction chirp(const SampledFunction& f, const Rational& beta);

/// Keeps every (S/target)-th sample; target must divide S.
SampledFunction downsample(const SampledFunction& f, int target_S);

/// Unitary attached to a generator matrix so that U pi(l) U* = pi(G l):
///   J -> Fourier transform, diag(a, 1/a) -> D_{1/a}, (1 0; b 1) -> C_{b/2}.
SampledFunction apply_generator(const GeneratorStep& step, const SampledFunction& f);

struct MetaplecticChain {
  RationalMatrix2 S;
  std::vector<GeneratorStep> steps;  ///< application order
  static MetaplecticChain from_matrix(const RationalMatrix2& S);
};

SampledFunction apply_metaplectic(const MetaplecticChain& chain, const SampledFunction& f);

/// Largest of 1 - |<a, b>| / (||a|| ||b||) and the relative norm drifts of a and b,
/// where a = U pi(l) f and b = pi(S l) U f. Zero iff a and b agree up to a
/// unimodular constant and U kept the norm.
double covariance_residual(const MetaplecticChain& chain, const std::pair<Rational, Rational>& lambda,
                           const SampledFunction& f);

/// ||C_beta f - D_{1/gamma} C_{beta gamma^2} D_gamma f|| compared on the output
/// grid of the right-hand side (C_beta f is downsampled to it).
double easy_chirp_residual(const SampledFunction& f, const Rational& beta, const Rational& gamma);

struct ZakFormulaReport {
  double fourier = 0;   ///< Z f^ (x,w) against e^{2 pi i x w} Zf(-w, x)
  double dilation = 0;  ///< Z(D_alpha g) against the double sum over Zg
  double chirp = 0;     ///< Z(C_m g) against e^{2 pi i m x^2} Zg(x, w - 2 m x)
  int n_fourier = 0, n_dilation = 0, n_chirp = 0;
};

/// n is the Zak grid for the Fourier and chirp checks (n | S). The dilation
/// check uses n_L = S/q nodes for Z(D_alpha g) and an (S, |p| n_L) grid for Zg.
ZakFormulaReport check_zak_formulas(const SampledFunction& g, const Rational& alpha, long long m, int n = 64,
                                    Interval fourier_support = {-8, 8});

}  // namespace gz
