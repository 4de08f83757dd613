#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gaborzak/core.hpp"

namespace gz {

/// Weight |x - center|^exponent.
struct MomentSpec {
  double exponent = 2.0;
  double center = 0.0;
};

/// Partial values of a nonnegative integral over growing truncations. The
/// "radius" is whatever parameter grows: a truncation radius, or the sample
/// rate in a band-refinement sweep. Radii are expected to grow geometrically.
struct DivergenceSweep {
  std::vector<double> radii;
  std::vector<double> partial;
  bool convergent = true;
  double value = 0;          ///< last partial value
  std::string growth;        ///< "none", "linear" or "log"
  double rate = 0;           ///< slope of the chosen growth model
  std::string verdict_name() const { return convergent ? "convergent" : "divergent"; }
};

/// Classifies a sweep: convergent when the last relative increment is below
/// `rel_threshold`, or when the last increments shrink geometrically (ratio
/// <= 0.7); otherwise divergent, with the better of a linear-in-r and a
/// linear-in-log-r least-squares fit reported as the growth shape.
DivergenceSweep classify_sweep(std::vector<double> radii, std::vector<double> partial, double rel_threshold = 1e-8);

/// int_{|x - center| <= R} |x - center|^q |g(x)|^2 dx for each R.
DivergenceSweep weighted_moment(const SampledFunction& g, const MomentSpec& spec, const std::vector<double>& radii);

struct UncertaintyProduct {
  DivergenceSweep time, frequency;
  bool convergent = false;
  double value = 0;  ///< product of both sides when convergent
};

/// Time side weighted by |x - alpha|^q, frequency side by |w - beta|^p on the
/// Fourier transform sampled at `freq_S` per unit over [-max radius, max radius).
/// With `dual` set, 1/p + 1/q = 1 is enforced.
UncertaintyProduct uncertainty_product(const SampledFunction& g, double p, double q, double alpha, double beta,
                                       const std::vector<double>& radii, bool dual = true, int freq_S = 32);

/// Same, with the Fourier side given directly.
UncertaintyProduct uncertainty_product(const SampledFunction& g, const SampledFunction& ghat, double p, double q,
                                       double alpha, double beta, const std::vector<double>& radii, bool dual = true);

struct GagliardoReport {
  DivergenceSweep radius_sweep;  ///< [-R,R]^2 at the base sample rate
  DivergenceSweep band_sweep;    ///< largest R, sample rate doubling (radii hold S)
  bool convergent = false;
};

/// Double sum (1/S^2) sum |g_i - g_j|^2 / |x_i - x_j|^{1+2s} over |x|,|y| <= R
/// with the diagonal cell excluded.
double gagliardo_partial(const SampledFunction& g, double s, double R);

GagliardoReport gagliardo_seminorm(const Recipe& r, Interval support, double s, const std::vector<double>& radii,
                                   int base_S = 32, int levels = 4);

/// Radius sweep only, for data without an analytic recipe.
DivergenceSweep gagliardo_seminorm(const SampledFunction& g, double s, const std::vector<double>& radii);

struct StftGrid {
  double t_step = 0.25;
  double nu_step = 0.25;
};

/// |V(t, nu)| integrated over [-R,R]^2, V(t,nu) = int g(x) e^{-(x-t)^2} e^{2 pi i x nu} dx.
/// Radii above S/2 are rejected: the sampled spectrum is S-periodic.
DivergenceSweep feichtinger_norm_estimate(const SampledFunction& g, const StftGrid& grid,
                                          const std::vector<double>& radii);

void write_sweep_csv(std::ostream& out, const DivergenceSweep& s);

}  // namespace gz
