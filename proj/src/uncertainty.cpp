#include "gaborzak/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace gz {

namespace {

/// Least-squares fit y = a + b t; returns (b, sum of squared residuals).
std::pair<double, double> line_fit(const std::vector<double>& t, const std::vector<double>& y) {
  const auto n = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  const double den = n * stt - st * st;
  const double b = den != 0 ? (n * sty - st * sy) / den : 0.0;
  const double a = (sy - b * st) / n;
  double sse = 0;
  for (std::size_t i = 0; i < t.size(); ++i) sse += (y[i] - a - b * t[i]) * (y[i] - a - b * t[i]);
  return {b, sse};
}

}  // namespace

DivergenceSweep classify_sweep(std::vector<double> radii, std::vector<double> partial, double rel_threshold) {
  DivergenceSweep s;
  s.radii = std::move(radii);
  s.partial = std::move(partial);
  s.growth = "none";
  const std::size_t n = s.partial.size();
  if (n == 0) return s;
  s.value = s.partial.back();
  if (n == 1) return s;
  const double d1 = s.partial[n - 1] - s.partial[n - 2];
  if (std::abs(d1) <= rel_threshold * std::abs(s.value) || s.value == 0.0) return s;
  if (n >= 3) {
    const double d0 = s.partial[n - 2] - s.partial[n - 3];
    bool geometric = d0 > 0 && d1 / d0 <= 0.7;
    if (geometric && n >= 4) {
      const double dm = s.partial[n - 3] - s.partial[n - 4];
      geometric = dm > 0 && d0 / dm <= 0.7;
    }
    if (geometric) return s;
  }
  s.convergent = false;
  std::vector<double> logs;
  for (double r : s.radii) logs.push_back(std::log(r));
  const auto [b_lin, e_lin] = line_fit(s.radii, s.partial);
  const auto [b_log, e_log] = line_fit(logs, s.partial);
  if (e_lin <= e_log) {
    s.growth = "linear";
    s.rate = b_lin;
  } else {
    s.growth = "log";
    s.rate = b_log;
  }
  return s;
}

DivergenceSweep weighted_moment(const SampledFunction& g, const MomentSpec& spec, const std::vector<double>& radii) {
  if (!(spec.exponent >= 0) || !std::isfinite(spec.exponent)) throw ValidationError("moment exponent must be finite and >= 0");
  std::vector<double> partial;
  const double S = g.samples_per_unit();
  for (double R : radii) {
    double acc = 0;
    for (std::int64_t j = g.first_index(); j < g.end_index(); ++j) {
      const double d = std::abs(g.x_of(j) - spec.center);
      if (d <= R) acc += std::pow(d, spec.exponent) * std::norm(g.at(j));
    }
    partial.push_back(acc / S);
  }
  return classify_sweep(radii, std::move(partial));
}

UncertaintyProduct uncertainty_product(const SampledFunction& g, const SampledFunction& ghat, double p, double q,
                                       double alpha, double beta, const std::vector<double>& radii, bool dual) {
  if (dual && (!(p > 1) || !(q > 1) || std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12))
    throw ValidationError("Hoelder-dual mode needs 1/p + 1/q = 1 with p, q > 1");
  UncertaintyProduct out;
  out.time = weighted_moment(g, {q, alpha}, radii);
  out.frequency = weighted_moment(ghat, {p, beta}, radii);
  out.convergent = out.time.convergent && out.frequency.convergent;
  if (out.convergent) out.value = out.time.value * out.frequency.value;
  return out;
}

UncertaintyProduct uncertainty_product(const SampledFunction& g, double p, double q, double alpha, double beta,
                                       const std::vector<double>& radii, bool dual, int freq_S) {
  if (radii.empty()) throw ValidationError("radii must be nonempty");
  const auto R = static_cast<std::int64_t>(std::ceil(*std::max_element(radii.begin(), radii.end()) + std::abs(beta)));
  const SampledFunction ghat = fourier_transform(g, freq_S, {-R, R});
  return uncertainty_product(g, ghat, p, q, alpha, beta, radii, dual);
}

double gagliardo_partial(const SampledFunction& g, double s, double R) {
  if (!(s > 0 && s < 1)) throw ValidationError("Gagliardo exponent s must lie in (0,1)");
  const int S = g.samples_per_unit();
  const auto lo = static_cast<std::int64_t>(std::ceil(-R * S - 1e-9));
  const auto hi = static_cast<std::int64_t>(std::floor(R * S + 1e-9));
  const std::int64_t n = hi - lo + 1;
  if (n < 2) return 0.0;
  std::vector<cd> v(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = g.at(lo + j);
  double acc = 0;
  for (std::int64_t d = 1; d < n; ++d) {
    const double kern = std::pow(static_cast<double>(d) / S, -(1.0 + 2.0 * s));
    double row = 0;
    for (std::int64_t i = 0; i + d < n; ++i) row += std::norm(v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i + d)]);
    acc += 2.0 * kern * row;
  }
  return acc / (static_cast<double>(S) * S);
}

DivergenceSweep gagliardo_seminorm(const SampledFunction& g, double s, const std::vector<double>& radii) {
  std::vector<double> partial;
  for (double R : radii) partial.push_back(gagliardo_partial(g, s, R));
  return classify_sweep(radii, std::move(partial));
}

GagliardoReport gagliardo_seminorm(const Recipe& r, Interval support, double s, const std::vector<double>& radii,
                                   int base_S, int levels) {
  if (radii.empty() || levels < 1) throw ValidationError("need radii and at least one refinement level");
  GagliardoReport rep;
  rep.radius_sweep = gagliardo_seminorm(sample_function(r, support, base_S), s, radii);
  const double R = *std::max_element(radii.begin(), radii.end());
  std::vector<double> rates, partial;
  for (int k = 0; k < levels; ++k) {
    const int S = base_S << k;
    rates.push_back(S);
    partial.push_back(gagliardo_partial(sample_function(r, support, S), s, R));
  }
  rep.band_sweep = classify_sweep(std::move(rates), std::move(partial), 1e-6);
  rep.convergent = rep.radius_sweep.convergent && rep.band_sweep.convergent;
  return rep;
}

DivergenceSweep feichtinger_norm_estimate(const SampledFunction& g, const StftGrid& grid,
                                          const std::vector<double>& radii) {
  if (radii.empty()) throw ValidationError("radii must be nonempty");
  if (!(grid.t_step > 0 && grid.nu_step > 0)) throw ValidationError("STFT steps must be positive");
  const double Rmax = *std::max_element(radii.begin(), radii.end());
  const auto kt = static_cast<std::int64_t>(std::floor(Rmax / grid.t_step + 1e-9));
  const auto kn = static_cast<std::int64_t>(std::floor(Rmax / grid.nu_step + 1e-9));
  const int S = g.samples_per_unit();
  // past S/2 the sampled spectrum repeats instead of decaying
  if (Rmax > S / 2.0) throw ValidationError("Feichtinger radii must stay within S/2 = " + std::to_string(S / 2));
  const double cutoff = 7.0;  // e^{-49} below double resolution of the window
  // |V| on the full grid, row-major in (t, nu)
  std::vector<double> absV(static_cast<std::size_t>((2 * kt + 1) * (2 * kn + 1)), 0.0);
  for (std::int64_t a = -kt; a <= kt; ++a) {
    const double t = static_cast<double>(a) * grid.t_step;
    const auto j0 = std::max(g.first_index(), static_cast<std::int64_t>(std::floor((t - cutoff) * S)));
    const auto j1 = std::min(g.end_index(), static_cast<std::int64_t>(std::ceil((t + cutoff) * S)));
    std::vector<cd> acc(static_cast<std::size_t>(2 * kn + 1), 0.0);
    for (std::int64_t j = j0; j < j1; ++j) {
      const double x = g.x_of(j);
      const cd w = g.at(j) * std::exp(-(x - t) * (x - t));
      if (w == 0.0) continue;
      const cd step = expi2pi(x * grid.nu_step);
      cd ph = expi2pi(-x * static_cast<double>(kn) * grid.nu_step);
      for (std::int64_t b = 0; b <= 2 * kn; ++b) {
        acc[static_cast<std::size_t>(b)] += w * ph;
        ph *= step;
      }
    }
    for (std::int64_t b = 0; b <= 2 * kn; ++b)
      absV[static_cast<std::size_t>((a + kt) * (2 * kn + 1) + b)] = std::abs(acc[static_cast<std::size_t>(b)]) / S;
  }
  std::vector<double> partial;
  for (double R : radii) {
    double sum = 0;
    for (std::int64_t a = -kt; a <= kt; ++a) {
      if (std::abs(static_cast<double>(a) * grid.t_step) > R + 1e-12) continue;
      for (std::int64_t b = -kn; b <= kn; ++b) {
        if (std::abs(static_cast<double>(b) * grid.nu_step) > R + 1e-12) continue;
        sum += absV[static_cast<std::size_t>((a + kt) * (2 * kn + 1) + (b + kn))];
      }
    }
    partial.push_back(sum * grid.t_step * grid.nu_step);
  }
  return classify_sweep(radii, std::move(partial));
}

void write_sweep_csv(std::ostream& out, const DivergenceSweep& s) {
  out << "radius,partial_value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < s.radii.size(); ++i) out << s.radii[i] << ',' << s.partial[i] << '\n';
}

}  // namespace gz
