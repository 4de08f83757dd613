#include "gaborzak/zak.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace gz {

ZakGrid::ZakGrid(int nx, int nw, int source_S, std::vector<cd> values)
    : nx_(nx), nw_(nw), source_S_(source_S), values_(std::move(values)) {
  if (nx_ < 1 || nw_ < 1) throw ValidationError("Zak grid sizes must be positive");
  if (source_S_ % nx_ != 0) throw ValidationError("nx must divide the source samples_per_unit");
  if (values_.size() != static_cast<std::size_t>(nx_) * nw_) throw ValidationError("Zak value count mismatch");
}

cd ZakGrid::at(std::int64_t jx, std::int64_t jw) const {
  const std::int64_t k = floor_div(jx, nx_);
  const auto j = static_cast<int>(jx - k * nx_);
  const auto m = static_cast<int>(floor_mod(jw, nw_));
  const cd base = node(j, m);
  if (k == 0) return base;
  return unit_root(k * m, nw_) * base;
}

double ZakGrid::l2_norm() const {
  double acc = 0.0;
  for (const cd& v : values_) acc += std::norm(v);
  return std::sqrt(acc / (static_cast<double>(nx_) * nw_));
}

ZakGrid zak_transform(const SampledFunction& f, int nx, int nw) {
  const int S = f.samples_per_unit();
  if (nx < 1 || S % nx != 0) throw ValidationError("nx must divide samples_per_unit (" + std::to_string(S) + ")");
  if (nw < f.support().length())
    throw ValidationError("nw must be at least the number of support cells (" +
                          std::to_string(f.support().length()) + ")");
  const int step = S / nx;
  std::vector<cd> twiddle(static_cast<std::size_t>(nw));
  for (int m = 0; m < nw; ++m) twiddle[static_cast<std::size_t>(m)] = unit_root(-m, nw);

  std::vector<cd> values(static_cast<std::size_t>(nx) * nw);
  for (int j = 0; j < nx; ++j) {
    for (std::int64_t k = f.support().lo; k < f.support().hi; ++k) {
      const cd v = f.at(k * S + static_cast<std::int64_t>(j) * step);
      if (v == cd{}) continue;
      const std::int64_t kk = floor_mod(k, nw);
      for (int m = 0; m < nw; ++m)
        values[static_cast<std::size_t>(j) * nw + m] += v * twiddle[static_cast<std::size_t>((kk * m) % nw)];
    }
  }
  return {nx, nw, S, std::move(values)};
}

namespace {
std::int64_t node_index(double t, int n, const char* what) {
  const double idx = t * n;
  const double r = std::round(idx);
  if (std::abs(idx - r) > 1e-9) throw ValidationError(std::string(what) + " is not on a Zak grid node");
  return static_cast<std::int64_t>(r);
}
}  // namespace

cd zak_extend(const ZakGrid& Z, double x, double w) {
  return Z.at(node_index(x, Z.nx(), "x"), node_index(w, Z.nw(), "omega"));
}

SampledFunction inverse_zak(const ZakGrid& Z, Interval support) {
  if (support.length() > Z.nw())
    throw ValidationError("nw is smaller than the requested support: inversion would alias");
  const int nx = Z.nx();
  const int nw = Z.nw();
  std::vector<cd> out(static_cast<std::size_t>(support.length() * nx));
  for (std::int64_t k = support.lo; k < support.hi; ++k) {
    const std::int64_t kk = floor_mod(k, nw);
    for (int j = 0; j < nx; ++j) {
      cd acc{0.0, 0.0};
      for (int m = 0; m < nw; ++m) acc += Z.node(j, m) * unit_root(kk * m, nw);
      out[static_cast<std::size_t>((k - support.lo) * nx + j)] = acc / static_cast<double>(nw);
    }
  }
  return {nx, support, std::move(out)};
}

cd zak_direct(const SampledFunction& f, int nx, int nw, std::int64_t jx, std::int64_t jw) {
  const int S = f.samples_per_unit();
  if (S % nx != 0) throw ValidationError("nx must divide samples_per_unit");
  const std::int64_t base = jx * (S / nx);
  // f(x+k) nonzero only when base + k*S lies in [first, end).
  const std::int64_t k_lo = -floor_div(base - f.first_index(), S) - 1;
  const std::int64_t k_hi = floor_div(f.end_index() - base, S) + 1;
  cd acc{0.0, 0.0};
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const cd v = f.at(base + k * S);
    if (v == cd{}) continue;
    acc += v * unit_root(-k * floor_mod(jw, nw), nw);
  }
  return acc;
}

std::function<cd(double, double)> zak_of_recipe(const Recipe& r, Interval support) {
  if (std::holds_alternative<recipe::Table>(r)) throw ValidationError("table recipes have no closed form");
  // e^{-t^2} < 1e-19 beyond |t| = 6.6, far below double resolution of the sum
  const bool gaussian = std::holds_alternative<recipe::Gaussian>(r);
  return [r, support, gaussian](double x, double w) {
    const auto fx = static_cast<std::int64_t>(std::floor(x));
    std::int64_t k0 = support.lo - fx - 1, k1 = support.hi - fx;
    if (gaussian) {
      k0 = std::max(k0, static_cast<std::int64_t>(std::floor(-x - 6.6)));
      k1 = std::min(k1, static_cast<std::int64_t>(std::ceil(-x + 6.6)));
    }
    const cd step = expi2pi(-w);
    cd ph = expi2pi(-static_cast<double>(k0) * w);
    cd acc{0.0, 0.0};
    for (std::int64_t k = k0; k <= k1; ++k, ph *= step) {
      const cd v = evaluate_recipe(r, x + static_cast<double>(k));
      if (v != cd{}) acc += v * ph;
    }
    return acc;
  };
}

namespace {
std::int64_t grid_multiple(double t, int n, const char* what) {
  const double idx = t * n;
  if (std::abs(idx - std::round(idx)) > 1e-9)
    throw ValidationError(std::string(what) + " must be a multiple of 1/" + std::to_string(n));
  return static_cast<std::int64_t>(std::llround(idx));
}
}  // namespace

ZakIdentityReport check_zak_identities(const SampledFunction& f, const ZakIdentityOptions& opt) {
  const int n = opt.n;
  const ZakGrid Z = zak_transform(f, n, n);
  ZakIdentityReport rep;

  for (int jx = 0; jx < n; ++jx) {
    for (int jw = 0; jw < n; ++jw) {
      const std::int64_t gx = jx + static_cast<std::int64_t>(opt.m) * n;
      const std::int64_t gw = jw + static_cast<std::int64_t>(opt.k) * n;
      rep.quasi_periodicity = std::max(rep.quasi_periodicity, std::abs(zak_direct(f, n, n, gx, gw) - Z.at(gx, gw)));
    }
  }

  {
    const std::int64_t su = grid_multiple(opt.u, n, "u");
    const std::int64_t se = grid_multiple(opt.eta, n, "eta");
    const ZakGrid Zs = zak_transform(tf_shift(f, {opt.u, opt.eta}), n, n);
    for (int jx = 0; jx < n; ++jx)
      for (int jw = 0; jw < n; ++jw) {
        const cd rhs = expi2pi(opt.eta * jx / n) * Z.at(jx - su, jw - se);
        rep.shift = std::max(rep.shift, std::abs(Zs.node(jx, jw) - rhs));
      }
  }

  {
    const ZakGrid Zs = zak_transform(tf_shift(f, {static_cast<double>(opt.m), static_cast<double>(opt.k)}), n, n);
    for (int jx = 0; jx < n; ++jx)
      for (int jw = 0; jw < n; ++jw) {
        const cd rhs = unit_root(static_cast<std::int64_t>(opt.k) * jx - static_cast<std::int64_t>(opt.m) * jw, n) *
                       Z.node(jx, jw);
        rep.integer_shift = std::max(rep.integer_shift, std::abs(Zs.node(jx, jw) - rhs));
      }
  }

  {
    const ZakGrid Zh = zak_transform(fourier_transform(f, n, opt.fourier_support), n, n);
    for (int jx = 0; jx < n; ++jx)
      for (int jw = 0; jw < n; ++jw) {
        const cd rhs = unit_root(static_cast<std::int64_t>(jx) * jw, static_cast<std::int64_t>(n) * n) * Z.at(-jw, jx);
        rep.fourier = std::max(rep.fourier, std::abs(Zh.node(jx, jw) - rhs));
      }
  }
  return rep;
}

void write_zak_csv(std::ostream& out, const ZakGrid& Z) {
  out << "x,omega,re,im\n";
  out.precision(17);
  for (int j = 0; j < Z.nx(); ++j)
    for (int m = 0; m < Z.nw(); ++m) {
      const cd v = Z.node(j, m);
      out << static_cast<double>(j) / Z.nx() << ',' << static_cast<double>(m) / Z.nw() << ',' << v.real() << ','
          << v.imag() << '\n';
    }
}

}  // namespace gz
