#pragma once

#include <functional>
#include <iosfwd>

#include "gaborzak/core.hpp"

namespace gz {

/// Zak transform samples on the fundamental domain [0,1)^2 at nodes
/// (j/nx, m/nw). Values outside the domain follow the quasi-periodic rule
/// Z(x+k, w+n) = e^{2 pi i k w} Z(x, w); phases are computed, never stored.
class ZakGrid {
 public:
  ZakGrid() = default;
  ZakGrid(int nx, int nw, int source_S, std::vector<cd> values);

  int nx() const { return nx_; }
  int nw() const { return nw_; }
  int source_S() const { return source_S_; }
  const std::vector<cd>& values() const { return values_; }

  /// Stored node (0 <= j < nx, 0 <= m < nw).
  cd node(int j, int m) const { return values_[static_cast<std::size_t>(j) * nw_ + m]; }

  /// Quasi-periodic read at global node indices: x = jx/nx, w = jw/nw.
  cd at(std::int64_t jx, std::int64_t jw) const;

  double l2_norm() const;

 private:
  int nx_ = 0, nw_ = 0, source_S_ = 0;
  std::vector<cd> values_;
};

ZakGrid zak_transform(const SampledFunction& f, int nx, int nw);

/// Quasi-periodic extension at a real point whose reduction mod 1 lies on a
/// grid node; off-node queries throw.
cd zak_extend(const ZakGrid& Z, double x, double w);

/// Inverts the Zak transform onto the given support via the k-th discrete
/// Fourier coefficient in w. The result is sampled at nx samples per unit.
SampledFunction inverse_zak(const ZakGrid& Z, Interval support);

/// Defining sum Zf(x, w) = sum_k f(x+k) e^{-2 pi i k w} at any grid node
/// x = jx/nx, w = jw/nw (no extension rule involved).
cd zak_direct(const SampledFunction& f, int nx, int nw, std::int64_t jx, std::int64_t jw);

/// Continuous Zak evaluation of an analytic recipe with compact support.
std::function<cd(double, double)> zak_of_recipe(const Recipe& r, Interval support);

struct ZakIdentityOptions {
  int n = 64;             ///< grid used for nx = nw
  double u = 0.25;        ///< shift used in identity (b), on the x-grid
  double eta = 0.125;     ///< modulation used in identity (b), on the w-grid
  int m = 1, k = 1;       ///< integer shift (m, k) used in identities (a), (c)
  Interval fourier_support{-8, 8};
};

/// Sup-norm deviations of the four Zak identities:
/// (a) quasi-periodicity against the defining sum,
/// (b) Z pi(u,eta) f = e^{2 pi i eta x} Zf(x-u, w-eta),
/// (c) Z pi(m,n) f = e^{2 pi i (n x - m w)} Zf,
/// (d) Z f^ (x,w) = e^{2 pi i x w} Zf(-w, x).
struct ZakIdentityReport {
  double quasi_periodicity = 0, shift = 0, integer_shift = 0, fourier = 0;
};

ZakIdentityReport check_zak_identities(const SampledFunction& f, const ZakIdentityOptions& opt = {});

/// CSV with columns x,omega,re,im.
void write_zak_csv(std::ostream& out, const ZakGrid& Z);

}  // namespace gz
