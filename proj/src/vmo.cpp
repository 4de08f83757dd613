#include "gaborzak/vmo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace gz {

namespace {

struct Moments {
  cd mean;
  double osc = 0;
};

Moments moments(const std::vector<QuadPoint>& pts) {
  double wsum = 0;
  cd s = 0;
  for (const auto& p : pts) {
    wsum += p.weight;
    s += p.weight * p.value;
  }
  const cd m = s / wsum;
  double o = 0;
  for (const auto& p : pts) o += p.weight * std::abs(p.value - m);
  return {m, o / wsum};
}

double ratio(double lhs, double rhs) {
  if (rhs > 0) return lhs / rhs;
  return lhs <= 1e-14 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

cd mean(const ScalarField2D& F, const Rect& region) { return moments(F.quadrature(region)).mean; }

double mean_oscillation(const ScalarField2D& F, const Rect& region) { return moments(F.quadrature(region)).osc; }

OscSupremum osc_supremum(const ScalarField2D& F, const Rect& U, double eps, int stride) {
  const double h = F.pitch();
  if (!(eps > h * h)) throw ValidationError("eps must exceed the grid cell area");
  if (stride < 1) throw ValidationError("stride must be positive");
  const auto cx = static_cast<std::int64_t>(std::floor((U.x1 - U.x0) / h + 1e-9));
  const auto cw = static_cast<std::int64_t>(std::floor((U.w1 - U.w0) / h + 1e-9));
  OscSupremum best;
  for (std::int64_t L = 1; L <= std::min(cx, cw); ++L) {
    const double side = static_cast<double>(L) * h;
    if (side * side >= eps * (1 - 1e-12)) break;
    // corners on the half-pitch lattice, so single-cell cubes also straddle cell edges
    for (std::int64_t i = 0; i + 2 * L <= 2 * cx; i += stride)
      for (std::int64_t j = 0; j + 2 * L <= 2 * cw; j += stride) {
        const Cube Q{U.x0 + static_cast<double>(i) * h / 2, U.w0 + static_cast<double>(j) * h / 2, side};
        const double m = mean_oscillation(F, Q);
        if (!best.has_witness || m > best.value) {
          best.value = m;
          best.witness = Q;
          best.has_witness = true;
        }
      }
  }
  return best;
}

ScalarField2D mean_function(const ScalarField2D& F, double r) {
  const double cells = r / F.pitch();
  if (!(r > 0) || std::abs(cells - std::round(cells)) > 1e-9) throw ValidationError("r must be a multiple of the field pitch");
  return {[F, r](double x, double w) { return mean(F, Cube::centered(x, w, r)); }, F.pitch() / 2, 2};
}

std::string OscillationReport::verdict_name() const {
  switch (verdict) {
    case Verdict::VmoConsistent: return "vmo-consistent";
    case Verdict::VmoFailWitness: return "vmo-fail-witness";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

OscillationReport vmo_decay_profile(const ScalarField2D& F, const Rect& U, const std::vector<double>& eps_list,
                                    int stride, double floor) {
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1])) throw ValidationError("eps list must be decreasing");
  OscillationReport rep;
  rep.floor = floor;
  for (double e : eps_list) {
    const auto s = osc_supremum(F, U, e, stride);
    rep.eps.push_back(e);
    rep.S.push_back(s.value);
    rep.witnesses.push_back(s.witness);
    rep.witness_oscillation.push_back(s.value);
  }
  const std::size_t n = rep.S.size();
  if (n == 0) return rep;
  bool nonincreasing = true;
  for (std::size_t i = 1; i < n; ++i)
    if (rep.S[i] > rep.S[i - 1] * (1 + 1e-12) + 1e-15) nonincreasing = false;
  // each eps step divides the cube side by sqrt(eps ratio); a continuous field
  // loses oscillation at least in proportion, a jump keeps it
  const double shrink = n >= 2 ? std::sqrt(rep.eps[n - 1] / rep.eps[n - 2]) : 1.0;
  const bool decaying = n >= 2 && rep.S[n - 1] <= std::max(0.75, std::sqrt(shrink)) * rep.S[n - 2];
  const bool tail_high = rep.S[n - 1] >= floor && (n < 2 || rep.S[n - 2] >= floor);
  if (tail_high && !decaying)
    rep.verdict = OscillationReport::Verdict::VmoFailWitness;
  else if (nonincreasing && (rep.S[n - 1] < floor || decaying))
    rep.verdict = OscillationReport::Verdict::VmoConsistent;
  return rep;
}

void write_profile_csv(std::ostream& out, const OscillationReport& r) {
  out << "epsilon,S,witness_x,witness_omega,witness_side\n" << std::setprecision(17);
  for (std::size_t i = 0; i < r.eps.size(); ++i) {
    const Cube& q = r.witnesses[i];
    out << r.eps[i] << ',' << r.S[i] << ',' << q.x << ',' << q.w << ',' << q.side << '\n';
  }
}

cd TrigPoly2D::operator()(double x, double w) const {
  const int n = 2 * degree + 1;
  const cd ex = expi2pi(x), ew = expi2pi(w);
  std::vector<cd> px(static_cast<std::size_t>(n)), pw(static_cast<std::size_t>(n));
  px[degree] = pw[degree] = 1.0;
  for (int k = 1; k <= degree; ++k) {
    px[degree + k] = px[degree + k - 1] * ex;
    px[degree - k] = std::conj(px[degree + k]);
    pw[degree + k] = pw[degree + k - 1] * ew;
    pw[degree - k] = std::conj(pw[degree + k]);
  }
  cd s = 0;
  for (int a = 0; a < n; ++a) {
    cd row = 0;
    for (int b = 0; b < n; ++b) row += coeffs[static_cast<std::size_t>(a * n + b)] * pw[b];
    s += row * px[a];
  }
  return s;
}

double TrigPoly2D::gradient_l1(double x, double w) const {
  const int n = 2 * degree + 1;
  cd dx = 0, dw = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int k = a - degree, l = b - degree;
      const cd t = coeffs[static_cast<std::size_t>(a * n + b)] * expi2pi(k * x + l * w) * cd(0, 2 * kPi);
      dx += t * static_cast<double>(k);
      dw += t * static_cast<double>(l);
    }
  return std::abs(dx) + std::abs(dw);
}

double TrigPoly2D::sup_abs_bound() const {
  double s = 0;
  for (const auto& c : coeffs) s += std::abs(c);
  return s;
}

TrigPoly2D TrigPoly2D::random(std::mt19937_64& rng, int degree, double scale) {
  std::normal_distribution<double> nd(0.0, 1.0);
  TrigPoly2D p;
  p.degree = degree;
  const int n = 2 * degree + 1;
  p.coeffs.resize(static_cast<std::size_t>(n * n));
  for (auto& c : p.coeffs) c = scale * cd(nd(rng), nd(rng)) / static_cast<double>(n);
  return p;
}

TrigPoly2D TrigPoly2D::mode(int k, int l) {
  TrigPoly2D p;
  p.degree = std::max(std::abs(k), std::abs(l));
  const int n = 2 * p.degree + 1;
  p.coeffs.assign(static_cast<std::size_t>(n * n), 0.0);
  p.coeffs[static_cast<std::size_t>((k + p.degree) * n + (l + p.degree))] = 1.0;
  return p;
}

double product_mean_constant(const std::vector<double>& b) {
  // Coefficient vectors over the M_Q(F_i): mu bounds M_Q(F_1...F_k), err
  // bounds |(F_1...F_k)_Q - prod (F_i)_Q|.
  const std::size_t n = b.size();
  if (n == 0) return 0.0;
  std::vector<double> mu(n, 0.0), err(n, 0.0);
  mu[0] = 1.0;
  double prod = b[0];
  for (std::size_t k = 1; k < n; ++k) {
    const double m = std::max(prod, b[k]);
    std::vector<double> e2(n, 0.0), mu2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double unit = i == k ? 1.0 : 0.0;
      e2[i] = 0.5 * m * (mu[i] + unit) + b[k] * err[i];
      mu2[i] = 1.5 * m * (mu[i] + unit);
    }
    err = e2;
    mu = mu2;
    prod *= b[k];
  }
  return *std::max_element(err.begin(), err.end());
}

namespace {

struct Accumulator {
  std::vector<InequalityResult> r;
  Accumulator() {
    for (const char* n : {"FQs", "Se", "FQ_greater", "Se2", "first", "affine", "puh", "prods"}) r.push_back(InequalityResult{n, 0, 0, 0.0, ""});
  }
  void add(std::size_t i, double q) {
    r[i].cases++;
    r[i].max_ratio = std::max(r[i].max_ratio, q);
  }
  void skip(std::size_t i, const std::string& why) {
    r[i].skipped++;
    if (r[i].note.empty()) r[i].note = why;
  }
};

std::vector<Cube> random_family(std::mt19937_64& rng, const Rect& U, double eps, int count) {
  std::uniform_real_distribution<double> un(0.0, 1.0);
  const double max_side = std::min({std::sqrt(eps), U.x1 - U.x0, U.w1 - U.w0});
  std::vector<Cube> out;
  for (int i = 0; i < count; ++i) {
    const double s = max_side * (0.2 + 0.79 * un(rng));
    out.push_back({U.x0 + un(rng) * (U.x1 - U.x0 - s), U.w0 + un(rng) * (U.w1 - U.w0 - s), s});
  }
  return out;
}

double max_abs(const std::vector<QuadPoint>& pts) {
  double m = 0;
  for (const auto& p : pts) m = std::max(m, std::abs(p.value));
  return m;
}

double min_abs(const std::vector<QuadPoint>& pts) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) m = std::min(m, std::abs(p.value));
  return m;
}

/// Grid-level sup and inf of |F| over U: a 33 x 33 lattice of samples plus
/// every quadrature point used on the given cubes.
std::pair<double, double> sup_inf(const ScalarField2D& F, const Rect& U, const std::vector<Cube>& cubes) {
  double hi = 0, lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 32; ++i)
    for (int j = 0; j <= 32; ++j) {
      const double a = std::abs(F(U.x0 + (U.x1 - U.x0) * i / 32.0, U.w0 + (U.w1 - U.w0) * j / 32.0));
      hi = std::max(hi, a);
      lo = std::min(lo, a);
    }
  for (const auto& q : cubes) {
    const auto pts = F.quadrature(q.rect());
    hi = std::max(hi, max_abs(pts));
    lo = std::min(lo, min_abs(pts));
  }
  return {hi, lo};
}

double family_sup(const ScalarField2D& F, const std::vector<Cube>& cubes) {
  double s = 0;
  for (const auto& q : cubes) s = std::max(s, mean_oscillation(F, q));
  return s;
}

void evaluate_case(const ScalarField2D& F, const ScalarField2D& G, const Rect& U, double eps, int family,
                   std::mt19937_64& rng, Accumulator& acc) {
  std::uniform_real_distribution<double> un(0.0, 1.0);
  auto cubes = random_family(rng, U, eps, family);
  const auto [supF, infF] = sup_inf(F, U, cubes);
  const auto [supG, infG] = sup_inf(G, U, cubes);
  (void)infG;
  const double m = std::max(supF, supG);
  const ScalarField2D FG = F * G;

  // product estimates on a single cube and over the family
  const Cube& Q = cubes.front();
  const auto mF = moments(F.quadrature(Q.rect()));
  const auto mG = moments(G.quadrature(Q.rect()));
  const auto mFG = moments(FG.quadrature(Q.rect()));
  acc.add(0, ratio(std::abs(mF.mean * mG.mean - mFG.mean), 0.5 * m * (mF.osc + mG.osc)));
  acc.add(1, ratio(family_sup(FG, cubes), 1.5 * m * (family_sup(F, cubes) + family_sup(G, cubes))));

  // reciprocal estimates: shrink eps until S(F) <= inf|F| / 2
  if (infF > 1e-9) {
    double e = eps;
    auto fam = cubes;
    bool ok = false;
    for (int it = 0; it < 40; ++it) {
      const auto [s2, i2] = sup_inf(F, U, fam);
      (void)s2;
      const double C = std::min(infF, i2);
      if (family_sup(F, fam) <= C / 2) {
        ok = true;
        double worst = 0;
        for (const auto& q : fam) worst = std::max(worst, ratio(C / 2, std::abs(mean(F, q))));
        acc.add(2, worst);
        acc.add(3, ratio(family_sup(F.reciprocal(), fam), 4.0 / (C * C) * family_sup(F, fam)));
        break;
      }
      e /= 4;
      fam = random_family(rng, U, e, family);
    }
    if (!ok) {
      acc.skip(2, "no eps reached S(F) <= inf|F|/2");
      acc.skip(3, "no eps reached S(F) <= inf|F|/2");
    }
  } else {
    acc.skip(2, "inf|F| is zero on U at grid level");
    acc.skip(3, "inf|F| is zero on U at grid level");
  }

  // nested sets: a random sub-rectangle of Q
  {
    const double fx = 0.1 + 0.9 * un(rng), fw = 0.1 + 0.9 * un(rng);
    const double ox = un(rng) * (1 - fx), ow = un(rng) * (1 - fw);
    const Rect D1{Q.x + ox * Q.side, Q.x + (ox + fx) * Q.side, Q.w + ow * Q.side, Q.w + (ow + fw) * Q.side};
    const double lhs = mean_oscillation(F, D1);
    acc.add(4, ratio(lhs, 2.0 * Q.area() / D1.area() * mF.osc));
  }

  // affine change of variables in dimension n = 2
  {
    double a11, a12, a21, a22, det;
    do {
      a11 = 4 * un(rng) - 2;
      a12 = 4 * un(rng) - 2;
      a21 = 4 * un(rng) - 2;
      a22 = 4 * un(rng) - 2;
      det = a11 * a22 - a12 * a21;
    } while (std::abs(det) < 0.2);
    const double b1 = un(rng), b2 = un(rng);
    const double s1 = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
    const double opn = std::sqrt(0.5 * (s1 + std::sqrt(std::max(0.0, s1 * s1 - 4 * det * det))));
    const int order = std::max(F.order(), 8);
    const auto FPhi = F.composed_affine(a11, a12, a21, a22, b1, b2, F.pitch() / std::max(1.0, opn * std::sqrt(2.0)), order);
    const double cx = Q.center_x(), cw = Q.center_w();
    const Cube Qt = Cube::centered(a11 * cx + a12 * cw + b1, a21 * cx + a22 * cw + b2, std::sqrt(2.0) * opn * Q.side);
    const double constant = 2.0 * 2.0 * opn * opn / std::abs(det);
    acc.add(5, ratio(mean_oscillation(FPhi, Q), constant * mean_oscillation(F, Qt)));
  }

  // smooth multiplier
  {
    const auto phi = TrigPoly2D::random(rng, 2);
    const ScalarField2D Phi([phi](double x, double w) { return phi(x, w); }, 1.0, 8);
    const auto pts = F.quadrature(Q.rect());
    double phi_sup = 0, grad_sup = 0, l2 = 0;
    for (const auto& p : pts) {
      phi_sup = std::max(phi_sup, std::abs(phi(p.x, p.w)));
      grad_sup = std::max(grad_sup, phi.gradient_l1(p.x, p.w));
      l2 += p.weight * std::norm(p.value);
    }
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= 8; ++j) grad_sup = std::max(grad_sup, phi.gradient_l1(Q.x + Q.side * i / 8, Q.w + Q.side * j / 8));
    acc.add(6, ratio(mean_oscillation(Phi * F, Q), phi_sup * mF.osc + grad_sup * std::sqrt(l2)));
  }

  // three-factor product against the chained constant
  {
    const auto phi = TrigPoly2D::random(rng, 1);
    const ScalarField2D K([phi](double x, double w) { return phi(x, w); }, 1.0, 8);
    const auto [supK, infK] = sup_inf(K, U, cubes);
    (void)infK;
    const double C = product_mean_constant({supF, supG, supK});
    const ScalarField2D FGK = FG * K;
    const double rhs = C * (family_sup(F, cubes) + family_sup(G, cubes) + family_sup(K, cubes));
    const cd lhs = mean(FGK, Q) - mF.mean * mG.mean * mean(K, Q);
    acc.add(7, ratio(std::abs(lhs), rhs));
  }
}

}  // namespace

std::vector<InequalityResult> check_inequalities(const ScalarField2D& F, const ScalarField2D& G, const Rect& U,
                                                 double eps, const InequalityOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  Accumulator acc;
  for (int c = 0; c < opt.cases; ++c) evaluate_case(F, G, U, eps, opt.family_size, rng, acc);
  return acc.r;
}

std::vector<InequalityResult> run_inequality_suite(const InequalityOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> un(0.0, 1.0);
  Accumulator acc;
  const Rect U{0, 1, 0, 1};
  for (int c = 0; c < opt.cases; ++c) {
    const auto p = TrigPoly2D::random(rng, 1 + static_cast<int>(un(rng) * 3));
    const auto q = TrigPoly2D::random(rng, 1 + static_cast<int>(un(rng) * 3));
    // F is kept away from zero so the reciprocal estimates apply
    const cd offset = std::polar(p.sup_abs_bound() + 0.2 + un(rng), 2 * kPi * un(rng));
    const ScalarField2D F([p, offset](double x, double w) { return p(x, w) + offset; }, 1.0, 8);
    const ScalarField2D G([q](double x, double w) { return q(x, w); }, 1.0, 8);
    const double eps = std::pow(2.0, -2.0 - 6.0 * un(rng));
    evaluate_case(F, G, U, eps, opt.family_size, rng, acc);
  }
  return acc.r;
}

}  // namespace gz
