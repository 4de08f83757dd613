#include "gaborzak/gabor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gz {

namespace {

/// r*n as an integer grid offset; throws when r is not on the grid.
std::int64_t grid_offset(const Rational& r, int n, const char* what) {
  const Rational t = r * Rational(n);
  if (!t.is_integer())
    throw ValidationError(std::string(what) + " = " + r.str() + " is not on the grid of " + std::to_string(n) +
                          " nodes per unit");
  return to_int64(t.num());
}

/// e^{2 pi i r j/n} computed exactly from the rational r.
cd rational_phase(const Rational& r, std::int64_t j, int n) {
  const Rational t = r * Rational(j) / Rational(n);
  const BigInt den = t.den();
  const BigInt num = t.num() % den;
  return unit_root(to_int64(num), to_int64(den));
}

cd rational_phase(const Rational& r) { return rational_phase(r, 1, 1); }

Eigen::MatrixXcd d_p(long long P, const Rational& eta, int power) {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(P, P);
  for (long long k = 0; k < P; ++k) D(k, k) = rational_phase(-eta * Rational(k) * Rational(power) / Rational(P));
  return D;
}

double sup_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

bool SeparableLattice::coprime() const { return std::gcd(P, Q) == 1; }

void SeparableLattice::validate() const {
  if (P < 1 || Q < 1) throw ValidationError("lattice parameters P, Q must be positive");
}

Eigen::MatrixXcd zz_at(const ZakGrid& Zg, const SeparableLattice& lat, std::int64_t jx, std::int64_t jw) {
  const std::int64_t sx = Zg.nx() / lat.P, sl = Zg.nx() / lat.Q;
  Eigen::MatrixXcd A(lat.P, lat.Q);
  for (long long k = 0; k < lat.P; ++k)
    for (long long l = 0; l < lat.Q; ++l) A(k, l) = Zg.at(jx - k * sx - l * sl, jw);
  return A;
}

namespace {
void check_grid(const ZakGrid& Zg, const SeparableLattice& lat) {
  lat.validate();
  if (Zg.nx() % lat.P != 0 || Zg.nx() % lat.Q != 0)
    throw ValidationError("nx = " + std::to_string(Zg.nx()) + " must be divisible by P and Q");
}
}  // namespace

MatrixField zz_matrix(const ZakGrid& Zg, const SeparableLattice& lat) {
  check_grid(Zg, lat);
  MatrixField M;
  M.rows = static_cast<int>(lat.P);
  M.cols = static_cast<int>(lat.Q);
  M.nx = Zg.nx();
  M.nw = Zg.nw();
  M.count_x = static_cast<int>(Zg.nx() / lat.P);
  M.count_w = Zg.nw();
  M.data.reserve(static_cast<std::size_t>(M.count_x) * M.count_w);
  for (int jx = 0; jx < M.count_x; ++jx)
    for (int jw = 0; jw < M.count_w; ++jw) M.data.push_back(zz_at(Zg, lat, jx, jw));
  return M;
}

Eigen::MatrixXcd shift_matrix(long long Q, std::int64_t jw, int nw) {
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(Q, Q);
  for (long long k = 0; k + 1 < Q; ++k) R(k + 1, k) = 1.0;
  R(0, Q - 1) += unit_root(-jw, nw);
  return R;
}

double shift_identity_residual(const ZakGrid& Zg, const SeparableLattice& lat) {
  check_grid(Zg, lat);
  const std::int64_t sl = Zg.nx() / lat.Q;
  double worst = 0;
  for (int jx = 0; jx < Zg.nx(); ++jx)
    for (int jw = 0; jw < Zg.nw(); ++jw) {
      const Eigen::MatrixXcd A = zz_at(Zg, lat, jx, jw);
      const Eigen::MatrixXcd R = shift_matrix(lat.Q, jw, Zg.nw());
      Eigen::MatrixXcd AR = A;
      for (long long l = 1; l < lat.Q; ++l) {
        AR = AR * R;
        worst = std::max(worst, sup_abs(zz_at(Zg, lat, jx - l * sl, jw) - AR));
      }
    }
  return worst;
}

RieszReport riesz_bounds(const ZakGrid& Zg, const SeparableLattice& lat) {
  const MatrixField A = zz_matrix(Zg, lat);
  RieszReport rep;
  rep.nx = Zg.nx();
  rep.nw = Zg.nw();
  for (const auto& v : Zg.values()) rep.zak_sup = std::max(rep.zak_sup, std::abs(v));
  if (rep.zak_sup == 0) throw NumericalError("generator is identically zero on the Zak grid");
  rep.a_est = std::numeric_limits<double>::infinity();
  const double P = static_cast<double>(lat.P);
  for (int jx = 0; jx < A.count_x; ++jx)
    for (int jw = 0; jw < A.count_w; ++jw) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A.node(jx, jw));
      const auto& s = svd.singularValues();
      const double smax = s(0) * s(0) / P;
      const double smin = lat.P >= lat.Q ? s(s.size() - 1) * s(s.size() - 1) / P : 0.0;
      rep.profile_min.push_back(smin);
      rep.profile_max.push_back(smax);
      if (smin < rep.a_est) {
        rep.a_est = smin;
        rep.argmin = {jx, jw};
      }
      if (smax > rep.b_est) {
        rep.b_est = smax;
        rep.argmax = {jx, jw};
      }
    }
  return rep;
}

RieszReport riesz_bounds(const SampledFunction& g, const SeparableLattice& lat, int nx, int nw) {
  return riesz_bounds(zak_transform(g, nx, nw), lat);
}

std::pair<double, double> gram_riesz_oracle(const SampledFunction& g, const SeparableLattice& lat, int trunc) {
  lat.validate();
  if (trunc < 0) throw ValidationError("trunc must be nonnegative");
  std::vector<SampledFunction> atoms;
  for (int m = -trunc; m <= trunc; ++m)
    for (int n = -trunc; n <= trunc; ++n) {
      const TFShift sh{static_cast<double>(m) / static_cast<double>(lat.Q), static_cast<double>(n * lat.P)};
      if (!sh.grid_exact(g.samples_per_unit())) throw ValidationError("time shifts 1/Q are not on the sample grid");
      atoms.push_back(tf_shift(g, sh));
    }
  const auto K = static_cast<Eigen::Index>(atoms.size());
  Eigen::MatrixXcd G(K, K);
  for (Eigen::Index i = 0; i < K; ++i)
    for (Eigen::Index j = i; j < K; ++j) {
      const cd v = inner_product(atoms[static_cast<std::size_t>(j)], atoms[static_cast<std::size_t>(i)]);
      G(i, j) = v;
      G(j, i) = std::conj(v);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  return {es.eigenvalues()(0), es.eigenvalues()(K - 1)};
}

std::string InvarianceReport::verdict_name() const {
  switch (verdict) {
    case Verdict::Invariant: return "invariant";
    case Verdict::NotInvariant: return "not-invariant";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct Solver {
  const ZakGrid& Zg;
  SeparableLattice lat;
  Rational eta;
  std::int64_t du, deta;
  Eigen::MatrixXcd D;

  /// (F, relative residual) at a global node.
  std::pair<Eigen::VectorXcd, double> solve(std::int64_t jx, std::int64_t jw) const {
    const Eigen::MatrixXcd A = zz_at(Zg, lat, jx, jw);
    const Eigen::MatrixXcd As = zz_at(Zg, lat, jx - du, jw - deta);
    const Eigen::VectorXcd rhs = rational_phase(eta, jx, Zg.nx()) * (D * As.col(0));
    const Eigen::MatrixXcd AhA = A.adjoint() * A;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(AhA, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(AhA.rows() - 1);
    if (!(lo > 1e-12 * std::max(hi, 1e-300)))
      throw NumericalError("A*A is singular at node (" + std::to_string(jx) + ", " + std::to_string(jw) +
                           "): the Riesz lower bound fails");
    const Eigen::VectorXcd F = AhA.inverse() * (A.adjoint() * rhs);
    const double rn = rhs.norm();
    const double res = (rhs - A * F).norm();
    return {F, rn > 0 ? res / rn : res};
  }
};

}  // namespace

InvarianceReport invariance_solve(const SampledFunction& g, const SeparableLattice& lat, const Rational& u,
                                  const Rational& eta, int nx, int nw, double tol, int max_order) {
  lat.validate();
  if (!lat.coprime()) throw ValidationError("P and Q must be coprime");
  if (lat.P < lat.Q)
    throw NumericalError("P < Q: the P x Q matrix A cannot be left invertible, so (g, Lambda) is not a Riesz sequence");
  const std::int64_t du = grid_offset(u, nx, "u");
  const std::int64_t deta = grid_offset(eta, nw, "eta");
  const ZakGrid Zg = zak_transform(g, nx, nw);
  check_grid(Zg, lat);
  const RieszReport rz = riesz_bounds(Zg, lat);
  if (!(rz.a_est > 1e-12)) throw NumericalError("Riesz lower bound is zero on the grid");

  const Solver S{Zg, lat, eta, du, deta, d_p(lat.P, eta, 1)};
  InvarianceReport rep;
  rep.tol = tol;
  rep.F.rows = static_cast<int>(lat.Q);
  rep.F.cols = 1;
  rep.F.nx = nx;
  rep.F.nw = nw;
  rep.F.count_x = nx;
  rep.F.count_w = nw;
  rep.F.data.reserve(static_cast<std::size_t>(nx) * nw);
  for (int jx = 0; jx < nx; ++jx)
    for (int jw = 0; jw < nw; ++jw) {
      auto [F, res] = S.solve(jx, jw);
      rep.max_residual = std::max(rep.max_residual, res);
      rep.F.data.push_back(F);
    }
  // F must be 1/P-periodic in x and 1-periodic in w
  const std::int64_t px = nx / lat.P;
  for (int jx = 0; jx < nx; ++jx)
    for (int jw = 0; jw < nw; ++jw) {
      const auto& F = rep.F.node(jx, jw);
      rep.periodicity_deviation = std::max(rep.periodicity_deviation, (S.solve(jx + px, jw).first - F).cwiseAbs().maxCoeff());
      rep.periodicity_deviation = std::max(rep.periodicity_deviation, (S.solve(jx, jw + nw).first - F).cwiseAbs().maxCoeff());
    }
  if (rep.max_residual < tol && rep.periodicity_deviation < tol)
    rep.verdict = InvarianceReport::Verdict::Invariant;
  else if (rep.max_residual <= 10 * tol && rep.periodicity_deviation <= 10 * tol)
    rep.verdict = InvarianceReport::Verdict::Inconclusive;
  else
    rep.verdict = InvarianceReport::Verdict::NotInvariant;
  rep.coeffs = coefficient_recovery(rep.F, lat, max_order, &rep.parseval_coeffs, &rep.parseval_field);
  return rep;
}

CoefficientMap coefficient_recovery(const MatrixField& F, const SeparableLattice& lat, int max_order,
                                    double* parseval_coeffs, double* parseval_field) {
  lat.validate();
  if (F.cols != 1 || F.rows != lat.Q) throw ValidationError("coefficient recovery needs a Q x 1 field");
  if (F.nx % lat.P != 0) throw ValidationError("nx must be divisible by P");
  const int cx = static_cast<int>(F.nx / lat.P);  // x-nodes in one period
  const int cw = F.nw;
  // canonical residues: n in [-cx/2, cx - cx/2), s in [-cw/2, cw - cw/2)
  const int n_lo = std::max(-cx / 2, -max_order), n_hi = std::min(cx - cx / 2 - 1, max_order);
  const int s_lo = std::max(-cw / 2, -max_order), s_hi = std::min(cw - cw / 2 - 1, max_order);
  CoefficientMap out;
  double pc = 0, pf = 0;
  const double norm = 1.0 / (static_cast<double>(cx) * cw);
  for (long long l = 0; l < lat.Q; ++l) {
    for (int jx = 0; jx < cx; ++jx)
      for (int jw = 0; jw < cw; ++jw) pf += std::norm(F.periodic(jx, jw)(l)) * norm;
    for (int n = n_lo; n <= n_hi; ++n)
      for (int s = s_lo; s <= s_hi; ++s) {
        // F_l = sum c e^{2 pi i (n P x - s w)}, x = jx/nx, P x = jx/cx
        cd acc = 0;
        for (int jx = 0; jx < cx; ++jx)
          for (int jw = 0; jw < cw; ++jw)
            acc += F.periodic(jx, jw)(l) * unit_root(-static_cast<std::int64_t>(n) * jx, cx) *
                   unit_root(static_cast<std::int64_t>(s) * jw, cw);
        acc *= norm;
        if (std::abs(acc) > 1e-13) {
          out[{s * lat.Q + l, n}] = acc;
          pc += std::norm(acc);
        }
      }
  }
  if (parseval_coeffs) *parseval_coeffs = pc;
  if (parseval_field) *parseval_field = pf;
  return out;
}

SampledFunction resynthesize(const CoefficientMap& c, const SeparableLattice& lat, const SampledFunction& g) {
  SampledFunction out(g.samples_per_unit(), g.support(), std::vector<cd>(g.values().size(), 0.0));
  for (const auto& [mn, v] : c) {
    const TFShift sh{static_cast<double>(mn.first) / static_cast<double>(lat.Q), static_cast<double>(mn.second * lat.P)};
    out = out + v * tf_shift(g, sh);
  }
  return out;
}

Eigen::MatrixXcd m_at(const MatrixField& F, const SeparableLattice& lat, const Rational& eta, std::int64_t jx,
                      std::int64_t jw) {
  const std::int64_t sl = F.nx / lat.Q;
  const Eigen::MatrixXcd R = shift_matrix(lat.Q, jw, F.nw);
  Eigen::MatrixXcd M(lat.Q, lat.Q);
  Eigen::MatrixXcd Rl = Eigen::MatrixXcd::Identity(lat.Q, lat.Q);
  for (long long l = 0; l < lat.Q; ++l) {
    M.col(l) = rational_phase(eta * Rational(l) / Rational(lat.Q)) * (Rl * F.periodic(jx - l * sl, jw));
    Rl = Rl * R;
  }
  return M;
}

MatrixField m_matrix(const MatrixField& F, const SeparableLattice& lat, const Rational& eta) {
  if (F.nx % lat.Q != 0) throw ValidationError("nx must be divisible by Q");
  MatrixField M;
  M.rows = M.cols = static_cast<int>(lat.Q);
  M.nx = F.nx;
  M.nw = F.nw;
  M.count_x = F.count_x;
  M.count_w = F.count_w;
  for (int jx = 0; jx < F.count_x; ++jx)
    for (int jw = 0; jw < F.count_w; ++jw) M.data.push_back(m_at(F, lat, eta, jx, jw));
  return M;
}

double fertig_residual(const ZakGrid& Zg, const SeparableLattice& lat, const Rational& u, const Rational& eta,
                       const MatrixField& F) {
  check_grid(Zg, lat);
  const std::int64_t du = grid_offset(u, Zg.nx(), "u");
  const std::int64_t deta = grid_offset(eta, Zg.nw(), "eta");
  const Eigen::MatrixXcd Dinv = d_p(lat.P, eta, -1);
  double worst = 0;
  for (int jx = 0; jx < Zg.nx(); ++jx)
    for (int jw = 0; jw < Zg.nw(); ++jw) {
      const Eigen::MatrixXcd lhs = zz_at(Zg, lat, jx - du, jw - deta);
      const Eigen::MatrixXcd rhs =
          rational_phase(-eta, jx, Zg.nx()) * (Dinv * zz_at(Zg, lat, jx, jw) * m_at(F, lat, eta, jx, jw));
      worst = std::max(worst, sup_abs(lhs - rhs));
    }
  return worst;
}

ConjugationResidual conjugation_residual(const MatrixField& F, const SeparableLattice& lat, const Rational& eta) {
  const std::int64_t sl = F.nx / lat.Q;
  const long long Q = lat.Q;
  Eigen::MatrixXcd tail = Eigen::MatrixXcd::Identity(Q, Q);
  tail(Q - 1, Q - 1) = rational_phase(eta);
  const cd corr_phase = rational_phase(-eta / Rational(Q));
  const cd lit_phase = unit_root(-1, Q);
  ConjugationResidual r;
  for (int jx = 0; jx < F.count_x; ++jx)
    for (int jw = 0; jw < F.count_w; ++jw) {
      const Eigen::MatrixXcd R = shift_matrix(Q, jw, F.nw);
      const Eigen::MatrixXcd Rinv = R.inverse();
      const Eigen::MatrixXcd M = m_at(F, lat, eta, jx, jw);
      const Eigen::MatrixXcd lhs = m_at(F, lat, eta, jx - sl, jw);
      r.corrected = std::max(r.corrected, sup_abs(lhs - corr_phase * Rinv * M * R * tail));
      r.literal = std::max(r.literal, sup_abs(lhs - lit_phase * Rinv * M * R));
    }
  return r;
}

double telescoping_residual(const ZakGrid& Zg, const SeparableLattice& lat, const Rational& u, const Rational& eta,
                            const MatrixField& F, int N) {
  check_grid(Zg, lat);
  if (N < 1) throw ValidationError("N must be positive");
  const std::int64_t du = grid_offset(u, Zg.nx(), "u");
  const std::int64_t deta = grid_offset(eta, Zg.nw(), "eta");
  const Eigen::MatrixXcd DN = d_p(lat.P, eta, -N);
  const Rational tri = Rational(N) * Rational(N + 1) / Rational(2);
  const cd const_phase = rational_phase(-eta * tri * u);
  double worst = 0;
  for (int jx = 0; jx < Zg.nx(); ++jx)
    for (int jw = 0; jw < Zg.nw(); ++jw) {
      Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(lat.Q, lat.Q);
      for (int n = 1; n <= N; ++n) prod = m_at(F, lat, eta, jx + n * du, jw + n * deta) * prod;
      const cd phase = rational_phase(-eta * Rational(N), jx, Zg.nx()) * const_phase;
      const Eigen::MatrixXcd rhs = phase * (DN * zz_at(Zg, lat, jx + N * du, jw + N * deta) * prod);
      worst = std::max(worst, sup_abs(zz_at(Zg, lat, jx, jw) - rhs));
    }
  return worst;
}

double product_relation_residual(const NodeField& H, int nx, int nw, const Rational& u, const Rational& eta, int N,
                                 long long M1, long long M2) {
  if (N < 1) throw ValidationError("N must be positive");
  if (!(u * Rational(N)).is_integer() || !(eta * Rational(N)).is_integer())
    throw ValidationError("N u and N eta must be integers");
  const std::int64_t du = grid_offset(u, nx, "u");
  const std::int64_t deta = grid_offset(eta, nw, "eta");
  double worst = 0;
  for (int jx = 0; jx < nx; ++jx)
    for (int jw = 0; jw < nw; ++jw) {
      cd p = 1.0;
      for (int n = 0; n < N; ++n) p *= H(jx + n * du, jw + n * deta);
      const cd target = unit_root(M1 * jx, nx) * unit_root(M2 * jw, nw);
      worst = std::max(worst, std::abs(p - target));
    }
  return worst;
}

double matrix_product_residual(const MatrixField& F, const SeparableLattice& lat, const Rational& u,
                               const Rational& eta, int N, long long M1, long long M2) {
  if (N < 1) throw ValidationError("N must be positive");
  const std::int64_t du = grid_offset(u, F.nx, "u");
  const std::int64_t deta = grid_offset(eta, F.nw, "eta");
  const cd c = rational_phase(eta * Rational(N) * Rational(N + 1) * u / Rational(2));
  double worst = 0;
  for (int jx = 0; jx < F.nx; ++jx)
    for (int jw = 0; jw < F.nw; ++jw) {
      Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(lat.Q, lat.Q);
      for (int n = 1; n <= N; ++n) prod = m_at(F, lat, eta, jx + n * du, jw + n * deta) * prod;
      const cd target = c * unit_root(M1 * jx, F.nx) * unit_root(M2 * jw, F.nw);
      worst = std::max(worst, sup_abs(prod - target * Eigen::MatrixXcd::Identity(lat.Q, lat.Q)));
    }
  return worst;
}

bool divisibility_check(long long P1, long long P2, long long N, long long M1, long long M2) {
  if (P1 < 1 || P2 < 1 || N < 1) throw ValidationError("P1, P2 and N must be positive");
  return M1 % (N * P1) == 0 && M2 % (N * P2) == 0;
}

}  // namespace gz
