#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gaborzak/core.hpp"
#include "gaborzak/rational.hpp"
#include "gaborzak/zak.hpp"

namespace gz {

/// Lattice (1/Q)Z x PZ.
struct SeparableLattice {
  long long P = 1, Q = 1;
  bool coprime() const;
  void validate() const;  ///< positive entries
};

/// Matrix-valued function sampled at global grid nodes (jx/nx, jw/nw) for
/// 0 <= jx < count_x, 0 <= jw < count_w. Reads with `periodic` wrap the
/// indices modulo the stored counts.
struct MatrixField {
  int rows = 0, cols = 0;
  int nx = 0, nw = 0;
  int count_x = 0, count_w = 0;
  std::vector<Eigen::MatrixXcd> data;

  const Eigen::MatrixXcd& node(int jx, int jw) const { return data[static_cast<std::size_t>(jx) * count_w + jw]; }
  const Eigen::MatrixXcd& periodic(std::int64_t jx, std::int64_t jw) const {
    return node(static_cast<int>(floor_mod(jx, count_x)), static_cast<int>(floor_mod(jw, count_w)));
  }
};

/// A(x,w) = (Zg(x - k/P - l/Q, w)) at the global node (jx, jw).
Eigen::MatrixXcd zz_at(const ZakGrid& Zg, const SeparableLattice& lat, std::int64_t jx, std::int64_t jw);

/// A on the nodes of R_P = [0,1/P) x [0,1). Needs P | nx and Q | nx.
MatrixField zz_matrix(const ZakGrid& Zg, const SeparableLattice& lat);

/// R(w): ones on the subdiagonal, e^{-2 pi i w} in the top-right corner.
Eigen::MatrixXcd shift_matrix(long long Q, std::int64_t jw, int nw);

/// max |A(x - l/Q, w) - A(x,w) R(w)^l| over nodes and l < Q.
double shift_identity_residual(const ZakGrid& Zg, const SeparableLattice& lat);

struct RieszReport {
  double a_est = 0, b_est = 0;
  std::pair<int, int> argmin{0, 0}, argmax{0, 0};  ///< node indices (jx, jw)
  std::vector<double> profile_min, profile_max;     ///< sigma^2/P per node of R_P
  double zak_sup = 0;                               ///< max |Zg| on the grid
  int nx = 0, nw = 0;
};

RieszReport riesz_bounds(const ZakGrid& Zg, const SeparableLattice& lat);
RieszReport riesz_bounds(const SampledFunction& g, const SeparableLattice& lat, int nx, int nw);

/// Extreme eigenvalues of the Gram matrix of pi(m/Q, nP) g, |m|,|n| <= trunc.
std::pair<double, double> gram_riesz_oracle(const SampledFunction& g, const SeparableLattice& lat, int trunc);

using CoefficientMap = std::map<std::pair<long long, long long>, cd>;

struct InvarianceReport {
  enum class Verdict { Invariant, NotInvariant, Inconclusive };
  double max_residual = 0;
  double periodicity_deviation = 0;
  MatrixField F;  ///< Q x 1 on all nodes of [0,1)^2
  CoefficientMap coeffs;
  double parseval_coeffs = 0, parseval_field = 0;
  Verdict verdict = Verdict::Inconclusive;
  double tol = 1e-6;
  std::string verdict_name() const;
};

/// Least-squares solve of A(x,w) F(x,w) = e^{2 pi i eta x} D_P A(x-u, w-eta) e_0
/// at every node of [0,1)^2. Throws NumericalError when A*A is singular.
InvarianceReport invariance_solve(const SampledFunction& g, const SeparableLattice& lat, const Rational& u,
                                  const Rational& eta, int nx, int nw, double tol = 1e-6, int max_order = 16);

/// c_{sQ+l, n} from the 2-D Fourier coefficients of F_l over [0,1/P) x [0,1),
/// with |s|, |n| <= max_order inside the canonical residue ranges of the grid.
/// Returns the Parseval pair (sum |c|^2, sum_l mean |F_l|^2) through the out-parameters.
CoefficientMap coefficient_recovery(const MatrixField& F, const SeparableLattice& lat, int max_order,
                                    double* parseval_coeffs = nullptr, double* parseval_field = nullptr);

/// sum c_{m,n} pi(m/Q, nP) g
SampledFunction resynthesize(const CoefficientMap& c, const SeparableLattice& lat, const SampledFunction& g);

/// M(x,w) with columns e^{2 pi i eta l/Q} R(w)^l F(x - l/Q, w).
Eigen::MatrixXcd m_at(const MatrixField& F, const SeparableLattice& lat, const Rational& eta, std::int64_t jx,
                      std::int64_t jw);
MatrixField m_matrix(const MatrixField& F, const SeparableLattice& lat, const Rational& eta);

/// max |A(x-u, w-eta) - e^{-2 pi i eta x} D_P^{-1} A(x,w) M(x,w)| over [0,1)^2.
double fertig_residual(const ZakGrid& Zg, const SeparableLattice& lat, const Rational& u, const Rational& eta,
                       const MatrixField& F);

struct ConjugationResidual {
  double corrected = 0;  ///< M(x-1/Q) = e^{-2 pi i eta/Q} R^{-1} M R diag(1,..,1,e^{2 pi i eta})
  double literal = 0;    ///< M(x-1/Q) = e^{-2 pi i/Q} R^{-1} M R
};
ConjugationResidual conjugation_residual(const MatrixField& F, const SeparableLattice& lat, const Rational& eta);

/// Checks A(x,w) = e^{-2 pi i eta (N x + N(N+1)u/2)} D_P^{-N} A(x+Nu, w+N eta) M(x+Nu,..)...M(x+u,..).
double telescoping_residual(const ZakGrid& Zg, const SeparableLattice& lat, const Rational& u, const Rational& eta,
                            const MatrixField& F, int N);

/// Scalar field read at global grid nodes.
using NodeField = std::function<cd(std::int64_t, std::int64_t)>;

/// sup over [0,1)^2 nodes of |prod_{n<N} H(x+nu, w+n eta) - e^{2 pi i (M1 x + M2 w)}|.
double product_relation_residual(const NodeField& H, int nx, int nw, const Rational& u, const Rational& eta, int N,
                                 long long M1, long long M2);

/// sup |M(x+Nu)...M(x+u) - e^{2 pi i (M1 x + M2 w)} c I_Q| with c the constant phase e^{pi i eta N(N+1) u}.
double matrix_product_residual(const MatrixField& F, const SeparableLattice& lat, const Rational& u,
                               const Rational& eta, int N, long long M1, long long M2);

/// N P1 | M1 and N P2 | M2.
bool divisibility_check(long long P1, long long P2, long long N, long long M1, long long M2);

}  // namespace gz
