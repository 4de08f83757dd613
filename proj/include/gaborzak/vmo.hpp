#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "gaborzak/field.hpp"

namespace gz {

/// F_Q = (1/|Q|) int_Q F.
cd mean(const ScalarField2D& F, const Rect& region);
inline cd mean(const ScalarField2D& F, const Cube& Q) { return mean(F, Q.rect()); }

/// M_Q(F) = (|F - F_Q|)_Q.
double mean_oscillation(const ScalarField2D& F, const Rect& region);
inline double mean_oscillation(const ScalarField2D& F, const Cube& Q) { return mean_oscillation(F, Q.rect()); }

struct OscSupremum {
  double value = 0.0;
  Cube witness{};
  bool has_witness = false;
};

/// Lower bound for S_{eps,U}(F): the largest M_Q over cubes Q in U with
/// |Q| < eps, side a multiple of the field pitch, corners on the half-pitch
/// lattice taken every `stride` half cells.
OscSupremum osc_supremum(const ScalarField2D& F, const Rect& U, double eps, int stride = 1);

/// F_[r](x,w): average of F over the square of side r centered at (x,w).
/// r must be a multiple of the field pitch.
ScalarField2D mean_function(const ScalarField2D& F, double r);

struct OscillationReport {
  enum class Verdict { VmoConsistent, VmoFailWitness, Inconclusive };
  std::vector<double> eps;
  std::vector<double> S;
  std::vector<Cube> witnesses;
  std::vector<double> witness_oscillation;
  double floor = 0.1;
  Verdict verdict = Verdict::Inconclusive;
  std::string verdict_name() const;
};

/// Computes S_{eps,U}(F) for a decreasing dyadic eps list and classifies the
/// tail. Fail-witness: the last two values stay at or above `floor` and the
/// last step does not decay. Consistent: nonincreasing and either below
/// `floor` or decaying. Decay means the last value dropped by at least
/// max(0.75, (eps ratio)^{1/4}), i.e. like the square root of the cube side.
OscillationReport vmo_decay_profile(const ScalarField2D& F, const Rect& U, const std::vector<double>& eps_list,
                                    int stride = 1, double floor = 0.1);

void write_profile_csv(std::ostream& out, const OscillationReport& r);

/// Real-coefficient-free trigonometric polynomial
/// sum_{|k|,|l| <= deg} c_{kl} e^{2 pi i (k x + l w)} with its gradient.
struct TrigPoly2D {
  int degree = 0;
  std::vector<cd> coeffs;  ///< (2deg+1)^2 entries, row-major in (k, l)
  cd operator()(double x, double w) const;
  /// |dF/dx| + |dF/dw|
  double gradient_l1(double x, double w) const;
  double sup_abs_bound() const;  ///< sum |c|
  static TrigPoly2D random(std::mt19937_64& rng, int degree, double scale = 1.0);
  static TrigPoly2D mode(int k, int l);
};

/// Explicit constant C with |(prod F_i)_Q - prod (F_i)_Q| <= C sum M_Q(F_i),
/// built by chaining the two-factor product estimate over the sup bounds.
double product_mean_constant(const std::vector<double>& sup_bounds);

struct InequalityResult {
  std::string name;
  int cases = 0;
  int skipped = 0;
  double max_ratio = 0.0;  ///< max lhs/rhs (0/0 counted as 0)
  std::string note;
  bool holds(double tol) const { return max_ratio <= 1.0 + tol; }
};

struct InequalityOptions {
  int cases = 1000;
  std::uint64_t seed = 1;
  int family_size = 8;  ///< random cubes per S_{eps,U} estimate
};

/// Evaluates every quantitative mean-oscillation inequality on random cube
/// families inside U with |Q| < eps. F and G are the test fields; the
/// reciprocal estimates need inf |F| > 0 on U and shrink eps by bisection
/// until S_{eps,U}(F) <= inf|F|/2.
std::vector<InequalityResult> check_inequalities(const ScalarField2D& F, const ScalarField2D& G, const Rect& U,
                                                 double eps, const InequalityOptions& opt = {});

/// Randomized suite: fresh random trigonometric polynomials per case.
std::vector<InequalityResult> run_inequality_suite(const InequalityOptions& opt);

}  // namespace gz
