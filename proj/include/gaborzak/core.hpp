#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gz {

using cd = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;

/// Raised when inputs violate a documented precondition (grid alignment,
/// sizes, unknown names). The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot proceed numerically (singular Gram
/// blocks, degenerate generators). The CLI maps it to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// e^{2 pi i t}
inline cd expi2pi(double t) {
  const double a = 2.0 * kPi * t;
  return {std::cos(a), std::sin(a)};
}

/// e^{2 pi i num/den} with the argument reduced modulo den in integers first,
/// so large products of grid indices do not lose phase accuracy.
cd unit_root(std::int64_t num, std::int64_t den);

/// Normalized cardinal sine, sinc(0) = 1.
double sinc(double t);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t b);
bool is_power_of_two(std::int64_t n);

/// Half-open range of integer cells [lo, hi).
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

namespace recipe {
struct Gaussian {};                  ///< e^{-x^2}
struct Box { double a = 0, b = 1; }; ///< 1_{[a,b)}
struct BoxSine {};                   ///< 1_{[0,1)}(x) sin(pi x)
struct Table { std::vector<cd> values; };
}  // namespace recipe

using Recipe = std::variant<recipe::Gaussian, recipe::Box, recipe::BoxSine, recipe::Table>;

/// Parses "gaussian", "box", "box(a,b)", "box_sine".
Recipe parse_recipe(const std::string& name);
std::string recipe_name(const Recipe& r);

/// Evaluate an analytic recipe at x (tables are rejected).
cd evaluate_recipe(const Recipe& r, double x);

/// Complex samples of a function on the grid x_j = j/S, restricted to an
/// integer-aligned support. Reads outside the support return exactly zero.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(int samples_per_unit, Interval support, std::vector<cd> values);

  int samples_per_unit() const { return S_; }
  Interval support() const { return support_; }
  const std::vector<cd>& values() const { return values_; }

  /// First and one-past-last global sample index.
  std::int64_t first_index() const { return support_.lo * S_; }
  std::int64_t end_index() const { return support_.hi * S_; }

  /// Sample at global index j (x = j/S), zero outside the support.
  cd at(std::int64_t j) const {
    if (j < first_index() || j >= end_index()) return {0.0, 0.0};
    return values_[static_cast<std::size_t>(j - first_index())];
  }
  double x_of(std::int64_t j) const { return static_cast<double>(j) / S_; }

  /// Value at an on-grid abscissa; throws for off-grid x.
  cd operator()(double x) const;

  /// Same grid, zero-padded onto a larger support.
  SampledFunction extended_to(Interval support) const;

 private:
  int S_ = 0;
  Interval support_{};
  std::vector<cd> values_;
};

SampledFunction sample_function(const Recipe& r, Interval support, int S);

/// Rectangle-rule L2 pairing (1/S) sum f conj(g); supports may differ.
cd inner_product(const SampledFunction& f, const SampledFunction& g);
double norm(const SampledFunction& f);
/// ||f - g|| with zero extension.
double distance(const SampledFunction& f, const SampledFunction& g);

SampledFunction operator+(const SampledFunction& f, const SampledFunction& g);
SampledFunction operator*(cd c, const SampledFunction& f);

struct TFShift {
  double u = 0.0;
  double eta = 0.0;
  bool grid_exact(int S) const;
};

/// pi(u, eta) f (x) = e^{2 pi i eta x} f(x - u). Requires u*S integral.
SampledFunction tf_shift(const SampledFunction& f, TFShift shift);

/// Trigonometric-sum Fourier transform (1/S) sum_j f(x_j) e^{-2 pi i x_j w}
/// evaluated on the grid w_m = m/out_S, m in out_support*out_S.
SampledFunction fourier_transform(const SampledFunction& f, int out_S, Interval out_support);

/// Fourier transform onto the mirrored input grid (same S, support negated).
/// When the support is longer than S, the mirrored window would cover more
/// than one period of the sampled spectrum; the output is then one period
/// [-S/2, S/2) at the smallest power-of-two rate >= the support length.
SampledFunction fourier_transform(const SampledFunction& f);

}  // namespace gz
