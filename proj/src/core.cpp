#include "gaborzak/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gz {

cd unit_root(std::int64_t num, std::int64_t den) {
  const std::int64_t r = floor_mod(num, den);
  return expi2pi(static_cast<double>(r) / static_cast<double>(den));
}

double sinc(double t) {
  if (t == 0.0) return 1.0;
  const double a = kPi * t;
  return std::sin(a) / a;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

Recipe parse_recipe(const std::string& name) {
  if (name == "gaussian") return recipe::Gaussian{};
  if (name == "box") return recipe::Box{};
  if (name == "box_sine") return recipe::BoxSine{};
  if (name.rfind("box(", 0) == 0 && name.back() == ')') {
    std::istringstream in(name.substr(4, name.size() - 5));
    double a = 0, b = 0;
    char comma = 0;
    if (in >> a >> comma >> b && comma == ',' && a < b) return recipe::Box{a, b};
  }
  throw ValidationError("unknown generator recipe '" + name + "'");
}

std::string recipe_name(const Recipe& r) {
  struct {
    std::string operator()(const recipe::Gaussian&) const { return "gaussian"; }
    std::string operator()(const recipe::Box& b) const {
      std::ostringstream s;
      s << "box(" << b.a << "," << b.b << ")";
      return s.str();
    }
    std::string operator()(const recipe::BoxSine&) const { return "box_sine"; }
    std::string operator()(const recipe::Table&) const { return "table"; }
  } v;
  return std::visit(v, r);
}

cd evaluate_recipe(const Recipe& r, double x) {
  if (const auto* b = std::get_if<recipe::Box>(&r)) return (x >= b->a && x < b->b) ? 1.0 : 0.0;
  if (std::holds_alternative<recipe::Gaussian>(r)) return std::exp(-x * x);
  if (std::holds_alternative<recipe::BoxSine>(r)) return (x >= 0.0 && x < 1.0) ? std::sin(kPi * x) : 0.0;
  throw ValidationError("table recipes have no closed form");
}

SampledFunction::SampledFunction(int samples_per_unit, Interval support, std::vector<cd> values)
    : S_(samples_per_unit), support_(support), values_(std::move(values)) {
  if (S_ < 1 || !is_power_of_two(S_))
    throw ValidationError("samples_per_unit must be a power of two");
  if (support_.hi < support_.lo) throw ValidationError("support must satisfy lo <= hi");
  if (static_cast<std::int64_t>(values_.size()) != support_.length() * S_)
    throw ValidationError("value count does not match support length times S");
}

cd SampledFunction::operator()(double x) const {
  const double idx = x * S_;
  const double r = std::round(idx);
  if (std::abs(idx - r) > 1e-9) throw ValidationError("abscissa is not a grid node");
  return at(static_cast<std::int64_t>(r));
}

SampledFunction SampledFunction::extended_to(Interval support) const {
  const Interval s{std::min(support.lo, support_.lo), std::max(support.hi, support_.hi)};
  std::vector<cd> v(static_cast<std::size_t>(s.length() * S_));
  for (std::int64_t j = s.lo * S_; j < s.hi * S_; ++j) v[static_cast<std::size_t>(j - s.lo * S_)] = at(j);
  return {S_, s, std::move(v)};
}

SampledFunction sample_function(const Recipe& r, Interval support, int S) {
  if (support.length() <= 0) throw ValidationError("support must be nonempty");
  if (S < 2 || !is_power_of_two(S)) throw ValidationError("S must be a power of two >= 2");
  const std::int64_t n = support.length() * S;
  std::vector<cd> v(static_cast<std::size_t>(n));
  if (const auto* t = std::get_if<recipe::Table>(&r)) {
    if (static_cast<std::int64_t>(t->values.size()) != n)
      throw ValidationError("custom table length does not match support*S");
    v = t->values;
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] = evaluate_recipe(r, static_cast<double>(support.lo * S + i) / S);
  }
  return {S, support, std::move(v)};
}

namespace {
void require_same_rate(const SampledFunction& f, const SampledFunction& g) {
  if (f.samples_per_unit() != g.samples_per_unit())
    throw ValidationError("functions are sampled at different rates");
}
}  // namespace

cd inner_product(const SampledFunction& f, const SampledFunction& g) {
  require_same_rate(f, g);
  const std::int64_t lo = std::max(f.first_index(), g.first_index());
  const std::int64_t hi = std::min(f.end_index(), g.end_index());
  cd acc{0.0, 0.0};
  for (std::int64_t j = lo; j < hi; ++j) acc += f.at(j) * std::conj(g.at(j));
  return acc / static_cast<double>(f.samples_per_unit());
}

double norm(const SampledFunction& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

SampledFunction operator+(const SampledFunction& f, const SampledFunction& g) {
  require_same_rate(f, g);
  const Interval s{std::min(f.support().lo, g.support().lo), std::max(f.support().hi, g.support().hi)};
  const int S = f.samples_per_unit();
  std::vector<cd> v(static_cast<std::size_t>(s.length() * S));
  for (std::int64_t j = s.lo * S; j < s.hi * S; ++j) v[static_cast<std::size_t>(j - s.lo * S)] = f.at(j) + g.at(j);
  return {S, s, std::move(v)};
}

SampledFunction operator*(cd c, const SampledFunction& f) {
  std::vector<cd> v = f.values();
  for (auto& x : v) x *= c;
  return {f.samples_per_unit(), f.support(), std::move(v)};
}

double distance(const SampledFunction& f, const SampledFunction& g) { return norm(f + cd(-1.0) * g); }

bool TFShift::grid_exact(int S) const {
  const double idx = u * S;
  return std::abs(idx - std::round(idx)) <= 1e-9;
}

SampledFunction tf_shift(const SampledFunction& f, TFShift shift) {
  const int S = f.samples_per_unit();
  if (!shift.grid_exact(S)) throw ValidationError("time shift u must satisfy u*S integral");
  const auto n = static_cast<std::int64_t>(std::llround(shift.u * S));
  const Interval s{f.support().lo + floor_div(n, S), f.support().hi - floor_div(-n, S)};
  std::vector<cd> v(static_cast<std::size_t>(s.length() * S));
  for (std::int64_t j = s.lo * S; j < s.hi * S; ++j) {
    const cd val = f.at(j - n);
    if (val == cd{}) continue;
    v[static_cast<std::size_t>(j - s.lo * S)] = val * expi2pi(shift.eta * static_cast<double>(j) / S);
  }
  return {S, s, std::move(v)};
}

SampledFunction fourier_transform(const SampledFunction& f, int out_S, Interval out_support) {
  if (out_S < 1 || !is_power_of_two(out_S)) throw ValidationError("output rate must be a power of two");
  const int S = f.samples_per_unit();
  // x_j w_m = j m / (S out_S); the phase table is indexed by j*m mod den.
  const std::int64_t den = static_cast<std::int64_t>(S) * out_S;
  std::vector<cd> table(static_cast<std::size_t>(den));
  for (std::int64_t k = 0; k < den; ++k) table[static_cast<std::size_t>(k)] = unit_root(-k, den);

  const std::int64_t m0 = out_support.lo * out_S;
  const std::int64_t count = out_support.length() * out_S;
  std::vector<cd> out(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t m = m0 + i;
    cd acc{0.0, 0.0};
    for (std::int64_t j = f.first_index(); j < f.end_index(); ++j) {
      const cd v = f.at(j);
      if (v == cd{}) continue;
      acc += v * table[static_cast<std::size_t>(floor_mod(j * m, den))];
    }
    out[static_cast<std::size_t>(i)] = acc / static_cast<double>(S);
  }
  return {out_S, out_support, std::move(out)};
}

SampledFunction fourier_transform(const SampledFunction& f) {
  const int S = f.samples_per_unit();
  const std::int64_t L = f.support().length();
  if (L <= S) return fourier_transform(f, S, Interval{-f.support().hi, -f.support().lo});
  // the sampled spectrum is S-periodic: keep one period, sampled finely enough
  // for the support length
  int out_S = S;
  while (out_S < L) out_S *= 2;
  return fourier_transform(f, out_S, Interval{-S / 2, S / 2});
}

}  // namespace gz
