#include "gaborzak/field.hpp"

#include <array>
#include <cmath>
#include <memory>

namespace gz {

namespace {

std::vector<std::pair<double, double>> compute_gauss_legendre(int n) {
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    out[static_cast<std::size_t>(i)] = {0.5 * (1.0 - z), 0.5 * w};
  }
  return out;
}

std::vector<double> breakpoints(double a, double b, double pitch) {
  std::vector<double> pts{a};
  const double tiny = 1e-9 * pitch;
  for (double k = std::floor(a / pitch) + 1;; k += 1.0) {
    const double t = k * pitch;
    if (t >= b - tiny) break;
    if (t > a + tiny) pts.push_back(t);
  }
  pts.push_back(b);
  return pts;
}

}  // namespace

const std::vector<std::pair<double, double>>& gauss_legendre_unit(int order) {
  static const auto table = [] {
    std::array<std::vector<std::pair<double, double>>, 33> t;
    t[1] = {{0.5, 1.0}};
    for (int n = 2; n <= 32; ++n) t[static_cast<std::size_t>(n)] = compute_gauss_legendre(n);
    return t;
  }();
  if (order < 1 || order > 32) throw ValidationError("quadrature order must be in [1, 32]");
  return table[static_cast<std::size_t>(order)];
}

ScalarField2D::ScalarField2D(Eval eval, double pitch, int order) : eval_(std::move(eval)), pitch_(pitch), order_(order) {
  if (!(pitch_ > 0)) throw ValidationError("field pitch must be positive");
  gauss_legendre_unit(order_);
}

ScalarField2D ScalarField2D::from_zak(const ZakGrid& Z) {
  if (Z.nx() != Z.nw()) throw ValidationError("square cells need nx == nw");
  const int n = Z.nx();
  return {[Z, n](double x, double w) {
            return Z.at(static_cast<std::int64_t>(std::floor(x * n)), static_cast<std::int64_t>(std::floor(w * n)));
          },
          1.0 / n, 1};
}

ScalarField2D ScalarField2D::from_samples(std::vector<cd> values, int cells_x, int cells_w, Rect domain,
                                          bool periodic) {
  if (values.size() != static_cast<std::size_t>(cells_x) * cells_w) throw ValidationError("sample count mismatch");
  const double hx = (domain.x1 - domain.x0) / cells_x;
  const double hw = (domain.w1 - domain.w0) / cells_w;
  if (std::abs(hx - hw) > 1e-12 * std::max(hx, hw)) throw ValidationError("cells must be square");
  auto data = std::make_shared<const std::vector<cd>>(std::move(values));
  return {[data, cells_x, cells_w, domain, hx, periodic](double x, double w) -> cd {
            auto i = static_cast<std::int64_t>(std::floor((x - domain.x0) / hx));
            auto j = static_cast<std::int64_t>(std::floor((w - domain.w0) / hx));
            if (periodic) {
              i = floor_mod(i, cells_x);
              j = floor_mod(j, cells_w);
            } else if (i < 0 || j < 0 || i >= cells_x || j >= cells_w) {
              throw ValidationError("field read outside its sampled domain");
            }
            return (*data)[static_cast<std::size_t>(i * cells_w + j)];
          },
          hx, 1};
}

ScalarField2D ScalarField2D::sampled(const ScalarField2D& f, Rect domain, double pitch, bool periodic) {
  const auto cx = static_cast<int>(std::llround((domain.x1 - domain.x0) / pitch));
  const auto cw = static_cast<int>(std::llround((domain.w1 - domain.w0) / pitch));
  std::vector<cd> v(static_cast<std::size_t>(cx) * cw);
  for (int i = 0; i < cx; ++i)
    for (int j = 0; j < cw; ++j)
      v[static_cast<std::size_t>(i) * cw + j] = f(domain.x0 + (i + 0.5) * pitch, domain.w0 + (j + 0.5) * pitch);
  return from_samples(std::move(v), cx, cw, domain, periodic);
}

std::vector<QuadPoint> ScalarField2D::quadrature(const Rect& r) const {
  const auto xs = breakpoints(r.x0, r.x1, pitch_);
  const auto ws = breakpoints(r.w0, r.w1, pitch_);
  const auto& gl = gauss_legendre_unit(order_);
  std::vector<QuadPoint> pts;
  pts.reserve((xs.size() - 1) * (ws.size() - 1) * gl.size() * gl.size());
  for (std::size_t a = 0; a + 1 < xs.size(); ++a) {
    const double dx = xs[a + 1] - xs[a];
    for (std::size_t b = 0; b + 1 < ws.size(); ++b) {
      const double dw = ws[b + 1] - ws[b];
      for (const auto& [tx, ax] : gl)
        for (const auto& [tw, aw] : gl) {
          const double x = xs[a] + tx * dx;
          const double w = ws[b] + tw * dw;
          pts.push_back({x, w, ax * aw * dx * dw, eval_(x, w)});
        }
    }
  }
  return pts;
}

namespace {
double joint_pitch(double a, double b) { return std::min(a, b); }
}  // namespace

ScalarField2D ScalarField2D::operator*(const ScalarField2D& g) const {
  auto f1 = eval_;
  auto f2 = g.eval_;
  return {[f1, f2](double x, double w) { return f1(x, w) * f2(x, w); }, joint_pitch(pitch_, g.pitch_),
          std::max(order_, g.order_)};
}

ScalarField2D ScalarField2D::operator+(const ScalarField2D& g) const {
  auto f1 = eval_;
  auto f2 = g.eval_;
  return {[f1, f2](double x, double w) { return f1(x, w) + f2(x, w); }, joint_pitch(pitch_, g.pitch_),
          std::max(order_, g.order_)};
}

ScalarField2D ScalarField2D::scaled(cd c) const {
  auto f = eval_;
  return {[f, c](double x, double w) { return c * f(x, w); }, pitch_, order_};
}

ScalarField2D ScalarField2D::shifted_by(cd c) const {
  auto f = eval_;
  return {[f, c](double x, double w) { return f(x, w) + c; }, pitch_, order_};
}

ScalarField2D ScalarField2D::reciprocal() const {
  auto f = eval_;
  return {[f](double x, double w) { return 1.0 / f(x, w); }, pitch_, order_};
}

ScalarField2D ScalarField2D::translated(double dx, double dw) const {
  auto f = eval_;
  return {[f, dx, dw](double x, double w) { return f(x + dx, w + dw); }, pitch_, order_};
}

ScalarField2D ScalarField2D::composed_affine(double a11, double a12, double a21, double a22, double b1, double b2,
                                             double pitch, int order) const {
  auto f = eval_;
  return {[=](double x, double w) { return f(a11 * x + a12 * w + b1, a21 * x + a22 * w + b2); }, pitch, order};
}

}  // namespace gz
