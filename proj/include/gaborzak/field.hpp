#pragma once

#include <functional>
#include <vector>

#include "gaborzak/core.hpp"
#include "gaborzak/zak.hpp"

namespace gz {

/// Axis-aligned rectangle [x0,x1] x [w0,w1].
struct Rect {
  double x0 = 0, x1 = 1, w0 = 0, w1 = 1;
  double area() const { return (x1 - x0) * (w1 - w0); }
  bool contains(const Rect& r, double slack = 1e-12) const {
    return r.x0 >= x0 - slack && r.x1 <= x1 + slack && r.w0 >= w0 - slack && r.w1 <= w1 + slack;
  }
};

/// Closed square with side length `side` and lower-left corner (x, w).
struct Cube {
  double x = 0, w = 0, side = 1;
  static Cube centered(double cx, double cw, double side) { return {cx - side / 2, cw - side / 2, side}; }
  Rect rect() const { return {x, x + side, w, w + side}; }
  double area() const { return side * side; }
  double center_x() const { return x + side / 2; }
  double center_w() const { return w + side / 2; }
};

struct QuadPoint {
  double x, w, weight;
  cd value;
};

/// A locally integrable complex field on R^2 read through an evaluator.
///
/// The field is piecewise smooth on the cells of a square grid with spacing
/// `pitch`; integrals over rectangles split at cell boundaries and apply an
/// `order`-point Gauss-Legendre rule on each piece. Grid-sampled fields are
/// piecewise constant (order 1), for which every rectangle integral is
/// exact, including rectangles that cut cells partially.
class ScalarField2D {
 public:
  using Eval = std::function<cd(double, double)>;

  ScalarField2D() = default;
  ScalarField2D(Eval eval, double pitch, int order);

  /// Piecewise-constant field from a Zak grid (nx == nw required), read
  /// through the quasi-periodic extension everywhere on R^2.
  static ScalarField2D from_zak(const ZakGrid& Z);

  /// Piecewise-constant field from row-major samples on the cells of `domain`
  /// with `cells_x` x `cells_w` cells; `periodic` wraps reads outside domain.
  static ScalarField2D from_samples(std::vector<cd> values, int cells_x, int cells_w, Rect domain, bool periodic);

  /// Piecewise-constant sampling of `f` at cell centers on `domain`.
  static ScalarField2D sampled(const ScalarField2D& f, Rect domain, double pitch, bool periodic);

  cd operator()(double x, double w) const { return eval_(x, w); }
  double pitch() const { return pitch_; }
  int order() const { return order_; }
  bool piecewise_constant() const { return order_ == 1; }

  std::vector<QuadPoint> quadrature(const Rect& r) const;

  ScalarField2D operator*(const ScalarField2D& g) const;
  ScalarField2D operator+(const ScalarField2D& g) const;
  ScalarField2D scaled(cd c) const;
  ScalarField2D shifted_by(cd c) const;  ///< F + c
  ScalarField2D reciprocal() const;
  ScalarField2D translated(double dx, double dw) const;  ///< F(x+dx, w+dw)
  /// F(A (x,w)^T + b); the composite is treated as smooth on pieces of `pitch`.
  ScalarField2D composed_affine(double a11, double a12, double a21, double a22, double b1, double b2, double pitch,
                                int order) const;

 private:
  Eval eval_;
  double pitch_ = 1.0;
  int order_ = 1;
};

/// Gauss-Legendre nodes and weights on [0,1].
const std::vector<std::pair<double, double>>& gauss_legendre_unit(int order);

}  // namespace gz
