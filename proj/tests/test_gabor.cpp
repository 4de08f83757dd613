#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gaborzak/gabor.hpp"

using namespace gz;

namespace {

SampledFunction gaussian(int S = 64) { return sample_function(recipe::Gaussian{}, {-8, 8}, S); }
SampledFunction box(int S = 32) { return sample_function(recipe::Box{0, 1}, {0, 1}, S); }

// sum (-1)^k e^{-k^2}
double theta_alt() {
  double t = 0;
  for (int k = -10; k <= 10; ++k) t += (k % 2 ? -1.0 : 1.0) * std::exp(-static_cast<double>(k) * k);
  return t;
}

MatrixField exact_modes(int Q, int n, const std::vector<std::pair<int, int>>& modes) {
  MatrixField F;
  F.rows = Q;
  F.cols = 1;
  F.nx = F.nw = F.count_x = F.count_w = n;
  for (int jx = 0; jx < n; ++jx)
    for (int jw = 0; jw < n; ++jw) {
      Eigen::MatrixXcd v(Q, 1);
      for (int l = 0; l < Q; ++l) v(l, 0) = unit_root(modes[l].first * jx + modes[l].second * jw, n);
      F.data.push_back(v);
    }
  return F;
}

}  // namespace

TEST_CASE("box on Z x Z is an orthonormal basis") {
  const auto r = riesz_bounds(box(64), {1, 1}, 64, 64);
  CHECK(std::abs(r.a_est - 1) < 1e-12);
  CHECK(std::abs(r.b_est - 1) < 1e-12);
}

TEST_CASE("Gaussian on Z x 2Z") {
  const auto g = gaussian();
  const auto r = riesz_bounds(g, {2, 1}, 64, 64);
  // at w = 1/2, Zg(1/2, 1/2) vanishes by symmetry, so x = 0 gives theta^2/2;
  // |Zg(x,1/2)|^2 + |Zg(x-1/2,1/2)|^2 is flat in x to about 5e-10
  CHECK(std::abs(r.a_est - theta_alt() * theta_alt() / 2) < 1e-8);
  CHECK(r.argmin.second == 32);
  // finite Gram sections have their spectrum inside [A, B]
  const auto [lo, hi] = gram_riesz_oracle(g, {2, 1}, 4);
  CHECK(lo >= r.a_est - 1e-9);
  CHECK(hi <= r.b_est + 1e-9);
  CHECK(hi / r.b_est > 0.95);
  // sup |Zg| <= sqrt(P B)
  CHECK(r.zak_sup <= std::sqrt(2 * r.b_est) + 1e-12);
}

TEST_CASE("incomplete systems have zero lower bound") {
  const auto r = riesz_bounds(gaussian(), {1, 2}, 64, 64);
  CHECK(r.a_est == 0.0);
  CHECK(r.b_est > 0);
}

TEST_CASE("bounds sandwich |A xi|^2") {
  const auto g = gaussian();
  const ZakGrid Zg = zak_transform(g, 64, 64);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> node(0, 63);
  for (SeparableLattice lat : {SeparableLattice{2, 1}, SeparableLattice{1, 4}}) {
    const auto r = riesz_bounds(Zg, lat);
    for (int i = 0; i < 64; ++i) {
      Eigen::VectorXcd xi(lat.Q);
      for (auto& c : xi) c = {nd(rng), nd(rng)};
      xi.normalize();
      const double v = (zz_at(Zg, lat, node(rng), node(rng)) * xi).squaredNorm();
      CHECK(v >= lat.P * r.a_est - 1e-9);
      CHECK(v <= lat.P * r.b_est + 1e-9);
    }
  }
}

TEST_CASE("shift matrix identity") {
  const ZakGrid Zg = zak_transform(gaussian(), 64, 64);
  CHECK(shift_identity_residual(Zg, {1, 4}) < 1e-12);
  CHECK(shift_identity_residual(Zg, {2, 1}) < 1e-12);
  const auto R = shift_matrix(3, 16, 64);
  CHECK(std::abs(R(0, 2) - cd(0, -1)) < 1e-15);
  CHECK(R(1, 0) == cd(1.0));
}

TEST_CASE("box demo: shift by one half") {
  const auto g = box();
  const auto rep = invariance_solve(g, {1, 1}, Rational(1, 2), Rational(0), 32, 32);
  CHECK(rep.verdict == InvarianceReport::Verdict::Invariant);
  CHECK(rep.max_residual < 1e-12);
  // F = e^{-2 pi i w} on [0,1/2), 1 on [1/2,1)
  double worst = 0;
  for (int jx = 0; jx < 32; ++jx)
    for (int jw = 0; jw < 32; ++jw) {
      const cd expect = jx < 16 ? unit_root(-jw, 32) : cd(1.0);
      worst = std::max(worst, std::abs(rep.F.node(jx, jw)(0, 0) - expect));
    }
  CHECK(worst < 1e-12);
  CHECK(rep.parseval_coeffs == doctest::Approx(rep.parseval_field).epsilon(1e-12));
  CHECK(distance(resynthesize(rep.coeffs, {1, 1}, g), tf_shift(g, {0.5, 0})) < 1e-12);

  const ZakGrid Zg = zak_transform(g, 32, 32);
  CHECK(fertig_residual(Zg, {1, 1}, Rational(1, 2), Rational(0), rep.F) < 1e-12);
  CHECK(conjugation_residual(rep.F, {1, 1}, Rational(0)).corrected < 1e-12);
  for (int N : {1, 2, 3}) CHECK(telescoping_residual(Zg, {1, 1}, Rational(1, 2), Rational(0), rep.F, N) < 1e-12);

  const NodeField H = [&](std::int64_t jx, std::int64_t jw) { return rep.F.periodic(jx, jw)(0, 0); };
  CHECK(product_relation_residual(H, 32, 32, Rational(1, 2), Rational(0), 2, 0, -1) < 1e-12);
  CHECK(product_relation_residual(H, 32, 32, Rational(1, 2), Rational(0), 2, 0, 0) > 1);
  CHECK(matrix_product_residual(rep.F, {1, 1}, Rational(1, 2), Rational(0), 2, 0, -1) < 1e-12);
  CHECK_FALSE(divisibility_check(1, 1, 2, 0, -1));
}

TEST_CASE("lattice points give delta coefficients") {
  SUBCASE("box, (1,0)") {
    const auto rep = invariance_solve(box(), {1, 1}, Rational(1), Rational(0), 32, 32);
    CHECK(rep.max_residual < 1e-12);
    REQUIRE(rep.coeffs.size() == 1);
    CHECK(std::abs(rep.coeffs.at({1, 0}) - 1.0) < 1e-12);
    // H = e^{-2 pi i w}: N = 1, (M1, M2) = (0, -1)
    const NodeField H = [&](std::int64_t jx, std::int64_t jw) { return rep.F.periodic(jx, jw)(0, 0); };
    CHECK(product_relation_residual(H, 32, 32, Rational(1), Rational(0), 1, 0, -1) < 1e-12);
    CHECK(divisibility_check(1, 1, 1, 0, -1));
  }
  SUBCASE("Gaussian on Z x 2Z, (1,2)") {
    const auto g = gaussian(32);
    const auto rep = invariance_solve(g, {2, 1}, Rational(1), Rational(2), 32, 32);
    CHECK(rep.max_residual < 1e-12);
    REQUIRE(rep.coeffs.size() == 1);
    CHECK(std::abs(rep.coeffs.at({1, 1}) - 1.0) < 1e-12);
    const ZakGrid Zg = zak_transform(g, 32, 32);
    CHECK(fertig_residual(Zg, {2, 1}, Rational(1), Rational(2), rep.F) < 1e-12);
  }
}

TEST_CASE("Gaussian is not invariant under a half shift") {
  const auto rep = invariance_solve(gaussian(32), {2, 1}, Rational(1, 2), Rational(0), 32, 32);
  CHECK(rep.verdict == InvarianceReport::Verdict::NotInvariant);
  CHECK(rep.max_residual > 0.1);
}

TEST_CASE("conjugation identity on exact modes") {
  const MatrixField F = exact_modes(2, 16, {{1, 0}, {-2, 3}});
  const auto r = conjugation_residual(F, {1, 2}, Rational(1, 4));
  CHECK(r.corrected < 1e-12);
  CHECK(r.literal > 1e-3);
  const auto r0 = conjugation_residual(exact_modes(4, 16, {{0, 1}, {1, 1}, {2, -1}, {3, 0}}), {1, 4}, Rational(3, 8));
  CHECK(r0.corrected < 1e-12);
}

TEST_CASE("divisibility") {
  CHECK(divisibility_check(1, 1, 2, 4, 0));
  CHECK(divisibility_check(2, 1, 4, 8, 4));
  CHECK_FALSE(divisibility_check(1, 1, 2, 0, -1));
  CHECK_THROWS_AS(divisibility_check(0, 1, 1, 0, 0), ValidationError);
}

TEST_CASE("invariance preconditions") {
  CHECK_THROWS_AS(invariance_solve(gaussian(32), {1, 2}, Rational(1, 2), Rational(0), 32, 32), NumericalError);
  CHECK_THROWS_AS(invariance_solve(gaussian(32), {2, 2}, Rational(1, 2), Rational(0), 32, 32), ValidationError);
  CHECK_THROWS_AS(invariance_solve(gaussian(32), {2, 1}, Rational(1, 3), Rational(0), 32, 32), ValidationError);
}
