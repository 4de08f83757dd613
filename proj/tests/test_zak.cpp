#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gaborzak/zak.hpp"

using namespace gz;

TEST_CASE("box Zak transform is unimodular on the unit cell") {
  const auto b = sample_function(recipe::Box{0, 1}, {0, 1}, 64);
  const auto Z = zak_transform(b, 64, 64);
  for (const cd& v : Z.values()) CHECK(std::abs(std::abs(v) - 1.0) < 1e-15);
  // one cell to the right picks up e^{2 pi i w}
  CHECK(std::abs(Z.at(64 + 3, 16) - cd(0, 1)) < 1e-15);
}

TEST_CASE("unitarity") {
  for (const char* name : {"box", "box_sine", "gaussian"}) {
    const Recipe r = parse_recipe(name);
    const Interval sup = std::holds_alternative<recipe::Gaussian>(r) ? Interval{-8, 8} : Interval{0, 1};
    const auto f = sample_function(r, sup, 64);
    CHECK(std::abs(zak_transform(f, 64, 64).l2_norm() - norm(f)) < 1e-12);
  }
}

TEST_CASE("Gaussian Zak value against the theta series") {
  const auto g = sample_function(recipe::Gaussian{}, {-8, 8}, 64);
  const auto Z = zak_transform(g, 64, 64);
  double theta = 0;  // sum (-1)^k e^{-k^2}
  for (int k = -10; k <= 10; ++k) theta += (k % 2 ? -1.0 : 1.0) * std::exp(-static_cast<double>(k) * k);
  CHECK(std::abs(Z.at(0, 32) - theta) < 1e-14);
}

TEST_CASE("quasi-periodic reads match the defining sum") {
  const auto g = sample_function(recipe::Gaussian{}, {-8, 8}, 32);
  const auto Z = zak_transform(g, 32, 32);
  for (std::int64_t jx : {-40, -3, 5, 70})
    for (std::int64_t jw : {-33, 7, 50}) CHECK(std::abs(Z.at(jx, jw) - zak_direct(g, 32, 32, jx, jw)) < 1e-13);
}

TEST_CASE("inverse Zak round trip") {
  const auto f = sample_function(recipe::BoxSine{}, {0, 1}, 32);
  const auto Z = zak_transform(f, 32, 8);
  CHECK(distance(inverse_zak(Z, {-2, 3}), f) < 1e-14);
}

TEST_CASE("analytic evaluator agrees with the grid") {
  const auto f = sample_function(recipe::BoxSine{}, {0, 1}, 16);
  const auto Z = zak_transform(f, 16, 16);
  const auto E = zak_of_recipe(recipe::BoxSine{}, {0, 1});
  for (int jx : {0, 5, 19, -7})
    for (int jw : {0, 3, 12}) CHECK(std::abs(E(jx / 16.0, jw / 16.0) - Z.at(jx, jw)) < 1e-13);
  const auto Eg = zak_of_recipe(recipe::Gaussian{}, {-8, 8});
  const auto Zg = zak_transform(sample_function(recipe::Gaussian{}, {-8, 8}, 16), 16, 16);
  CHECK(std::abs(Eg(3.25, 0.5) - Zg.at(52, 8)) < 1e-13);
}

TEST_CASE("identities") {
  const auto g = sample_function(recipe::Gaussian{}, {-8, 8}, 64);
  const auto r = check_zak_identities(g);
  CHECK(r.quasi_periodicity < 1e-8);
  CHECK(r.shift < 1e-8);
  CHECK(r.integer_shift < 1e-8);
  CHECK(r.fourier < 1e-4);
}

TEST_CASE("grid validation") {
  const auto g = sample_function(recipe::Gaussian{}, {-8, 8}, 64);
  CHECK_THROWS_AS(zak_transform(g, 48, 64), ValidationError);
  CHECK_THROWS_AS(zak_transform(g, 64, 8), ValidationError);  // 16 support cells
  const auto Z = zak_transform(g, 64, 64);
  CHECK_THROWS_AS(zak_extend(Z, 0.001, 0.0), ValidationError);
}

TEST_CASE("CSV layout") {
  const auto Z = zak_transform(sample_function(recipe::Box{0, 1}, {0, 1}, 2), 2, 2);
  std::ostringstream s;
  write_zak_csv(s, Z);
  const std::string out = s.str();
  CHECK(out.rfind("x,omega,re,im\n", 0) == 0);
  CHECK(std::count(out.begin(), out.end(), '\n') == 5);
}
