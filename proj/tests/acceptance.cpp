// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <path to gz> <scratch dir>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "gaborzak/metaplectic.hpp"
#include "gaborzak/uncertainty.hpp"

using namespace gz;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SampledFunction gaussian(int S = 64) { return sample_function(recipe::Gaussian{}, {-8, 8}, S); }
SampledFunction box(int S = 64) { return sample_function(recipe::Box{0, 1}, {0, 1}, S); }

NodeField scalar_view(const MatrixField& F) {
  return [&F](std::int64_t jx, std::int64_t jw) { return F.periodic(jx, jw)(0, 0); };
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

void ac1(Outcome& o) {
  for (const char* name : {"box", "box_sine", "gaussian"}) {
    const Recipe r = parse_recipe(name);
    const Interval sup = std::holds_alternative<recipe::Gaussian>(r) ? Interval{-8, 8} : Interval{0, 1};
    const auto t0 = std::chrono::steady_clock::now();
    const auto f = sample_function(r, sup, 64);
    const double dev = std::abs(zak_transform(f, 64, 64).l2_norm() - norm(f));
    const double dt = seconds_since(t0);
    o.detail << " " << name << " dev=" << dev << " t=" << dt << "s";
    o.require(dev < 1e-10, std::string(name) + " norm");
    o.require(dt < 1.0, std::string(name) + " runtime");
  }
}

void ac2(Outcome& o) {
  const auto r = check_zak_identities(gaussian());
  o.detail << " a=" << r.quasi_periodicity << " b=" << r.shift << " c=" << r.integer_shift << " d=" << r.fourier;
  o.require(std::max({r.quasi_periodicity, r.shift, r.integer_shift}) < 1e-8, "(a)-(c)");
  o.require(r.fourier < 1e-4, "(d)");
}

void ac3(Outcome& o) {
  const auto Z = zak_of_recipe(recipe::BoxSine{}, {0, 1});
  const ScalarField2D F(Z, 1.0 / 8, 8);
  const double d = 0.25;
  const int k = 3;
  const Rect Q{k + (1 - d) / 2, k + (1 + d) / 2, -d / 2, d / 2};
  const double mean_dev = std::abs(mean(F, Q) - sinc(1.0 / 8) * sinc(3.0 / 4));
  const double osc = mean_oscillation(F, Q);
  o.detail << " mean dev=" << mean_dev << " M_Q=" << osc << " (1/pi=" << 1 / kPi << ")";
  o.require(mean_dev < 1e-6, "cube mean");
  o.require(osc >= 1 / kPi - 1e-3, "oscillation >= 1/pi");

  const ScalarField2D G(Z, 1.0 / 32, 4);
  const auto rep = vmo_decay_profile(G, {0, 1, 0, 1}, {1.0 / 16, 1.0 / 64, 1.0 / 256});
  o.detail << " small window S=";
  for (double s : rep.S) o.detail << s << " ";
  o.detail << rep.verdict_name();
  o.require(rep.verdict == OscillationReport::Verdict::VmoConsistent && rep.S[2] < rep.S[1] && rep.S[1] < rep.S[0],
            "decaying profile on the unit cell");
}

void ac4(Outcome& o) {
  struct Case {
    int M1, M2;
    double r;
  };
  for (const Case c : {Case{1, 0, 0.25}, Case{2, 3, 0.125}, Case{0, 5, 0.0625}}) {
    const ScalarField2D F([=](double x, double w) { return expi2pi(c.M1 * x + c.M2 * w); }, 1.0 / 64, 8);
    const auto Fr = mean_function(F, c.r);
    double worst = 0;
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 32; ++j) {
        const double x = i / 32.0 + 0.003, w = j / 32.0 - 0.007;
        worst = std::max(worst, std::abs(Fr(x, w) - sinc(c.M1 * c.r) * sinc(c.M2 * c.r) * expi2pi(c.M1 * x + c.M2 * w)));
      }
    o.detail << " (" << c.M1 << "," << c.M2 << "," << c.r << ")=" << worst;
    o.require(worst < 1e-8, "sup deviation");
  }
}

void ac5(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rb = riesz_bounds(box(), {1, 1}, 64, 64);
  o.detail << " box A=" << rb.a_est << " B=" << rb.b_est;
  o.require(std::abs(rb.a_est - 1) < 1e-10 && std::abs(rb.b_est - 1) < 1e-10, "box bounds");
  const auto g = gaussian();
  const auto rg = riesz_bounds(g, {2, 1}, 64, 64);
  const auto [lo, hi] = gram_riesz_oracle(g, {2, 1}, 6);
  const double ea = std::abs(lo - rg.a_est) / rg.a_est, eb = std::abs(hi - rg.b_est) / rg.b_est;
  const double dt = seconds_since(t0);
  o.detail << " gaussian A=" << rg.a_est << " gram=" << lo << " (" << 100 * ea << "%) B=" << rg.b_est << " gram=" << hi
           << " (" << 100 * eb << "%) t=" << dt << "s";
  o.require(ea < 0.05, "Gram lower bound within 5%");
  o.require(eb < 0.05, "Gram upper bound within 5%");
  o.require(dt < 30, "runtime");
}

void ac6(Outcome& o) {
  const auto g = gaussian();
  const ZakGrid Zg = zak_transform(g, 64, 64);
  const SeparableLattice lat{2, 1};
  const auto r = riesz_bounds(Zg, lat);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> node(0, 63);
  int bad = 0;
  for (int i = 0; i < 64; ++i) {
    Eigen::VectorXcd xi(lat.Q);
    for (auto& c : xi) c = {nd(rng), nd(rng)};
    xi.normalize();
    const double v = (zz_at(Zg, lat, node(rng), node(rng)) * xi).squaredNorm();
    if (v < lat.P * r.a_est - 1e-9 || v > lat.P * r.b_est + 1e-9) ++bad;
  }
  o.detail << " violations=" << bad << "/64";
  o.require(bad == 0, "sandwich");
}

void ac7(Outcome& o) {
  const auto g = box(32);
  const auto rep = invariance_solve(g, {1, 1}, Rational(1, 2), Rational(0), 32, 32);
  double closed = 0;
  for (int jx = 0; jx < 32; ++jx)
    for (int jw = 0; jw < 32; ++jw) {
      const cd expect = jx < 16 ? unit_root(-jw, 32) : cd(1.0);
      closed = std::max(closed, std::abs(rep.F.node(jx, jw)(0, 0) - expect));
    }
  const double resyn = distance(resynthesize(rep.coeffs, {1, 1}, g), tf_shift(g, {0.5, 0}));
  o.detail << " box residual=" << rep.max_residual << " F dev=" << closed << " resynthesis=" << resyn;
  o.require(rep.max_residual < 1e-8, "box residual");
  o.require(closed < 1e-8, "closed form");
  o.require(resyn < 1e-6, "resynthesis");

  const auto rg = invariance_solve(gaussian(32), {2, 1}, Rational(1, 2), Rational(0), 32, 32);
  o.detail << " gaussian residual=" << rg.max_residual;
  o.require(rg.max_residual > 0.1, "gaussian not invariant");

  const auto lb = invariance_solve(g, {1, 1}, Rational(1), Rational(0), 32, 32);
  const auto lg = invariance_solve(gaussian(32), {2, 1}, Rational(1), Rational(2), 32, 32);
  const bool delta_b = lb.coeffs.size() == 1 && std::abs(lb.coeffs.at({1, 0}) - 1.0) < 1e-10;
  const bool delta_g = lg.coeffs.size() == 1 && std::abs(lg.coeffs.at({1, 1}) - 1.0) < 1e-10;
  o.detail << " lattice residuals=" << lb.max_residual << "," << lg.max_residual;
  o.require(lb.max_residual < 1e-10 && lg.max_residual < 1e-10, "lattice-point residual");
  o.require(delta_b && delta_g, "delta coefficients");
}

void ac8(Outcome& o) {
  const auto g = box(32);
  const auto rep = invariance_solve(g, {1, 1}, Rational(1, 2), Rational(0), 32, 32);
  const ZakGrid Zg = zak_transform(g, 32, 32);
  const double fertig = fertig_residual(Zg, {1, 1}, Rational(1, 2), Rational(0), rep.F);
  const double conj = conjugation_residual(rep.F, {1, 1}, Rational(0)).corrected;
  const double conj_modes =
      std::max(conjugation_residual(exact_modes(2, 16, {{1, 0}, {-2, 3}}), {1, 2}, Rational(1, 4)).corrected,
               conjugation_residual(exact_modes(4, 16, {{0, 1}, {1, 1}, {2, -1}, {3, 0}}), {1, 4}, Rational(3, 8))
                   .corrected);
  const double prod = product_relation_residual(scalar_view(rep.F), 32, 32, Rational(1, 2), Rational(0), 2, 0, -1);
  const double mprod = matrix_product_residual(rep.F, {1, 1}, Rational(1, 2), Rational(0), 2, 0, -1);
  o.detail << " fertig=" << fertig << " conjugation=" << conj << " modes=" << conj_modes << " product=" << prod
           << " matrix product=" << mprod;
  o.require(std::max({fertig, conj, conj_modes, prod, mprod}) < 1e-10, "residuals");
  o.require(!divisibility_check(1, 1, 2, 0, -1), "box demo not divisible");
  o.require(divisibility_check(1, 1, 1, 0, -1) && divisibility_check(1, 1, 2, 4, 0) && divisibility_check(2, 1, 4, 8, 4),
            "in-lattice controls divisible");
}

void ac9(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  InequalityOptions opt;
  opt.cases = 1000;
  const auto res = run_inequality_suite(opt);
  const double dt = seconds_since(t0);
  for (const auto& r : res) {
    o.detail << " " << r.name << "=" << r.max_ratio;
    o.require(r.cases == 1000 && r.holds(1e-3), r.name);
  }
  o.detail << " t=" << dt << "s";
  o.require(res.size() == 8, "eight inequalities");
  o.require(dt < 60, "runtime");
}

void ac10(Outcome& o) {
  std::mt19937_64 rng(10);
  int sl_bad = 0, red_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto S = random_sl2(rng, 40);
    if (!(product(sl2_factorize(S)) == S)) ++sl_bad;
  }
  for (int i = 0; i < 1000; ++i) {
    const auto A = random_gl2(rng, 40);
    const auto r = lattice_reduce(A);
    const bool ok = r.B.det() == Rational(1) && Rational(r.P, r.Q) == A.det().abs() &&
                    r.B * r.normalized == RationalMatrix2::diag(Rational(1, r.Q), Rational(r.P)) &&
                    std::gcd(r.P, r.Q) == 1;
    if (!ok) ++red_bad;
  }
  o.detail << " factorization mismatches=" << sl_bad << "/1000 reduction mismatches=" << red_bad << "/1000";
  o.require(sl_bad == 0, "factorization");
  o.require(red_bad == 0, "reduction");
}

void ac11(Outcome& o) {
  const auto g32 = gaussian(32);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> du(-16, 16), de(-8, 8);
  double worst = 0;
  for (const auto& step : {GeneratorStep::j(), GeneratorStep::dilation(Rational(2)),
                           GeneratorStep::dilation(Rational(-1, 2)), GeneratorStep::chirp(Rational(1)),
                           GeneratorStep::chirp(Rational(-1, 2))}) {
    const MetaplecticChain chain{step.matrix(), {step}};
    for (int i = 0; i < 8; ++i)
      worst = std::max(worst, covariance_residual(chain, {Rational(du(rng), 8), Rational(de(rng), 4)}, g32));
  }
  const auto g = gaussian();
  const double easy = std::max(easy_chirp_residual(g, Rational(1, 4), Rational(2)),
                               easy_chirp_residual(g, Rational(3, 4), Rational(2)));
  const auto z = check_zak_formulas(g, Rational(3, 2), 1);
  o.detail << " covariance=" << worst << " easy chirp=" << easy << " zak dilation=" << z.dilation
           << " chirp=" << z.chirp << " fourier=" << z.fourier;
  o.require(worst < 1e-5, "covariance");
  o.require(easy < 1e-12, "easy chirp");
  o.require(z.dilation < 1e-8 && z.chirp < 1e-8, "dilation/chirp formulas");
  o.require(z.fourier < 1e-4, "Fourier formula");
}

void ac12(Outcome& o) {
  const auto g = gaussian();
  const auto u = uncertainty_product(g, 2, 2, 0, 0, {1, 2, 4, 8});
  const double t_dev = std::abs(u.time.value - std::sqrt(kPi / 2) / 4);
  const double f_dev = std::abs(u.frequency.value - 1 / (std::pow(2.0, 2.5) * std::pow(kPi, 1.5)));
  o.detail << " gaussian moment devs=" << t_dev << "," << f_dev;
  o.require(t_dev < 1e-6 && f_dev < 1e-6, "Gaussian moments");

  const auto ub = uncertainty_product(box(), 2, 2, 0.5, 0, {2, 4, 8, 16, 32});
  const auto gb = gagliardo_seminorm(recipe::Box{0, 1}, {0, 1}, 0.5, {2, 4, 8});
  o.detail << " box frequency " << ub.frequency.verdict_name() << "/" << ub.frequency.growth << ", gagliardo "
           << gb.band_sweep.verdict_name() << "/" << gb.band_sweep.growth;
  o.require(!ub.frequency.convergent && ub.frequency.growth == "linear", "box frequency moment");
  o.require(!gb.convergent && gb.band_sweep.growth == "log", "box Gagliardo");

  const auto fg = feichtinger_norm_estimate(sample_function(recipe::Gaussian{}, {-8, 8}, 32), {}, {2, 4, 8});
  const auto fb = feichtinger_norm_estimate(box(), {}, {2, 4, 8, 16, 32});
  o.detail << " feichtinger gaussian=" << fg.verdict_name() << " box=" << fb.verdict_name();
  o.require(fg.convergent && !fb.convergent, "Feichtinger verdicts");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void ac13(Outcome& o, const std::string& gz_path, const fs::path& scratch) {
  const fs::path cfg = scratch / "ac13.json";
  std::ofstream(cfg) << json{{"generator", "box(0,1)"}, {"S", 32}, {"nx", 32}, {"nw", 32}, {"u", "1/2"}, {"seed", 7}}.dump();
  std::vector<fs::path> dirs{scratch / "run1", scratch / "run2"};
  for (const auto& d : dirs) {
    fs::remove_all(d);
    const std::string cmd = gz_path + " analyze --config " + cfg.string() + " --out " + d.string() + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    o.require(WIFEXITED(st) && WEXITSTATUS(st) == 0, "gz analyze exit code");
  }
  int files = 0, differ = 0;
  if (fs::exists(dirs[0]))
    for (const auto& e : fs::directory_iterator(dirs[0])) {
      ++files;
      const fs::path other = dirs[1] / e.path().filename();
      if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differ;
    }
  o.detail << " files=" << files << " differing=" << differ;
  o.require(files >= 4 && differ == 0, "byte-identical outputs");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <gz> <scratch dir>\n";
    return 2;
  }
  const std::string gz_path = argv[1];
  const fs::path scratch = argv[2];
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1 Zak unitarity", ac1},
      {"AC2 Zak identities", ac2},
      {"AC3 box_sine oscillation witness", ac3},
      {"AC4 sinc mean identity", ac4},
      {"AC5 Riesz bounds", ac5},
      {"AC6 Zak matrix sandwich", ac6},
      {"AC7 invariance pipeline", ac7},
      {"AC8 M-matrix identities", ac8},
      {"AC9 VMO inequality suite", ac9},
      {"AC10 SL(2,Q) factorization and reduction", ac10},
      {"AC11 metaplectic", ac11},
      {"AC12 uncertainty", ac12},
      {"AC13 reproducibility", [&](Outcome& o) { ac13(o, gz_path, scratch); }},
  };
  int failed = 0;
  std::cout << std::setprecision(4);
  for (const auto& [name, run] : criteria) {
    Outcome o;
    o.detail << std::setprecision(4);
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ":" << o.detail.str() << std::endl;
  }
  std::cout << (13 - failed) << "/13 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
