#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "gaborzak/metaplectic.hpp"
#include "gaborzak/uncertainty.hpp"
#include "gaborzak/zak.hpp"

namespace gz::cli {

namespace fs = std::filesystem;

OutputDir::OutputDir(fs::path dir, std::string config_hash) : dir_(std::move(dir)), hash_(std::move(config_hash)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputDir::commit(const std::string& name, const std::string& text) const {
  const fs::path target = dir_ / name;
  const fs::path tmp = dir_ / (name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw ValidationError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

void OutputDir::write_json(const std::string& name, const std::string& command, json body) const {
  json j{{"schema", kSchemaVersion}, {"command", command}, {"config_hash", hash_}};
  for (auto& [k, v] : body.items()) j[k] = std::move(v);
  commit(name, j.dump(2) + "\n");
}

void OutputDir::write_csv(const std::string& name, const std::function<void(std::ostream&)>& body) const {
  std::ostringstream s;
  s << "# config_hash=" << hash_ << "\n";
  body(s);
  commit(name, s.str());
}

namespace {

SampledFunction generator(const ExperimentConfig& c) { return sample_function(c.recipe, c.support, c.S); }

std::vector<double> eps_values(const ExperimentConfig& c) {
  std::vector<double> e;
  for (const auto& r : c.eps) e.push_back(r.to_double());
  return e;
}

/// Smooth evaluator when the generator is analytic; the field pitch follows vmo_pitch.
ScalarField2D zak_field(const ExperimentConfig& c) {
  return ScalarField2D(zak_of_recipe(c.recipe, c.support), 1.0 / c.vmo_pitch, 2);
}

json rational_pair(const Rational& a, const Rational& b) { return json::array({a.str(), b.str()}); }

std::vector<std::pair<Rational, Rational>> random_lambdas(std::mt19937_64& rng, int count, int S) {
  // shifts in [-2,2] on the S/4 grid (still on the grid after dilation by 1/2),
  // modulations in [-2,2] with denominator 4
  std::uniform_int_distribution<long long> du(-S / 2, S / 2), de(-8, 8);
  std::vector<std::pair<Rational, Rational>> out;
  for (int i = 0; i < count; ++i) out.emplace_back(Rational(du(rng), S / 4), Rational(de(rng), 4));
  return out;
}

int fail_if(bool failed, std::ostream& log, const std::string& what) {
  log << what << (failed ? ": FAIL\n" : ": ok\n");
  return failed ? 1 : 0;
}

}  // namespace

int cmd_zak(const ExperimentConfig& c, std::ostream& log) {
  validate_grid(c);
  const SampledFunction g = generator(c);
  const ZakGrid Z = zak_transform(g, c.nx, c.nw);
  ZakIdentityOptions opt;
  opt.n = std::min(c.nx, c.nw);
  if (opt.n < 8 || c.nx != c.nw) throw ValidationError("identity checks need nx = nw >= 8");
  const ZakIdentityReport ids = check_zak_identities(g, opt);
  const OutputDir out(c.out, c.hash());
  out.write_csv("zak.csv", [&](std::ostream& s) { write_zak_csv(s, Z); });
  out.write_json("zak_identities.json", "zak",
                 {{"generator", c.generator},
                  {"norm_f", norm(g)},
                  {"norm_zak", Z.l2_norm()},
                  {"identities", to_report(ids)}});
  log << "zak: |f| = " << norm(g) << ", |Zf| = " << Z.l2_norm() << ", identity deviations (a) "
      << ids.quasi_periodicity << " (b) " << ids.shift << " (c) " << ids.integer_shift << " (d) " << ids.fourier << "\n";
  return 0;
}

int cmd_riesz(const ExperimentConfig& c, std::ostream& log) {
  validate_grid(c);
  const SampledFunction g = generator(c);
  const ZakGrid Zg = zak_transform(g, c.nx, c.nw);
  const RieszReport r = riesz_bounds(Zg, c.lattice);
  json body{{"generator", c.generator},
            {"lattice", {{"P", c.lattice.P}, {"Q", c.lattice.Q}}},
            {"riesz", to_report(r, true)},
            {"shift_identity_residual", shift_identity_residual(Zg, c.lattice)}};
  if (c.gram_trunc > 0) {
    const auto [lo, hi] = gram_riesz_oracle(g, c.lattice, c.gram_trunc);
    body["gram_oracle"] = {{"trunc", c.gram_trunc}, {"lambda_min", lo}, {"lambda_max", hi}};
  }
  OutputDir(c.out, c.hash()).write_json("riesz.json", "riesz", body);
  log << "riesz: A_est = " << r.a_est << ", B_est = " << r.b_est << "\n";
  return 0;
}

int cmd_invariance(const ExperimentConfig& c, std::ostream& log) {
  validate_grid(c);
  const SampledFunction g = generator(c);
  const InvarianceReport rep = invariance_solve(g, c.lattice, c.u, c.eta, c.nx, c.nw, c.tol, c.max_order);
  json body{{"generator", c.generator},
            {"lattice", {{"P", c.lattice.P}, {"Q", c.lattice.Q}}},
            {"shift", rational_pair(c.u, c.eta)},
            {"invariance", to_report(rep)}};
  if (rep.verdict == InvarianceReport::Verdict::Invariant) {
    const SampledFunction target = tf_shift(g, {c.u.to_double(), c.eta.to_double()});
    body["resynthesis_error"] = distance(resynthesize(rep.coeffs, c.lattice, g), target);
    const ZakGrid Zg = zak_transform(g, c.nx, c.nw);
    body["fertig_residual"] = fertig_residual(Zg, c.lattice, c.u, c.eta, rep.F);
    const auto conj = conjugation_residual(rep.F, c.lattice, c.eta);
    body["conjugation_residual"] = {{"corrected", conj.corrected}, {"literal", conj.literal}};
  }
  OutputDir(c.out, c.hash()).write_json("invariance.json", "invariance", body);
  log << "invariance: " << rep.verdict_name() << " (residual " << rep.max_residual << ")\n";
  return 0;
}

int cmd_vmo(const ExperimentConfig& c, std::ostream& log) {
  const OscillationReport rep = vmo_decay_profile(zak_field(c), c.vmo_window, eps_values(c));
  const OutputDir out(c.out, c.hash());
  out.write_csv("vmo_profile.csv", [&](std::ostream& s) { write_profile_csv(s, rep); });
  out.write_json("vmo.json", "vmo",
                 {{"generator", c.generator},
                  {"window", {c.vmo_window.x0, c.vmo_window.x1, c.vmo_window.w0, c.vmo_window.w1}},
                  {"vmo", to_report(rep)}});
  log << "vmo: " << rep.verdict_name() << "\n";
  return 0;
}

int cmd_metaplectic(const ExperimentConfig& c, std::ostream& log) {
  validate_grid(c);
  const SampledFunction g = generator(c);
  const MetaplecticChain chain = MetaplecticChain::from_matrix(c.metaplectic);
  const bool exact = product(chain.steps) == c.metaplectic;

  std::mt19937_64 rng(c.seed);
  json cov = json::array();
  double worst = 0;
  for (const auto& lam : random_lambdas(rng, 8, c.S)) {
    const double r = covariance_residual(chain, lam, g);
    worst = std::max(worst, r);
    cov.push_back({{"lambda", rational_pair(lam.first, lam.second)}, {"residual", r}});
  }
  const ZakFormulaReport zf = check_zak_formulas(g, c.alpha, c.chirp_m, std::min(c.nx, c.S), c.support);
  const SampledFunction Ug = apply_metaplectic(chain, g);

  const OutputDir out(c.out, c.hash());
  out.write_csv("metaplectic.csv", [&](std::ostream& s) {
    s << "x,re,im\n" << std::setprecision(17);
    for (std::int64_t j = Ug.first_index(); j < Ug.end_index(); ++j)
      s << Ug.x_of(j) << ',' << Ug.at(j).real() << ',' << Ug.at(j).imag() << '\n';
  });
  out.write_json("metaplectic.json", "metaplectic",
                 {{"matrix", c.metaplectic.str()},
                  {"factorization", to_report(chain.steps)},
                  {"product_exact", exact},
                  {"covariance", cov},
                  {"covariance_max", worst},
                  {"zak_formulas", to_report(zf)},
                  {"alpha", c.alpha.str()},
                  {"chirp_m", c.chirp_m}});
  log << "metaplectic: " << chain.steps.size() << " steps, covariance max " << worst << "\n";
  return exact ? 0 : 1;
}

int cmd_uncertainty(const ExperimentConfig& c, std::ostream& log) {
  validate_grid(c);
  const SampledFunction g = generator(c);
  const UncertaintyProduct up = uncertainty_product(g, c.p, c.q, c.center_x, c.center_w, c.radii, c.dual);
  const GagliardoReport gag = gagliardo_seminorm(c.recipe, c.support, c.s, c.radii);
  const DivergenceSweep fei = feichtinger_norm_estimate(g, StftGrid{}, c.radii);

  const OutputDir out(c.out, c.hash());
  auto sweep = [&](const std::string& name, const DivergenceSweep& s) {
    out.write_csv(name, [&](std::ostream& o) { write_sweep_csv(o, s); });
  };
  sweep("time_moment.csv", up.time);
  sweep("frequency_moment.csv", up.frequency);
  sweep("gagliardo_radius.csv", gag.radius_sweep);
  sweep("gagliardo_band.csv", gag.band_sweep);
  sweep("feichtinger.csv", fei);
  out.write_json("uncertainty.json", "uncertainty",
                 {{"generator", c.generator},
                  {"p", c.p},
                  {"q", c.q},
                  {"uncertainty_product", to_report(up)},
                  {"gagliardo", to_report(gag)},
                  {"gagliardo_s", c.s},
                  {"feichtinger", to_report(fei)}});
  log << "uncertainty: product " << (up.convergent ? "convergent" : "divergent") << ", Gagliardo "
      << (gag.convergent ? "convergent" : "divergent") << ", Feichtinger " << fei.verdict_name() << "\n";
  return 0;
}

const std::vector<std::string>& proptest_suites() {
  static const std::vector<std::string> names = {"vmo-inequalities", "sl2-factorize", "zak-shift",
                                                 "metaplectic-covariance"};
  return names;
}

int cmd_proptest(const ExperimentConfig& c, std::ostream& log) {
  const auto& names = proptest_suites();
  if (std::find(names.begin(), names.end(), c.suite) == names.end())
    throw ValidationError("unknown proptest suite '" + c.suite + "'");
  std::mt19937_64 rng(c.seed);
  json body{{"suite", c.suite}, {"seed", c.seed}, {"cases", c.cases}};
  bool failed = false;

  if (c.suite == "vmo-inequalities") {
    InequalityOptions opt;
    opt.cases = c.cases;
    opt.seed = c.seed;
    const auto res = run_inequality_suite(opt);
    for (const auto& r : res) failed |= !r.holds(1e-3);
    body["results"] = to_report(res);
  } else if (c.suite == "sl2-factorize") {
    int mismatches = 0, reduce_failures = 0;
    BigInt max_den = 1;
    for (int i = 0; i < c.cases; ++i) {
      const RationalMatrix2 S = random_sl2(rng, 40);
      const auto steps = sl2_factorize(S);
      if (product(steps) != S) ++mismatches;
      for (const auto& s : steps) max_den = std::max(max_den, s.parameter.den());
      const RationalMatrix2 A = random_gl2(rng, 40);
      const LatticeReduction red = lattice_reduce(A);
      const bool ok = red.B.det() == Rational(1) && red.B * red.normalized == RationalMatrix2::diag(Rational(1, red.Q), Rational(red.P)) &&
                      Rational(red.P, red.Q) == A.det().abs();
      if (!ok) ++reduce_failures;
    }
    failed = mismatches > 0 || reduce_failures > 0;
    body["factorization_mismatches"] = mismatches;
    body["reduction_failures"] = reduce_failures;
    body["max_denominator"] = max_den.str();
    log << "sl2-factorize: max denominator " << max_den << "\n";
  } else if (c.suite == "zak-shift") {
    const int n = 32;
    const SampledFunction g = sample_function(recipe::Gaussian{}, {-8, 8}, n);
    const ZakGrid Zg = zak_transform(g, n, n);
    std::uniform_int_distribution<long long> d(-2 * n, 2 * n);
    double worst = 0;
    for (int i = 0; i < c.cases; ++i) {
      const long long a = d(rng), b = d(rng);
      const ZakGrid Zs = zak_transform(tf_shift(g, {static_cast<double>(a) / n, static_cast<double>(b) / n}), n, n);
      for (int jx = 0; jx < n; ++jx)
        for (int jw = 0; jw < n; ++jw)
          worst = std::max(worst, std::abs(Zs.at(jx, jw) - unit_root(b * jx, n * n) * Zg.at(jx - a, jw - b)));
    }
    failed = worst > 1e-8;
    body["max_deviation"] = worst;
  } else {
    const SampledFunction g = sample_function(recipe::Gaussian{}, {-8, 8}, 32);
    const std::vector<GeneratorStep> pool = {GeneratorStep::j(),
                                             GeneratorStep::dilation(Rational(2)),
                                             GeneratorStep::dilation(Rational(-1, 2)),
                                             GeneratorStep::dilation(Rational(1, 2)),
                                             GeneratorStep::chirp(Rational(1)),
                                             GeneratorStep::chirp(Rational(-2)),
                                             GeneratorStep::chirp(Rational(1, 2))};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    double worst = 0;
    for (int i = 0; i < c.cases; ++i) {
      const GeneratorStep& s = pool[pick(rng)];
      const MetaplecticChain chain{s.matrix(), {s}};
      worst = std::max(worst, covariance_residual(chain, random_lambdas(rng, 1, 32).front(), g));
    }
    failed = worst > 1e-5;
    body["max_residual"] = worst;
  }
  body["pass"] = !failed;
  OutputDir(c.out, c.hash()).write_json("proptest.json", "proptest", body);
  return fail_if(failed, log, "proptest " + c.suite);
}

AnalyzeSummary run_analyze(const ExperimentConfig& c, std::ostream& log) {
  validate_grid(c);
  AnalyzeSummary sum;
  SampledFunction g = generator(c);
  SeparableLattice lat = c.lattice;
  Rational u = c.u, eta = c.eta;
  json reduction = nullptr;
  bool transformed = false;
  if (c.lattice_matrix) {
    const LatticeReduction red = lattice_reduce(*c.lattice_matrix);
    lat = {red.P, red.Q};
    reduction = to_report(red);
    log << "reduction: B = " << red.B.str() << ", P = " << red.P << ", Q = " << red.Q << "\n";
    if (red.B != RationalMatrix2::identity()) {
      const MetaplecticChain chain = MetaplecticChain::from_matrix(red.B);
      reduction["steps"] = to_report(chain.steps);
      g = apply_metaplectic(chain, g);
      std::tie(u, eta) = red.B.apply(u, eta);
      transformed = true;
    }
  }
  const int nx = std::min(c.nx, g.samples_per_unit());
  const int nw = std::max(c.nw, static_cast<int>(g.support().length()));
  if (g.samples_per_unit() % nx != 0) throw ValidationError("transformed grid is incompatible with nx");
  lat.validate();
  if (!lat.coprime()) throw ValidationError("P and Q must be coprime");

  const ZakGrid Zg = zak_transform(g, nx, nw);
  const RieszReport rz = riesz_bounds(Zg, lat);
  sum.riesz = rz.a_est > 1e-9;
  json riesz{{"lattice", {{"P", lat.P}, {"Q", lat.Q}}}, {"riesz", to_report(rz, true)}, {"riesz_sequence", sum.riesz}};
  if (c.gram_trunc > 0) {
    const auto [lo, hi] = gram_riesz_oracle(g, lat, c.gram_trunc);
    riesz["gram_oracle"] = {{"trunc", c.gram_trunc}, {"lambda_min", lo}, {"lambda_max", hi}};
  }

  json inv{{"shift", rational_pair(u, eta)}};
  if (sum.riesz) {
    const InvarianceReport rep = invariance_solve(g, lat, u, eta, nx, nw, c.tol, c.max_order);
    sum.invariance = rep.verdict_name();
    inv["invariance"] = to_report(rep);
  } else {
    inv["invariance"] = {{"verdict", "skipped"}, {"note", "A_est = 0: not a Riesz sequence"}};
  }

  const ScalarField2D F =
      !transformed && !std::holds_alternative<recipe::Table>(c.recipe) ? zak_field(c) : ScalarField2D::from_zak(Zg);
  const OscillationReport prof = vmo_decay_profile(F, c.vmo_window, eps_values(c));
  sum.vmo = prof.verdict_name();

  std::string reading;
  if (sum.riesz && sum.invariance == "invariant")
    reading = prof.verdict == OscillationReport::Verdict::VmoFailWitness
                  ? "Riesz sequence with extra invariance; Zg is not in VMO_loc, witnessed by a cube family"
                  : "Riesz sequence with extra invariance, but no oscillation witness at these scales";
  else if (sum.riesz)
    reading = "Riesz sequence without extra invariance; no obstruction applies";
  else
    reading = "not a Riesz sequence; no obstruction applies";

  sum.body = {{"generator", c.generator},
              {"reduction", reduction},
              {"riesz", sum.riesz},
              {"extra_invariance", sum.invariance},
              {"vmo_profile", sum.vmo},
              {"interpretation", reading}};

  const OutputDir out(c.out, c.hash());
  out.write_json("riesz.json", "analyze", riesz);
  out.write_json("invariance.json", "analyze", inv);
  out.write_csv("vmo_profile.csv", [&](std::ostream& s) { write_profile_csv(s, prof); });
  out.write_json("summary.json", "analyze", sum.body);
  log << "analyze: Riesz " << (sum.riesz ? "yes" : "no") << ", invariance " << sum.invariance << ", VMO profile "
      << sum.vmo << "\n"
      << reading << "\n";
  return sum;
}

int cmd_analyze(const ExperimentConfig& c, std::ostream& log) {
  run_analyze(c, log);
  return 0;
}

int cmd_demo(const ExperimentConfig& c, std::ostream& log) {
  // the two canonical pipelines, each in its own subdirectory
  json box = c.raw, gauss = c.raw;
  box.update(json{{"generator", "box(0,1)"}, {"P", 1}, {"Q", 1}, {"u", "1/2"}, {"eta", "0"},
                  {"out", (c.out / "box").string()}});
  gauss.update(json{{"generator", "gaussian"}, {"P", 2}, {"Q", 1}, {"u", "1/2"}, {"eta", "0"},
                    {"out", (c.out / "gaussian").string()}});
  box.erase("lattice");
  gauss.erase("lattice");
  log << "[box(0,1) on Z x Z, shift (1/2, 0)]\n";
  run_analyze(load_config(box), log);
  log << "[gaussian on Z x 2Z, shift (1/2, 0)]\n";
  run_analyze(load_config(gauss), log);
  return 0;
}

}  // namespace gz::cli
