#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace gz::cli {

namespace {

const std::set<std::string> kKeys = {
    "generator", "support", "S",        "nx",        "nw",   "P",      "Q",       "lattice",  "u",
    "eta",       "tol",     "max_order", "gram_trunc", "eps", "vmo_window", "vmo_pitch", "metaplectic", "alpha",
    "chirp_m",   "p",       "q",        "center_x",  "center_w", "s", "radii",   "dual",     "suite",
    "cases",     "seed",    "out"};

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ValidationError("config key '" + key + "': " + what);
}

Rational rational_at(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const ValidationError& e) {
      bad(key, e.what());
    }
  }
  bad(key, "expected a \"p/q\" string or an integer");
}

long long int_at(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) bad(key, "expected an integer");
  return v.get<long long>();
}

double real_at(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (v.is_string()) return rational_at(j, key).to_double();
  if (!v.is_number()) bad(key, "expected a number");
  return v.get<double>();
}

Interval default_support(const Recipe& r) {
  if (const auto* b = std::get_if<recipe::Box>(&r))
    return {static_cast<std::int64_t>(std::floor(b->a)), static_cast<std::int64_t>(std::ceil(b->b))};
  if (std::holds_alternative<recipe::BoxSine>(r)) return {0, 1};
  return {-8, 8};
}

}  // namespace

std::string ExperimentConfig::hash() const {
  // the output directory says where results go, not what they are
  json keyed = raw;
  keyed.erase("out");
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : keyed.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig load_config(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!kKeys.count(k)) throw ValidationError("unknown config key '" + k + "'");

  ExperimentConfig c;
  c.raw = j;
  if (j.contains("generator")) {
    if (!j["generator"].is_string()) bad("generator", "expected a recipe name");
    c.generator = j["generator"].get<std::string>();
  }
  c.recipe = parse_recipe(c.generator);
  c.support = default_support(c.recipe);
  if (j.contains("support")) {
    const json& s = j["support"];
    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer() ||
        s[0].get<long long>() >= s[1].get<long long>())
      bad("support", "expected [lo, hi] with integers lo < hi");
    c.support = {s[0].get<std::int64_t>(), s[1].get<std::int64_t>()};
  }
  if (j.contains("S")) c.S = static_cast<int>(int_at(j, "S"));
  if (j.contains("nx")) c.nx = static_cast<int>(int_at(j, "nx"));
  if (j.contains("nw")) c.nw = static_cast<int>(int_at(j, "nw"));

  if (j.contains("lattice") && (j.contains("P") || j.contains("Q")))
    throw ValidationError("config: give either 'lattice' or 'P'/'Q', not both");
  if (j.contains("P")) c.lattice.P = int_at(j, "P");
  if (j.contains("Q")) c.lattice.Q = int_at(j, "Q");
  if (c.lattice.P < 1 || c.lattice.Q < 1) bad("P/Q", "must be positive");
  if (!c.lattice.coprime()) bad("P/Q", "must be coprime");
  if (j.contains("lattice")) {
    if (!j["lattice"].is_string()) bad("lattice", "expected \"a,b,c,d\"");
    c.lattice_matrix = RationalMatrix2::parse(j["lattice"].get<std::string>());
    if (c.lattice_matrix->det() == Rational(0)) bad("lattice", "singular matrix");
  }
  if (j.contains("u")) c.u = rational_at(j, "u");
  if (j.contains("eta")) c.eta = rational_at(j, "eta");

  if (j.contains("tol")) c.tol = real_at(j, "tol");
  if (!(c.tol > 0)) bad("tol", "must be positive");
  if (j.contains("max_order")) c.max_order = static_cast<int>(int_at(j, "max_order"));
  if (j.contains("gram_trunc")) c.gram_trunc = static_cast<int>(int_at(j, "gram_trunc"));
  if (c.max_order < 0 || c.gram_trunc < 0) bad("max_order/gram_trunc", "must be >= 0");

  if (j.contains("eps")) {
    if (!j["eps"].is_array() || j["eps"].empty()) bad("eps", "expected a nonempty array");
    c.eps.clear();
    for (std::size_t i = 0; i < j["eps"].size(); ++i) {
      const json one = {{"eps", j["eps"][i]}};
      const Rational e = rational_at(one, "eps");
      if (!(e > Rational(0))) bad("eps", "entries must be positive");
      c.eps.push_back(e);
    }
  }
  if (j.contains("vmo_window")) {
    const json& w = j["vmo_window"];
    if (!w.is_array() || w.size() != 4) bad("vmo_window", "expected [x0, x1, w0, w1]");
    for (const auto& x : w)
      if (!x.is_number()) bad("vmo_window", "entries must be numbers");
    c.vmo_window = {w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>()};
    if (!(c.vmo_window.x1 > c.vmo_window.x0 && c.vmo_window.w1 > c.vmo_window.w0)) bad("vmo_window", "empty window");
  }
  if (j.contains("vmo_pitch")) c.vmo_pitch = static_cast<int>(int_at(j, "vmo_pitch"));
  if (c.vmo_pitch < 1 || !is_power_of_two(c.vmo_pitch)) bad("vmo_pitch", "cells per unit must be a power of two");

  if (j.contains("metaplectic")) {
    if (!j["metaplectic"].is_string()) bad("metaplectic", "expected \"a,b,c,d\"");
    c.metaplectic = RationalMatrix2::parse(j["metaplectic"].get<std::string>());
    if (!c.metaplectic.is_sl()) bad("metaplectic", "determinant must be 1");
  }
  if (j.contains("alpha")) c.alpha = rational_at(j, "alpha");
  if (c.alpha == Rational(0)) bad("alpha", "must be nonzero");
  if (j.contains("chirp_m")) c.chirp_m = int_at(j, "chirp_m");

  if (j.contains("p")) c.p = real_at(j, "p");
  if (j.contains("q")) c.q = real_at(j, "q");
  if (j.contains("center_x")) c.center_x = real_at(j, "center_x");
  if (j.contains("center_w")) c.center_w = real_at(j, "center_w");
  if (j.contains("s")) c.s = real_at(j, "s");
  if (j.contains("dual")) {
    if (!j["dual"].is_boolean()) bad("dual", "expected true/false");
    c.dual = j["dual"].get<bool>();
  }
  if (j.contains("radii")) {
    if (!j["radii"].is_array() || j["radii"].empty()) bad("radii", "expected a nonempty array");
    c.radii.clear();
    for (const auto& r : j["radii"]) {
      if (!r.is_number() || !(r.get<double>() > 0)) bad("radii", "entries must be positive numbers");
      c.radii.push_back(r.get<double>());
    }
  }

  if (j.contains("suite")) {
    if (!j["suite"].is_string()) bad("suite", "expected a suite name");
    c.suite = j["suite"].get<std::string>();
  }
  if (j.contains("cases")) c.cases = static_cast<int>(int_at(j, "cases"));
  if (c.cases < 1) bad("cases", "must be >= 1");
  if (j.contains("seed")) {
    const long long s = int_at(j, "seed");
    if (s < 0) bad("seed", "must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) bad("out", "expected a directory path");
    c.out = j["out"].get<std::string>();
  }
  return c;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return load_config(j);
}

void validate_grid(const ExperimentConfig& c) {
  if (c.S < 2 || !is_power_of_two(c.S)) throw ValidationError("S must be a power of two >= 2");
  if (c.nx < 1 || c.S % c.nx != 0)
    throw ValidationError("nx = " + std::to_string(c.nx) + " must divide S = " + std::to_string(c.S));
  if (c.nw < c.support.length())
    throw ValidationError("nw = " + std::to_string(c.nw) + " must be at least the support length " +
                          std::to_string(c.support.length()));
  auto on_grid = [](const Rational& r, int n, const char* what) {
    const Rational t = r * Rational(n);
    if (!t.is_integer())
      throw ValidationError(std::string(what) + " = " + r.str() + " is not on the 1/" + std::to_string(n) + " grid");
  };
  on_grid(c.u, c.nx, "u");
  on_grid(c.eta, c.nw, "eta");
}

}  // namespace gz::cli
