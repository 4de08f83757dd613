#include "gaborzak/report.hpp"

namespace gz {

json to_report(const ZakIdentityReport& r) {
  return {{"quasi_periodicity", r.quasi_periodicity},
          {"shift", r.shift},
          {"integer_shift", r.integer_shift},
          {"fourier", r.fourier}};
}

json to_report(const RieszReport& r, bool with_profile) {
  json j{{"A_est", r.a_est},
         {"B_est", r.b_est},
         {"argmin", {{"x", static_cast<double>(r.argmin.first) / r.nx}, {"omega", static_cast<double>(r.argmin.second) / r.nw}}},
         {"argmax", {{"x", static_cast<double>(r.argmax.first) / r.nx}, {"omega", static_cast<double>(r.argmax.second) / r.nw}}},
         {"zak_sup", r.zak_sup},
         {"nx", r.nx},
         {"nw", r.nw}};
  if (with_profile) {
    j["profile_min"] = r.profile_min;
    j["profile_max"] = r.profile_max;
  }
  return j;
}

std::string coefficient_key(long long m, long long n) { return std::to_string(m) + "," + std::to_string(n); }

json to_report(const InvarianceReport& r) {
  json coeffs = json::object();
  for (const auto& [mn, c] : r.coeffs) coeffs[coefficient_key(mn.first, mn.second)] = {c.real(), c.imag()};
  return {{"verdict", r.verdict_name()},
          {"max_residual", r.max_residual},
          {"periodicity_deviation", r.periodicity_deviation},
          {"tolerance", r.tol},
          {"coefficients", coeffs},
          {"parseval", {{"coefficients", r.parseval_coeffs}, {"field", r.parseval_field}}},
          {"note", "finite-resolution proxy for closed-span membership"}};
}

json to_report(const Cube& q) { return {{"x", q.x}, {"omega", q.w}, {"side", q.side}}; }

json to_report(const OscillationReport& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.eps.size(); ++i)
    rows.push_back({{"epsilon", r.eps[i]}, {"S", r.S[i]}, {"witness", to_report(r.witnesses[i])}});
  json j{{"verdict", r.verdict_name()}, {"floor", r.floor}, {"profile", rows}};
  if (r.verdict == OscillationReport::Verdict::VmoFailWitness && !r.witnesses.empty()) {
    j["witness"] = to_report(r.witnesses.back());
    j["witness_oscillation"] = r.witness_oscillation.back();
  }
  return j;
}

json to_report(const std::vector<InequalityResult>& r) {
  json a = json::array();
  for (const auto& x : r)
    a.push_back({{"name", x.name}, {"cases", x.cases}, {"skipped", x.skipped}, {"max_ratio", x.max_ratio}, {"note", x.note}});
  return a;
}

json to_report(const DivergenceSweep& s) {
  return {{"radii", s.radii},     {"partial", s.partial}, {"verdict", s.verdict_name()},
          {"value", s.value},     {"growth", s.growth},   {"rate", s.rate}};
}

json to_report(const UncertaintyProduct& u) {
  return {{"time", to_report(u.time)},
          {"frequency", to_report(u.frequency)},
          {"verdict", u.convergent ? "convergent" : "divergent"},
          {"product", u.value}};
}

json to_report(const GagliardoReport& g) {
  return {{"radius_sweep", to_report(g.radius_sweep)},
          {"band_sweep", to_report(g.band_sweep)},
          {"verdict", g.convergent ? "convergent" : "divergent"}};
}

json to_report(const LatticeReduction& l) {
  return {{"B", l.B.str()},
          {"P", l.P},
          {"Q", l.Q},
          {"column_flipped", l.column_flipped},
          {"normalized", l.normalized.str()},
          {"det_B", l.B.det().str()}};
}

json to_report(const std::vector<GeneratorStep>& steps) {
  json a = json::array();
  for (const auto& s : steps) {
    json j{{"kind", s.kind_name()}};
    if (s.kind != GeneratorStep::Kind::J) j["parameter"] = s.parameter.str();
    a.push_back(j);
  }
  return a;
}

json to_report(const ZakFormulaReport& z) {
  return {{"fourier", z.fourier}, {"dilation", z.dilation}, {"chirp", z.chirp}};
}

}  // namespace gz
