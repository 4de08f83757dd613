#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "gaborzak/gabor.hpp"
#include "gaborzak/metaplectic.hpp"
#include "gaborzak/symplectic.hpp"
#include "gaborzak/uncertainty.hpp"
#include "gaborzak/vmo.hpp"
#include "gaborzak/zak.hpp"

namespace gz {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_report(const ZakIdentityReport& r);
json to_report(const RieszReport& r, bool with_profile = false);
json to_report(const InvarianceReport& r);
json to_report(const OscillationReport& r);
json to_report(const std::vector<InequalityResult>& r);
json to_report(const DivergenceSweep& s);
json to_report(const UncertaintyProduct& u);
json to_report(const GagliardoReport& g);
json to_report(const LatticeReduction& l);
json to_report(const std::vector<GeneratorStep>& steps);
json to_report(const ZakFormulaReport& z);
json to_report(const Cube& q);

/// Coefficient key "m,n".
std::string coefficient_key(long long m, long long n);

}  // namespace gz
