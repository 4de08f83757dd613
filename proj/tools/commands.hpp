#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "config.hpp"
#include "gaborzak/vmo.hpp"

namespace gz::cli {

/// Files go to `<dir>/<name>.tmp` and are renamed into place.
class OutputDir {
 public:
  OutputDir(std::filesystem::path dir, std::string config_hash);
  void write_json(const std::string& name, const std::string& command, json body) const;
  /// The CSV body is preceded by "# config_hash=<hash>".
  void write_csv(const std::string& name, const std::function<void(std::ostream&)>& body) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  void commit(const std::string& name, const std::string& text) const;
  std::filesystem::path dir_;
  std::string hash_;
};

struct AnalyzeSummary {
  bool riesz = false;
  std::string invariance = "skipped";
  std::string vmo = "inconclusive";
  json body;
};

// Each returns the process exit code (0 ok, 1 property failure); config and
// numerical problems surface as ValidationError / NumericalError.
int cmd_zak(const ExperimentConfig& c, std::ostream& log);
int cmd_riesz(const ExperimentConfig& c, std::ostream& log);
int cmd_invariance(const ExperimentConfig& c, std::ostream& log);
int cmd_vmo(const ExperimentConfig& c, std::ostream& log);
int cmd_metaplectic(const ExperimentConfig& c, std::ostream& log);
int cmd_uncertainty(const ExperimentConfig& c, std::ostream& log);
int cmd_proptest(const ExperimentConfig& c, std::ostream& log);
int cmd_analyze(const ExperimentConfig& c, std::ostream& log);
int cmd_demo(const ExperimentConfig& c, std::ostream& log);

AnalyzeSummary run_analyze(const ExperimentConfig& c, std::ostream& log);

/// Names accepted by cmd_proptest.
const std::vector<std::string>& proptest_suites();

}  // namespace gz::cli
