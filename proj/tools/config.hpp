#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gaborzak/core.hpp"
#include "gaborzak/field.hpp"
#include "gaborzak/gabor.hpp"
#include "gaborzak/report.hpp"
#include "gaborzak/symplectic.hpp"

namespace gz::cli {

/// Everything a subcommand may read. Loaded from flat JSON; rationals are
/// "p/q" strings. Unknown keys are rejected.
struct ExperimentConfig {
  std::string generator = "gaussian";
  Recipe recipe = recipe::Gaussian{};
  Interval support{-8, 8};
  int S = 64, nx = 64, nw = 64;

  SeparableLattice lattice{1, 1};
  std::optional<RationalMatrix2> lattice_matrix;  ///< non-separable input, reduced first
  Rational u{0}, eta{0};

  double tol = 1e-6;
  int max_order = 16;
  int gram_trunc = 0;  ///< 0 skips the Gram oracle

  std::vector<Rational> eps{Rational(1, 16), Rational(1, 64), Rational(1, 256)};
  Rect vmo_window{0, 2, 0, 1};
  int vmo_pitch = 32;  ///< cells per unit of the analytic field

  RationalMatrix2 metaplectic = RationalMatrix2::identity();
  Rational alpha{3, 2};
  long long chirp_m = 1;

  double p = 2, q = 2, center_x = 0, center_w = 0, s = 0.5;
  std::vector<double> radii{1, 2, 4, 8};
  bool dual = true;

  std::string suite = "vmo-inequalities";
  int cases = 1000;
  std::uint64_t seed = 1;

  std::filesystem::path out = "out";

  json raw;  ///< effective config (file + flag overrides), used for the hash

  /// FNV-1a over the canonical dump of `raw` without "out", 16 hex digits.
  std::string hash() const;
};

/// Parses and validates; every error is a ValidationError naming the key.
ExperimentConfig load_config(const json& j);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Grid checks shared by all commands: S a power of two, nx | S, nw >= support cells,
/// and u, eta on the nx / nw grids.
void validate_grid(const ExperimentConfig& c);

}  // namespace gz::cli
