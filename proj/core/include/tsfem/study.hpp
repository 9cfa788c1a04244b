#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsfem/errors.hpp"
#include "tsfem/solver.hpp"

namespace tsfem {

/// Parameters of one convergence study.
struct RunConfig {
  SurfaceKind surface = SurfaceKind::Ellipsoid;
  int rank = 1;
  int kg = 2;
  int ku = 2;
  std::optional<int> kp;  ///< defaults to k_g
  double alpha = 0.5;
  std::vector<double> betas;  ///< empty: 1e4 for alpha >= 0.5, else 10
  int level_min = 1;
  int level_max = 4;
  std::optional<PenaltyNormalMode> mode;  ///< defaults to Discrete if k_p == k_g, else Interpolated
  SolverMethod solver = SolverMethod::ConjugateGradient;
  std::filesystem::path out;          ///< CSV output, empty for none
  std::filesystem::path matrix_dump;  ///< MatrixMarket prefix, empty for none
  std::filesystem::path coeffs_out;   ///< coefficient prefix, empty for none

  /// Throws ConfigError for out-of-range values and for surface/rank
  /// combinations without a manufactured solution.
  void validate() const;

  int effective_kp() const { return kp.value_or(kg); }
  PenaltyNormalMode effective_mode() const;
  std::vector<double> effective_betas() const;
  LevelSetSurface make_surface() const;
  PenaltyConfig penalty(double beta) const;
};

const char* surface_name(SurfaceKind s);
SurfaceKind parse_surface(const std::string& s);
const char* mode_name(PenaltyNormalMode m);
PenaltyNormalMode parse_mode(const std::string& s);
/// "A..B" or a single level "A".
std::pair<int, int> parse_levels(const std::string& s);

/// Sets one key of a config from its textual value. Keys: surface, rank,
/// kg, ku, kp, alpha, beta (comma separated list), levels, penalty_normal,
/// solver, out, matrix_dump, coeffs_out.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

/// Reads "key = value" lines; '#' starts a comment. Throws IoError or
/// ParseError.
void load_config_file(RunConfig& config, const std::filesystem::path& path);

struct LevelRun {
  ErrorReport report;
  SolveStats stats;
  std::vector<double> coeffs;
};

/// Generates, curves, assembles, solves and measures one level.
LevelRun solve_once(const RunConfig& config, int level, double beta);

struct BetaRun {
  double beta = 0.0;
  std::vector<ErrorReport> reports;
  std::array<double, 5> orders{};  ///< fitted EOC per norm, kAllNorms order
};

struct EocTable {
  RunConfig config;
  std::vector<BetaRun> runs;
  std::array<double, 5> orders{};  ///< per-norm minimum over the betas
};

/// Runs the refinement sequence for every beta. Progress lines go to `log`
/// when non-null.
EocTable run_convergence(const RunConfig& config, std::ostream* log = nullptr);

/// CSV: parameter comments, one block per beta ("# beta = ..." followed by
/// the header and rows), then "# eoc: norm=order,..." with the reported orders.
void write_csv(std::ostream& os, const EocTable& table);
/// Human-readable table.
void write_table(std::ostream& os, const EocTable& table);

/// Coefficients as CSV: "# components=N dofs=M rank=n dim=d" then
/// "component,node,value" rows, component-major.
void write_coefficients_csv(std::ostream& os, const TensorFESpace& space, std::span<const double> coeffs);
/// Flat binary: int32 components, int32 node count, then doubles component-major.
void write_coefficients_binary(const std::filesystem::path& path, const TensorFESpace& space,
                               std::span<const double> coeffs);

}  // namespace tsfem
