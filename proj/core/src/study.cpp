#include "tsfem/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "tsfem/error.hpp"

namespace tsfem {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  int r = 0;
  try {
    r = std::stoi(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(key + ": not an integer: '" + v + "'");
  return r;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double r = 0.0;
  try {
    r = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError(key + ": not a number: '" + v + "'");
  return r;
}

std::string format_beta(double beta) {
  std::ostringstream s;
  s << beta;
  return s.str();
}

}  // namespace

const char* surface_name(SurfaceKind s) {
  switch (s) {
    case SurfaceKind::Ellipse: return "ellipse";
    case SurfaceKind::Ellipsoid: return "ellipsoid";
    case SurfaceKind::Sphere: return "sphere";
  }
  return "";
}

SurfaceKind parse_surface(const std::string& s) {
  if (s == "ellipse") return SurfaceKind::Ellipse;
  if (s == "ellipsoid") return SurfaceKind::Ellipsoid;
  if (s == "sphere") return SurfaceKind::Sphere;
  throw ConfigError("unknown surface '" + s + "'");
}

const char* mode_name(PenaltyNormalMode m) {
  switch (m) {
    case PenaltyNormalMode::Discrete: return "discrete";
    case PenaltyNormalMode::Interpolated: return "interp";
    case PenaltyNormalMode::Exact: return "exact";
  }
  return "";
}

PenaltyNormalMode parse_mode(const std::string& s) {
  if (s == "discrete") return PenaltyNormalMode::Discrete;
  if (s == "interp" || s == "interpolated") return PenaltyNormalMode::Interpolated;
  if (s == "exact") return PenaltyNormalMode::Exact;
  throw ConfigError("unknown penalty normal '" + s + "'");
}

std::pair<int, int> parse_levels(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int l = to_int("levels", trim(s));
    return {l, l};
  }
  return {to_int("levels", trim(s.substr(0, dots))), to_int("levels", trim(s.substr(dots + 2)))};
}

void RunConfig::validate() const {
  const bool known_case = (surface == SurfaceKind::Ellipse && (rank == 1 || rank == 2)) ||
                          (surface == SurfaceKind::Ellipsoid && rank == 1) ||
                          (surface == SurfaceKind::Sphere && rank == 2);
  if (!known_case) {
    throw ConfigError(std::string("no manufactured solution for rank ") + std::to_string(rank) + " on the " +
                      surface_name(surface));
  }
  if (kg < 1 || kg > 6) throw ConfigError("k_g must lie in 1..6");
  if (ku < 1 || ku > 4) throw ConfigError("k_u must lie in 1..4");
  if (effective_kp() < 1) throw ConfigError("k_p must be >= 1");
  const PenaltyNormalMode m = effective_mode();
  if (m == PenaltyNormalMode::Discrete && effective_kp() != kg) throw ConfigError("discrete penalty normal needs k_p = k_g");
  if (m == PenaltyNormalMode::Interpolated && effective_kp() < kg) throw ConfigError("interpolated penalty normal needs k_p >= k_g");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  for (double b : betas) {
    if (!(b > 0.0)) throw ConfigError("beta must be positive");
  }
  if (level_min < 0 || level_max < level_min) throw ConfigError("levels must satisfy 0 <= A <= B");
  if (level_max > 10) throw ConfigError("levels above 10 are not supported");
}

PenaltyNormalMode RunConfig::effective_mode() const {
  if (mode) return *mode;
  return effective_kp() == kg ? PenaltyNormalMode::Discrete : PenaltyNormalMode::Interpolated;
}

std::vector<double> RunConfig::effective_betas() const {
  if (!betas.empty()) return betas;
  return {alpha >= 0.5 ? 1e4 : 10.0};
}

LevelSetSurface RunConfig::make_surface() const {
  switch (surface) {
    case SurfaceKind::Ellipse: return LevelSetSurface::ellipse(0.75, 1.25);
    case SurfaceKind::Ellipsoid: return LevelSetSurface::ellipsoid(0.75, 1.25, 1.0);
    case SurfaceKind::Sphere: break;
  }
  return LevelSetSurface::sphere();
}

PenaltyConfig RunConfig::penalty(double beta) const {
  PenaltyConfig p;
  p.alpha = alpha;
  p.beta = beta;
  p.mode = effective_mode();
  p.kp = effective_kp();
  return p;
}

void apply_config_entry(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "surface") {
    c.surface = parse_surface(v);
  } else if (key == "rank") {
    c.rank = to_int(key, v);
  } else if (key == "kg") {
    c.kg = to_int(key, v);
  } else if (key == "ku") {
    c.ku = to_int(key, v);
  } else if (key == "kp") {
    c.kp = to_int(key, v);
  } else if (key == "alpha") {
    c.alpha = to_double(key, v);
  } else if (key == "beta") {
    c.betas.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) c.betas.push_back(to_double(key, trim(item)));
  } else if (key == "levels") {
    std::tie(c.level_min, c.level_max) = parse_levels(v);
  } else if (key == "penalty_normal" || key == "penalty-normal") {
    c.mode = parse_mode(v);
  } else if (key == "solver") {
    if (v == "cg") c.solver = SolverMethod::ConjugateGradient;
    else if (v == "dense") c.solver = SolverMethod::DenseCholesky;
    else throw ConfigError("unknown solver '" + v + "'");
  } else if (key == "out") {
    c.out = v;
  } else if (key == "matrix_dump") {
    c.matrix_dump = v;
  } else if (key == "coeffs_out") {
    c.coeffs_out = v;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", lineno);
    try {
      apply_config_entry(config, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
}

LevelRun solve_once(const RunConfig& config, int level, double beta) {
  config.validate();
  const LevelSetSurface surface = config.make_surface();
  const ManufacturedCase exact(surface, config.rank);
  const PenaltyConfig penalty = config.penalty(beta);

  const CurvedMesh cmesh(generate(surface, level), surface, config.kg);
  const ScalarLagrangeSpace scalar(cmesh, config.ku);
  const TensorFESpace space(scalar, config.rank);
  const SparseSystem sys =
      assemble(space, surface, penalty, [&exact](const Vec3& x) { return exact.rhs(x); });

  const std::string tag = "_L" + std::to_string(level) + "_b" + format_beta(beta);
  if (!config.matrix_dump.empty()) {
    write_matrix_market(sys.matrix, config.matrix_dump.string() + tag + ".mtx");
  }

  SolverConfig scfg;
  scfg.method = config.solver;
  LevelRun run;
  run.coeffs = solve(sys.matrix, sys.rhs, scfg, &run.stats);
  run.report = compute_errors(space, run.coeffs, exact, penalty);

  if (!config.coeffs_out.empty()) {
    const std::filesystem::path p = config.coeffs_out.string() + tag + ".csv";
    std::ofstream os(p);
    if (!os) throw IoError("cannot write " + p.string());
    write_coefficients_csv(os, space, run.coeffs);
  }
  return run;
}

EocTable run_convergence(const RunConfig& config, std::ostream* log) {
  config.validate();
  EocTable table;
  table.config = config;
  table.orders.fill(std::numeric_limits<double>::infinity());
  for (double beta : config.effective_betas()) {
    BetaRun br;
    br.beta = beta;
    for (int level = config.level_min; level <= config.level_max; ++level) {
      LevelRun r = solve_once(config, level, beta);
      if (log) {
        *log << "beta=" << beta << " level=" << level << " dofs=" << r.report.dofs << " cg_iter=" << r.stats.iterations
             << " l2_tan=" << r.report.l2_tan << std::endl;
      }
      br.reports.push_back(r.report);
    }
    for (std::size_t k = 0; k < std::size(kAllNorms); ++k) {
      br.orders[k] = br.reports.size() >= 2 ? eoc_fit(br.reports, kAllNorms[k]) : std::nan("");
      table.orders[k] = std::isnan(br.orders[k]) ? br.orders[k] : std::min(table.orders[k], br.orders[k]);
    }
    table.runs.push_back(std::move(br));
  }
  return table;
}

namespace {

void write_parameters(std::ostream& os, const RunConfig& c) {
  os << "# surface=" << surface_name(c.surface) << " rank=" << c.rank << " kg=" << c.kg << " ku=" << c.ku
     << " kp=" << c.effective_kp() << " alpha=" << c.alpha << " penalty_normal=" << mode_name(c.effective_mode())
     << " levels=" << c.level_min << ".." << c.level_max << '\n';
}

}  // namespace

void write_csv(std::ostream& os, const EocTable& t) {
  write_parameters(os, t.config);
  for (const auto& run : t.runs) {
    os << "# beta=" << run.beta << '\n';
    write_csv_header(os);
    for (const auto& r : run.reports) write_csv_row(os, r);
  }
  os << "# eoc:";
  const auto old = os.precision(4);
  for (std::size_t k = 0; k < std::size(kAllNorms); ++k) {
    os << (k ? "," : " ") << norm_name(kAllNorms[k]) << '=' << t.orders[k];
  }
  os.precision(old);
  os << '\n';
}

void write_table(std::ostream& os, const EocTable& t) {
  write_parameters(os, t.config);
  const auto flags = os.flags();
  const auto prec = os.precision();
  for (const auto& run : t.runs) {
    os << "beta = " << run.beta << '\n';
    os << std::setw(5) << "level" << std::setw(12) << "h" << std::setw(9) << "dofs";
    for (ErrorNorm n : kAllNorms) os << std::setw(13) << norm_name(n);
    os << '\n';
    for (const auto& r : run.reports) {
      os << std::setw(5) << r.level << std::setw(12) << std::setprecision(4) << std::scientific << r.h
         << std::setw(9) << r.dofs;
      for (ErrorNorm n : kAllNorms) os << std::setw(13) << norm_value(r, n);
      os << '\n';
      os.flags(flags);
    }
    os << std::setw(26) << "EOC";
    for (double p : run.orders) os << std::setw(13) << std::fixed << std::setprecision(2) << p;
    os << '\n';
    os.flags(flags);
  }
  os << std::setw(26) << "EOC (min over beta)";
  for (double p : t.orders) os << std::setw(13) << std::fixed << std::setprecision(2) << p;
  os << '\n';
  os.flags(flags);
  os.precision(prec);
}

void write_coefficients_csv(std::ostream& os, const TensorFESpace& space, std::span<const double> coeffs) {
  const std::size_t ndof = space.scalar().dof_count();
  os << "# components=" << space.components() << " dofs=" << ndof << " rank=" << space.rank()
     << " dim=" << space.dim() << '\n';
  os << "component,node,value\n";
  const auto old = os.precision(17);
  for (int c = 0; c < space.components(); ++c) {
    for (std::size_t i = 0; i < ndof; ++i) {
      os << c << ',' << i << ',' << coeffs[space.global_index(c, static_cast<int>(i))] << '\n';
    }
  }
  os.precision(old);
}

void write_coefficients_binary(const std::filesystem::path& path, const TensorFESpace& space,
                               std::span<const double> coeffs) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  const std::int32_t header[2] = {space.components(), static_cast<std::int32_t>(space.scalar().dof_count())};
  os.write(reinterpret_cast<const char*>(header), sizeof(header));
  os.write(reinterpret_cast<const char*>(coeffs.data()), static_cast<std::streamsize>(coeffs.size() * sizeof(double)));
  if (!os) throw IoError("failed writing " + path.string());
}

}  // namespace tsfem
