// Command line driver: convergence studies, single solves and mesh export.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tsfem/tsfem.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

struct Flags {
  std::string config_file;
  std::string surface, penalty_normal, levels, solver, out, matrix_dump, coeffs_out;
  std::optional<int> rank, kg, ku, kp;
  std::optional<double> alpha;
  std::vector<double> betas;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("-c,--config", f.config_file, "Config file with 'key = value' lines; flags override it");
  cmd->add_option("--surface", f.surface, "ellipse | ellipsoid | sphere");
  cmd->add_option("--rank", f.rank, "Tensor rank (1 or 2)");
  cmd->add_option("--kg", f.kg, "Geometry order");
  cmd->add_option("--ku", f.ku, "Ansatz order");
  cmd->add_option("--kp", f.kp, "Penalty normal order");
  cmd->add_option("--alpha", f.alpha, "Penalty exponent in [0, 1]");
  cmd->add_option("--beta", f.betas, "Penalty factor; repeat for the minimum-order rule")->take_all();
  cmd->add_option("--penalty-normal", f.penalty_normal, "discrete | interp | exact");
  cmd->add_option("--solver", f.solver, "cg | dense");
  cmd->add_option("--matrix-dump", f.matrix_dump, "Write each system as <prefix>_L<level>_b<beta>.mtx");
  cmd->add_option("--coeffs-out", f.coeffs_out, "Write coefficients as <prefix>_L<level>_b<beta>.csv");
}

tsfem::RunConfig build_config(const Flags& f) {
  tsfem::RunConfig c;
  if (!f.config_file.empty()) tsfem::load_config_file(c, f.config_file);
  auto set = [&c](const char* key, const std::string& v) {
    if (!v.empty()) tsfem::apply_config_entry(c, key, v);
  };
  set("surface", f.surface);
  set("penalty_normal", f.penalty_normal);
  set("levels", f.levels);
  set("solver", f.solver);
  set("out", f.out);
  set("matrix_dump", f.matrix_dump);
  set("coeffs_out", f.coeffs_out);
  if (f.rank) c.rank = *f.rank;
  if (f.kg) c.kg = *f.kg;
  if (f.ku) c.ku = *f.ku;
  if (f.kp) c.kp = *f.kp;
  if (f.alpha) c.alpha = *f.alpha;
  if (!f.betas.empty()) c.betas = f.betas;
  c.validate();
  return c;
}

int run_converge(const Flags& f, bool quiet) {
  const tsfem::RunConfig c = build_config(f);
  const tsfem::EocTable table = tsfem::run_convergence(c, quiet ? nullptr : &std::cerr);
  tsfem::write_table(std::cout, table);
  if (!c.out.empty()) {
    std::ofstream os(c.out);
    if (!os) throw tsfem::IoError("cannot write " + c.out.string());
    tsfem::write_csv(os, table);
    if (!os) throw tsfem::IoError("failed writing " + c.out.string());
  }
  return kOk;
}

int run_solve(const Flags& f, int level) {
  const tsfem::RunConfig c = build_config(f);
  const std::vector<double> betas = c.effective_betas();
  if (betas.size() != 1) throw tsfem::ConfigError("solve takes a single beta");
  const tsfem::LevelRun r = tsfem::solve_once(c, level, betas.front());
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw tsfem::IoError("cannot write " + c.out.string());
    os = &file;
  }
  tsfem::write_csv_header(*os);
  tsfem::write_csv_row(*os, r.report);
  std::cerr << "cg iterations " << r.stats.iterations << ", relative residual " << r.stats.relative_residual << '\n';
  return kOk;
}

int run_mesh(const std::string& surface, int level, int kg, const std::string& out) {
  tsfem::RunConfig c;
  c.surface = tsfem::parse_surface(surface);
  const tsfem::LevelSetSurface s = c.make_surface();
  const tsfem::FlatMesh mesh = tsfem::generate(s, level);
  tsfem::save_off(mesh, out);
  const tsfem::CurvedMesh cmesh(mesh, s, kg);
  std::cout << "elements " << mesh.cells.size() << ", vertices " << mesh.vertices.size() << ", h " << mesh.h()
            << ", area " << tsfem::total_area(cmesh) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangential tensor surface finite elements"};
  app.require_subcommand(1);

  Flags conv_flags;
  bool quiet = false;
  auto* conv = app.add_subcommand("converge", "Run a refinement sequence and report fitted orders");
  add_common(conv, conv_flags);
  conv->add_option("--levels", conv_flags.levels, "Refinement levels A..B");
  conv->add_option("-o,--out", conv_flags.out, "CSV output file");
  conv->add_flag("-q,--quiet", quiet, "No progress output");

  Flags solve_flags;
  int solve_level = 2;
  auto* solve = app.add_subcommand("solve", "Solve on one level and print its error report");
  add_common(solve, solve_flags);
  solve->add_option("--level", solve_level, "Refinement level")->check(CLI::NonNegativeNumber);
  solve->add_option("-o,--out", solve_flags.out, "CSV output file");

  std::string mesh_surface = "sphere", mesh_out = "mesh.off";
  int mesh_level = 0, mesh_kg = 1;
  auto* mesh = app.add_subcommand("mesh", "Write the flat mesh of a level as OFF");
  mesh->add_option("--surface", mesh_surface, "ellipse | ellipsoid | sphere");
  mesh->add_option("--level", mesh_level, "Refinement level")->check(CLI::NonNegativeNumber);
  mesh->add_option("--kg", mesh_kg, "Geometry order for the reported area");
  mesh->add_option("-o,--out", mesh_out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*conv) return run_converge(conv_flags, quiet);
    if (*solve) return run_solve(solve_flags, solve_level);
    return run_mesh(mesh_surface, mesh_level, mesh_kg, mesh_out);
  } catch (const tsfem::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfig;
  } catch (const tsfem::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kConfig;
  } catch (const tsfem::IoError& e) {
    std::cerr << e.what() << '\n';
    return kIo;
  } catch (const tsfem::Error& e) {
    std::cerr << e.what() << '\n';
    return kNumerical;
  }
}
