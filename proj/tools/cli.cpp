#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ddr/errors.hpp>
#include <ddr/mesh.hpp>
#include <ddr/verify.hpp>
#include <ddr/vtk.hpp>

namespace ddr {

namespace {

std::string read_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read '" + path + "'");
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string &path, const std::string &content)
{
  std::ofstream out(path);
  if (!out || !(out << content)) {
    throw InputError("cannot write '" + path + "'");
  }
}

struct MeshSource {
  std::string path;
  std::string builtin;
};

struct LoadedMesh {
  Mesh mesh;
  std::vector<OrientationFault> faults;
};

LoadedMesh load(const MeshSource &source)
{
  if (!source.builtin.empty()) {
    return {build_voxel_mesh(VoxelPattern::builtin(source.builtin), 1.0), {}};
  }
  if (source.path.empty()) {
    throw InputError("one of --mesh or --builtin is required");
  }
  const std::string document = read_file(source.path);
  return {load_mesh(document), load_faults(document)};
}

std::vector<std::string> split_list(const std::string &list)
{
  std::vector<std::string> out;
  std::stringstream s(list);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

void print_checks(const VerificationReport &report, std::ostream &out)
{
  for (const auto &c : report.checks) {
    out << (c.passed ? "PASS " : c.errored ? "ERROR " : "FAIL ") << c.name << "  residual " << c.residual
        << "  tolerance " << c.tolerance;
    if (!c.detail.empty()) {
      out << "  (" << c.detail << ")";
    }
    out << "\n";
  }
}

template <typename T> std::string join(const T &values)
{
  std::ostringstream s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s << (i ? " " : "") << values[i];
  }
  return s.str();
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Discrete de Rham cohomology on polyhedral meshes"};
  app.require_subcommand(1);

  // mesh
  std::string pattern_path, mesh_builtin, mesh_out;
  double cell_size = 1.0;
  CLI::App *mesh_cmd = app.add_subcommand("mesh", "Build a voxel mesh and write it as JSON");
  auto *b1 = mesh_cmd->add_option("--builtin", mesh_builtin, "cube, ring or cavity");
  auto *p1 = mesh_cmd->add_option("--pattern", pattern_path, "occupancy text file");
  b1->excludes(p1);
  mesh_cmd->add_option("--cell-size", cell_size, "edge length of the voxels")->check(CLI::PositiveNumber);
  mesh_cmd->add_option("--out", mesh_out, "output path (standard output when absent)");

  // cohomology and verify share most options
  struct Common {
    MeshSource source;
    int degree = 0;
    std::string out;
    double rank_tol = 0;
    std::uint64_t seed = 0;
    bool no_timestamp = false;
  };
  auto add_common = [](CLI::App *cmd, Common &c) {
    auto *m = cmd->add_option("--mesh", c.source.path, "mesh JSON file");
    auto *b = cmd->add_option("--builtin", c.source.builtin, "cube, ring or cavity");
    m->excludes(b);
    cmd->add_option("--degree", c.degree, "polynomial degree k")->check(CLI::Range(0, 4));
    cmd->add_option("--out", c.out, "report path (standard output when absent)");
    cmd->add_option("--rank-tol", c.rank_tol, "absolute floor of the singular value threshold")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", c.seed, "seed of the randomized probes");
    cmd->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp and timings from the report");
  };

  Common coh;
  std::string generators_path;
  CLI::App *coh_cmd = app.add_subcommand("cohomology", "Compare discrete cohomology with the CW Betti numbers");
  add_common(coh_cmd, coh);
  coh_cmd->add_option("--generators", generators_path, "write lifted generators to this VTK file");

  Common ver;
  std::string checks;
  CLI::App *ver_cmd = app.add_subcommand("verify", "Run the verification battery");
  add_common(ver_cmd, ver);
  ver_cmd->add_option("--checks", checks, "comma-separated check families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*mesh_cmd) {
      Mesh mesh = [&] {
        if (!mesh_builtin.empty()) {
          return build_voxel_mesh(VoxelPattern::builtin(mesh_builtin), cell_size);
        }
        if (pattern_path.empty()) {
          throw InputError("one of --builtin or --pattern is required");
        }
        return build_voxel_mesh(VoxelPattern::parse(read_file(pattern_path)), cell_size);
      }();
      const std::string json = write_mesh(mesh);
      if (mesh_out.empty()) {
        out << json;
      } else {
        write_file(mesh_out, json);
      }
      (mesh_out.empty() ? err : out) << "vertices " << mesh.n_vertices() << " edges " << mesh.n_edges() << " faces "
                                     << mesh.n_faces() << " elements " << mesh.n_elements() << "\n";
      return 0;
    }

    const bool cohomology = static_cast<bool>(*coh_cmd);
    const Common &c = cohomology ? coh : ver;
    const LoadedMesh loaded = load(c.source);
    VerifyOptions options;
    options.rank.absolute_floor = c.rank_tol;
    options.seed = c.seed;
    if (cohomology) {
      options.families = {"cohomology"};
      options.generators = !generators_path.empty();
    } else {
      options.families = split_list(checks);
    }
    const VerificationReport report = run_all(loaded.mesh, c.degree, options, loaded.faults);
    const std::string json = report_json(report, !c.no_timestamp);
    std::ostream &summary = c.out.empty() ? err : out;
    if (c.out.empty()) {
      out << json;
    } else {
      write_file(c.out, json);
    }

    if (cohomology && !generators_path.empty()) {
      OrientationTable table = compute_orientation(loaded.mesh);
      for (const auto &fault : loaded.faults) {
        apply_fault(loaded.mesh, table, fault);
      }
      const DDRComplex ddr(loaded.mesh, table, c.degree);
      write_file(generators_path, generators_vtk(ddr, report.generators));
    }

    print_checks(report, summary);
    if (report.betti_cw) {
      summary << "betti_cw " << join(*report.betti_cw) << "\n";
    }
    if (report.cohomology_ddr) {
      summary << "cohomology_ddr " << join(*report.cohomology_ddr) << "\n";
    }
    const bool matches = !cohomology || (report.betti_cw && report.cohomology_ddr &&
                                         (*report.cohomology_ddr)[1] == (*report.betti_cw)[1] &&
                                         (*report.cohomology_ddr)[2] == (*report.betti_cw)[2]);
    const bool ok = report.passed() && matches;
    summary << (ok ? "all checks passed" : "FAILED") << "\n";
    return ok ? 0 : 1;
  } catch (const InputError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace ddr
