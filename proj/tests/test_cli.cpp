#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <cli.hpp>
#include <ddr/mesh.hpp>

using namespace ddr;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  args.insert(args.begin(), "ddrcoh");
  std::vector<const char *> argv;
  for (const auto &a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string &name)
{
  const auto dir = std::filesystem::temp_directory_path() / "ddrcoh_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path &path, const std::string &content) { std::ofstream(path) << content; }

std::string read(const std::filesystem::path &path)
{
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST(Cli, MeshWritesJson)
{
  const auto path = scratch("ring.json");
  const Result r = run({"mesh", "--builtin", "ring", "--out", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("vertices 32 edges 64 faces 40 elements 8"), std::string::npos) << r.out;
  const Mesh mesh = load_mesh(read(path));
  EXPECT_EQ(mesh.n_elements(), 8u);

  const Result s = run({"mesh", "--builtin", "cube"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(load_mesh(s.out).n_vertices(), 8u);
}

TEST(Cli, PatternInput)
{
  const auto pattern = scratch("pattern.txt");
  write(pattern, "11\n");
  Result r = run({"mesh", "--pattern", pattern.string(), "--cell-size", "0.5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_mesh(r.out).n_elements(), 2u);

  write(pattern, "101\n");
  r = run({"mesh", "--pattern", pattern.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("disconnected occupancy"), std::string::npos) << r.err;
}

TEST(Cli, VerifyBuiltinCube)
{
  const Result r = run({"verify", "--builtin", "cube", "--degree", "1", "--no-timestamp"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("degree").get<int>(), 1);
  EXPECT_NE(r.err.find("all checks passed"), std::string::npos);
}

TEST(Cli, VerifyWritesReportFile)
{
  const auto path = scratch("report.json");
  const Result r = run({"verify", "--builtin", "ring", "--checks", "complex,closed_forms", "--out", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(read(path));
  EXPECT_TRUE(j.contains("generated_at"));
  for (const auto &c : j.at("checks")) {
    const std::string name = c.at("name");
    EXPECT_TRUE(name.rfind("complex.", 0) == 0 || name.rfind("closed_forms.", 0) == 0) << name;
  }
}

TEST(Cli, CorruptedMeshFails)
{
  auto doc = nlohmann::json::parse(write_mesh(build_voxel_mesh(VoxelPattern::builtin("cube"), 1.0)));
  doc["faults"] = nlohmann::json::parse(R"([{"kind": "flip_omega_TF", "element": 0, "face": 2}])");
  const auto path = scratch("corrupt.json");
  write(path, doc.dump());
  const Result r = run({"verify", "--mesh", path.string(), "--degree", "1", "--no-timestamp"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("FAIL "), std::string::npos) << r.err;
}

TEST(Cli, InvalidInputExitsWithTwo)
{
  EXPECT_EQ(run({"cohomology", "--builtin", "cube", "--degree", "7"}).code, 2);
  EXPECT_EQ(run({"verify", "--builtin", "cube", "--checks", "nonsense"}).code, 2);
  EXPECT_EQ(run({"verify", "--builtin", "torus"}).code, 2);
  EXPECT_EQ(run({"verify", "--mesh", scratch("missing.json").string()}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  const auto bad = scratch("bad.json");
  write(bad, "{\"vertices\": [[0,0,0]], \"faces\": [[0, 99, 1]], \"elements\": [[0]]}");
  EXPECT_EQ(run({"verify", "--mesh", bad.string()}).code, 2);
}

TEST(Cli, CohomologyOfBuiltins)
{
  Result r = run({"cohomology", "--builtin", "ring", "--degree", "1", "--no-timestamp"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("cohomology_ddr"), nlohmann::json::parse("[0,1,0,0]"));

  r = run({"cohomology", "--builtin", "cube", "--degree", "2", "--no-timestamp"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("cohomology_ddr"), nlohmann::json::parse("[0,0,0,0]"));
}

TEST(Cli, CohomologyGeneratorsVtk)
{
  const auto vtk = scratch("cavity.vtk");
  std::filesystem::remove(vtk);
  const Result r = run({"cohomology", "--builtin", "cavity", "--degree", "1", "--generators", vtk.string(),
                        "--no-timestamp"});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string text = read(vtk);
  EXPECT_EQ(text.rfind("# vtk DataFile Version", 0), 0u);
  EXPECT_NE(text.find("CELL_DATA 26"), std::string::npos);
  EXPECT_NE(text.find("H2_generator_0"), std::string::npos);
  std::size_t count = 0;
  const auto report = nlohmann::json::parse(r.out);
  for (const auto &g : report.at("generators")) {
    count += g.at("count").get<std::size_t>();
  }
  EXPECT_EQ(count, 1u);
}
