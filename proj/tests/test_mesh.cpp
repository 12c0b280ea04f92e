#include <gtest/gtest.h>

#include <ddr/errors.hpp>
#include <ddr/mesh.hpp>

#include "oracles.hpp"

using namespace ddr;

namespace {

std::array<long, 4> counts(const Mesh &m)
{
  return {static_cast<long>(m.n_vertices()), static_cast<long>(m.n_edges()), static_cast<long>(m.n_faces()),
          static_cast<long>(m.n_elements())};
}

} // namespace

TEST(Mesh, BuiltinCountsMatchCubicalEnumeration)
{
  const std::vector<std::pair<std::string, std::vector<oracle::Cell>>> cases = {
      {"cube", oracle::cube_cells()}, {"ring", oracle::ring_cells()}, {"cavity", oracle::cavity_cells()}};
  for (const auto &[name, cells] : cases) {
    const Mesh mesh = build_voxel_mesh(VoxelPattern::builtin(name), 1.0);
    EXPECT_EQ(counts(mesh), oracle::cubical_complex(cells).counts()) << name;
  }
  EXPECT_EQ(counts(build_voxel_mesh(VoxelPattern::builtin("ring"), 1.0)), (std::array<long, 4>{32, 64, 40, 8}));
  EXPECT_EQ(counts(build_voxel_mesh(VoxelPattern::builtin("cavity"), 1.0)), (std::array<long, 4>{64, 144, 108, 26}));
}

TEST(Mesh, EulerCharacteristic)
{
  EXPECT_EQ(build_voxel_mesh(VoxelPattern::builtin("cube"), 1.0).euler_characteristic(), 1);
  EXPECT_EQ(build_voxel_mesh(VoxelPattern::builtin("ring"), 1.0).euler_characteristic(), 0);
  EXPECT_EQ(build_voxel_mesh(VoxelPattern::builtin("cavity"), 1.0).euler_characteristic(), 2);
}

TEST(Mesh, JsonRoundTrip)
{
  const Mesh mesh = build_voxel_mesh(VoxelPattern::builtin("cube"), 1.0);
  const Mesh copy = load_mesh(write_mesh(mesh));
  EXPECT_EQ(counts(copy), (std::array<long, 4>{8, 12, 6, 1}));
  EXPECT_EQ(write_mesh(copy), write_mesh(mesh));
}

TEST(Mesh, DegenerateLoopIsAParseError)
{
  const std::string doc = R"({"vertices": [[0,0,0],[1,0,0],[0,1,0]], "faces": [[0,1,1,2]], "elements": [[0]]})";
  try {
    load_mesh(doc);
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("degenerate loop"), std::string::npos);
  }
}

TEST(Mesh, OutOfRangeFaceIsAReferenceError)
{
  const Mesh cube = build_voxel_mesh(VoxelPattern::builtin("cube"), 1.0);
  std::string doc = write_mesh(cube);
  const auto pos = doc.find("\"elements\"");
  ASSERT_NE(pos, std::string::npos);
  doc = doc.substr(0, pos) + "\"elements\": [[0, 1, 2, 3, 4, 99]]}";
  EXPECT_THROW(load_mesh(doc), ReferenceError);
}

TEST(Mesh, DisconnectedOccupancy)
{
  VoxelPattern p(3, 1, 1, false);
  p.set(0, 0, 0, true);
  p.set(2, 0, 0, true);
  try {
    build_voxel_mesh(p, 1.0);
    FAIL() << "expected an input error";
  } catch (const InputError &e) {
    EXPECT_NE(std::string(e.what()).find("disconnected occupancy"), std::string::npos);
  }
}

TEST(Mesh, PatternText)
{
  const VoxelPattern p = VoxelPattern::parse("###\n#.#\n###\n");
  EXPECT_EQ(p.nx, 3);
  EXPECT_EQ(p.ny, 3);
  EXPECT_EQ(p.nz, 1);
  EXPECT_FALSE(p.at(1, 1, 0));
  EXPECT_EQ(counts(build_voxel_mesh(p, 1.0)), (std::array<long, 4>{32, 64, 40, 8}));
}

TEST(Orientation, UnitCubeGeometry)
{
  const Mesh mesh = build_voxel_mesh(VoxelPattern::builtin("cube"), 1.0);
  const OrientationTable t = compute_orientation(mesh);
  for (const auto &e : t.edges) {
    EXPECT_NEAR(e.length, 1.0, 1e-15);
  }
  for (const auto &f : t.faces) {
    EXPECT_NEAR(f.area, 1.0, 1e-15);
  }
  EXPECT_NEAR(t.elements[0].volume, 1.0, 1e-15);
  EXPECT_LT((t.elements[0].center - Vector3(0.5, 0.5, 0.5)).norm(), 1e-15);
}

TEST(Orientation, ClosedSurfaceAndLoopIdentities)
{
  const Mesh mesh = build_voxel_mesh(VoxelPattern::builtin("cavity"), 1.0);
  const OrientationTable t = compute_orientation(mesh);
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    Vector3 s = Vector3::Zero();
    for (std::size_t j = 0; j < mesh.element(e).faces.size(); ++j) {
      const auto &fg = t.faces[mesh.element(e).faces[j]];
      s += t.elements[e].face_orientations[j] * fg.area * fg.normal;
    }
    EXPECT_LT(s.norm(), 1e-14);
  }
  for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
    Vector3 s = Vector3::Zero();
    for (std::size_t i = 0; i < mesh.face(f).edges.size(); ++i) {
      const auto &eg = t.edges[mesh.face(f).edges[i]];
      s += t.faces[f].edge_orientations[i] * eg.length * eg.tangent;
    }
    EXPECT_LT(s.norm(), 1e-14);
  }
}

TEST(Orientation, FaultsAreReadAndApplied)
{
  const Mesh mesh = build_voxel_mesh(VoxelPattern::builtin("cube"), 1.0);
  const auto faults = load_faults(R"({"faults": [{"kind": "flip_omega_TF", "element": 0, "face": 2},
                                                 {"kind": "scale_edge_length", "edge": 3, "factor": 1.5}]})");
  ASSERT_EQ(faults.size(), 2u);
  OrientationTable t = compute_orientation(mesh);
  const int before = t.omega_tf(mesh, 0, 2);
  for (const auto &f : faults) {
    apply_fault(mesh, t, f);
  }
  EXPECT_EQ(t.omega_tf(mesh, 0, 2), -before);
  EXPECT_NEAR(t.edges[3].length, 1.5, 1e-15);
  EXPECT_THROW(load_faults(R"({"faults": [{"kind": "melt"}]})"), ParseError);
}
