#include <gtest/gtest.h>

#include <set>

#include <json.hpp>

#include <ddr/errors.hpp>
#include <ddr/verify.hpp>

using namespace ddr;

namespace {

Mesh builtin(const std::string &name) { return build_voxel_mesh(VoxelPattern::builtin(name), 1.0); }

std::set<std::string> families_of(const VerificationReport &r)
{
  std::set<std::string> out;
  for (const auto &c : r.checks) {
    out.insert(c.name.substr(0, c.name.find('.')));
  }
  return out;
}

std::string failures(const VerificationReport &r)
{
  std::string out;
  for (const auto &c : r.checks) {
    if (!c.passed) {
      out += c.name + " (" + std::to_string(c.residual) + " " + c.detail + ") ";
    }
  }
  return out;
}

} // namespace

TEST(Verify, CubeDegreeOnePassesEveryFamily)
{
  const VerificationReport r = run_all(builtin("cube"), 1, {});
  EXPECT_TRUE(r.passed()) << failures(r);
  EXPECT_EQ(families_of(r).size(), 7u);
  EXPECT_EQ(families_of(r), std::set<std::string>(check_families().begin(), check_families().end()));
  ASSERT_TRUE(r.cohomology_ddr.has_value());
  EXPECT_EQ(*r.cohomology_ddr, (std::array<long, 4>{0, 0, 0, 0}));
  EXPECT_EQ(r.dims, (std::array<std::size_t, 4>{27, 46, 24, 4}));
}

TEST(Verify, RingDetectsFirstCohomology)
{
  for (int k : {0, 1}) {
    const VerificationReport r = run_all(builtin("ring"), k, {});
    EXPECT_TRUE(r.passed()) << failures(r);
    ASSERT_TRUE(r.cohomology_ddr.has_value());
    EXPECT_EQ((*r.cohomology_ddr)[1], 1);
    EXPECT_EQ(*r.betti_cw, (std::array<long, 4>{1, 1, 0, 0}));
  }
}

TEST(Verify, RingDegreeTwoCochainFamily)
{
  VerifyOptions options;
  options.families = {"cochain"};
  const VerificationReport r = run_all(builtin("ring"), 2, options);
  EXPECT_TRUE(r.passed()) << failures(r);
  EXPECT_FALSE(r.ranks.has_value());
}

TEST(Verify, FamilySelection)
{
  VerifyOptions options;
  options.families = {"complex"};
  const VerificationReport r = run_all(builtin("cube"), 1, options);
  EXPECT_EQ(families_of(r), std::set<std::string>{"complex"});
  EXPECT_NE(r.find("complex.curl_gradient"), nullptr);
  EXPECT_EQ(r.find("cochain.left_inverse_grad"), nullptr);

  options.families = {"complex", "bogus"};
  EXPECT_THROW(run_all(builtin("cube"), 1, options), InputError);
}

TEST(Verify, GeneratorChecks)
{
  VerifyOptions options;
  options.families = {"cohomology"};
  options.generators = true;
  const VerificationReport r = run_all(builtin("cavity"), 1, options);
  EXPECT_TRUE(r.passed()) << failures(r);
  ASSERT_NE(r.find("cohomology.generators_h2"), nullptr);
  std::size_t lifted = 0;
  for (const auto &g : r.generators) {
    lifted += g.vectors.size();
    EXPECT_TRUE(g.certified);
  }
  EXPECT_EQ(lifted, 1u);
}

TEST(Verify, FaultsAreDetected)
{
  const Mesh mesh = builtin("ring");
  std::vector<std::vector<OrientationFault>> faults;
  {
    OrientationFault f;
    f.kind = OrientationFault::Kind::FlipElementFace;
    f.primary = 0;
    f.secondary = mesh.element(0).faces[0];
    faults.push_back({f});
  }
  {
    OrientationFault f;
    f.kind = OrientationFault::Kind::FlipFaceEdge;
    f.primary = 0;
    f.secondary = mesh.face(0).edges[0];
    faults.push_back({f});
  }
  {
    OrientationFault f;
    f.kind = OrientationFault::Kind::ScaleEdgeLength;
    f.primary = 0;
    f.factor = 1.5;
    faults.push_back({f});
  }
  for (const auto &fault : faults) {
    const VerificationReport r = run_all(mesh, 1, {}, fault);
    EXPECT_FALSE(r.passed());
    std::size_t failed = 0;
    for (const auto &c : r.checks) {
      failed += c.passed ? 0 : 1;
    }
    EXPECT_GE(failed, 1u);
  }
}

TEST(Verify, ReportJsonIsDeterministic)
{
  VerifyOptions options;
  options.families = {"complex", "cohomology"};
  const std::string a = report_json(run_all(builtin("ring"), 1, options), false);
  const std::string b = report_json(run_all(builtin("ring"), 1, options), false);
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_FALSE(j.contains("generated_at"));
  EXPECT_EQ(j.at("cohomology_ddr"), nlohmann::json::parse("[0,1,0,0]"));
  EXPECT_EQ(j.at("betti_cw"), nlohmann::json::parse("[1,1,0,0]"));
  EXPECT_EQ(j.at("ranks").at("uG").get<int>(), 143);
  for (const auto &c : j.at("checks")) {
    EXPECT_EQ(c.at("seconds").get<double>(), 0.0);
  }
  const auto t = nlohmann::json::parse(report_json(run_all(builtin("cube"), 0, options), true));
  EXPECT_TRUE(t.contains("generated_at"));
}

TEST(NumericRank, Examples)
{
  const Mesh cube = builtin("cube");
  const OrientationTable table = compute_orientation(cube);
  EXPECT_EQ(numeric_rank(Eigen::MatrixXd(DDRComplex(cube, table, 0).gradient().matrix)).rank, 7u);
  EXPECT_EQ(numeric_rank(Eigen::MatrixXd::Zero(4, 3)).rank, 0u);
  const Mesh ring = builtin("ring");
  const OrientationTable rt = compute_orientation(ring);
  const RankResult r = numeric_rank(Eigen::MatrixXd(DDRComplex(ring, rt, 1).curl().matrix));
  EXPECT_EQ(r.rank, 136u);
  EXPECT_FALSE(r.ambiguous);
  const RankResult tiny = numeric_rank(Eigen::MatrixXd::Identity(3, 3) * 1e-3, RankOptions{1e-2, false});
  EXPECT_EQ(tiny.rank, 0u);
}
