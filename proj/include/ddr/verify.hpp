#ifndef DDR_VERIFY_HPP
#define DDR_VERIFY_HPP

// Battery of named numerical certificates on a mesh and degree, and the JSON
// report that collects them.
//
// Check families, in execution order: orientation, closed_forms, complex,
// cochain, cohomology, zero_reduction, consistency. Every check is named
// "<family>.<identity>".

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <ddr/lift.hpp>
#include <ddr/linalg.hpp>
#include <ddr/mesh.hpp>

namespace ddr {

const std::vector<std::string> &check_families();

struct CheckResult {
  std::string name;
  bool passed = false;
  bool errored = false; // the check could not be evaluated; `detail` holds the error
  double residual = 0;  // integer checks store the absolute deficit
  double tolerance = 0;
  double seconds = 0;
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::string> families; // empty selects every family
  RankOptions rank;
  std::uint64_t seed = 0;
  bool generators = false; // lift cohomology generators into the report
};

struct VerificationReport {
  std::array<std::size_t, 4> counts{}; // vertices, edges, faces, elements
  int degree = 0;
  std::array<std::size_t, 4> dims{};   // Xgrad, Xcurl, Xdiv, Pk
  std::optional<std::array<long, 4>> betti_cw;
  std::optional<std::array<std::size_t, 3>> ranks; // uG, uC, D
  std::array<double, 3> gaps{};
  std::optional<std::array<long, 4>> cohomology_ddr;
  std::vector<CheckResult> checks;
  std::vector<LiftedGenerators> generators;

  bool passed() const;
  const CheckResult *find(const std::string &name) const;
};

/// Throws InputError for unknown family names.
VerificationReport run_all(const Mesh &mesh, int k, const VerifyOptions &options,
                           const std::vector<OrientationFault> &faults = {});

/// JSON report; `timestamp` adds "generated_at" and keeps the check timings,
/// otherwise timings are written as 0 so that reports are reproducible.
std::string report_json(const VerificationReport &report, bool timestamp);

} // namespace ddr

#endif
