#ifndef DDR_TOOLS_CLI_HPP
#define DDR_TOOLS_CLI_HPP

#include <iosfwd>

namespace ddr {

/// Entry point of the ddrcoh tool. Returns 0 when everything passed, 1 when a
/// check failed or the discrete cohomology differs from the CW Betti numbers,
/// and 2 on invalid input.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace ddr

#endif
