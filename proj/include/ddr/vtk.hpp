#ifndef DDR_VTK_HPP
#define DDR_VTK_HPP

// Legacy ASCII VTK output of lifted cohomology generators.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include <ddr/ddr_operators.hpp>
#include <ddr/lift.hpp>

namespace ddr {

/// One vector per element: the potential reconstruction (P_curl for H^1,
/// P_div for H^2) of generator `j` evaluated at the element centre. Rows are elements.
Eigen::MatrixXd generator_cell_vectors(const DDRComplex &ddr, const LiftedGenerators &generators, std::size_t j);

/// Unstructured grid with polyhedral cells and one cell vector field per generator.
std::string generators_vtk(const DDRComplex &ddr, const std::vector<LiftedGenerators> &generators);

} // namespace ddr

#endif
