#include <ddr/vtk.hpp>

#include <iomanip>
#include <sstream>

#include <ddr/errors.hpp>

namespace ddr {

Eigen::MatrixXd generator_cell_vectors(const DDRComplex &ddr, const LiftedGenerators &generators, std::size_t j)
{
  const Mesh &mesh = ddr.mesh();
  const Space space = generators.index == 1 ? Space::Curl : Space::Div;
  const Eigen::VectorXd &g = generators.vectors.at(j);
  if (static_cast<std::size_t>(g.size()) != ddr.layout(space).dimension()) {
    throw DomainError("generator does not match the degree of the complex");
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(mesh.n_elements()), 3);
  for (std::size_t t = 0; t < mesh.n_elements(); ++t) {
    const auto &cl = ddr.closure(space, 3, t);
    Eigen::VectorXd local(static_cast<Eigen::Index>(cl.size()));
    for (std::size_t i = 0; i < cl.size(); ++i) {
      local(static_cast<Eigen::Index>(i)) = g(static_cast<Eigen::Index>(cl[i]));
    }
    const ElementOperators &ops = ddr.element_operators(t);
    const Eigen::VectorXd potential = (space == Space::Curl ? ops.curl_potential : ops.div_potential) * local;
    const Vector3 x = ddr.orientation().elements[t].center;
    out.row(static_cast<Eigen::Index>(t)) = ddr.evaluate_vector(3, t, ddr.degree(), potential, x).transpose();
  }
  return out;
}

std::string generators_vtk(const DDRComplex &ddr, const std::vector<LiftedGenerators> &generators)
{
  const Mesh &mesh = ddr.mesh();
  std::ostringstream s;
  s << std::setprecision(17);
  s << "# vtk DataFile Version 3.0\n";
  s << "cohomology generators, degree " << ddr.degree() << "\n";
  s << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  s << "POINTS " << mesh.n_vertices() << " double\n";
  for (const auto &v : mesh.vertices()) {
    s << v(0) << " " << v(1) << " " << v(2) << "\n";
  }

  // Polyhedral cells: n_faces, then for each face its vertex count and loop
  std::vector<std::vector<std::size_t>> streams;
  std::size_t total = 0;
  for (std::size_t t = 0; t < mesh.n_elements(); ++t) {
    std::vector<std::size_t> stream = {mesh.element(t).faces.size()};
    for (auto f : mesh.element(t).faces) {
      const auto &loop = mesh.face(f).loop;
      stream.push_back(loop.size());
      stream.insert(stream.end(), loop.begin(), loop.end());
    }
    total += stream.size() + 1;
    streams.push_back(std::move(stream));
  }
  s << "CELLS " << mesh.n_elements() << " " << total << "\n";
  for (const auto &stream : streams) {
    s << stream.size();
    for (auto x : stream) {
      s << " " << x;
    }
    s << "\n";
  }
  s << "CELL_TYPES " << mesh.n_elements() << "\n";
  for (std::size_t t = 0; t < mesh.n_elements(); ++t) {
    s << "42\n";
  }

  std::size_t fields = 0;
  for (const auto &g : generators) {
    fields += g.vectors.size();
  }
  if (fields > 0) {
    s << "CELL_DATA " << mesh.n_elements() << "\n";
    for (const auto &g : generators) {
      for (std::size_t j = 0; j < g.vectors.size(); ++j) {
        const Eigen::MatrixXd values = generator_cell_vectors(ddr, g, j);
        s << "VECTORS H" << g.index << "_generator_" << j << " double\n";
        for (Eigen::Index t = 0; t < values.rows(); ++t) {
          s << values(t, 0) << " " << values(t, 1) << " " << values(t, 2) << "\n";
        }
      }
    }
  }
  return s.str();
}

} // namespace ddr
