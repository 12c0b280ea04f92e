#ifndef DDR_LAYOUT_HPP
#define DDR_LAYOUT_HPP

// Global numbering of the unknowns of the discrete spaces. Unknowns are grouped
// by entity, entities by dimension (vertices, edges, faces, elements) and then
// by index; within an entity the components follow the order listed below.

#include <array>
#include <vector>

#include <ddr/mesh.hpp>
#include <ddr/poly.hpp>

namespace ddr {

enum class Space { Grad, Curl, Div, L2 };

const char *to_string(Space space);

struct DofComponent {
  SubspaceKind kind;
  int ell;
  std::size_t size;
};

class DofLayout {
public:
  /// Grad: 1 per vertex, P^{k-1} per edge/face/element.
  /// Curl: P^k per edge, (R^{k-1}, Rc^k) per face and element.
  /// Div: P^k per face, (G^{k-1}, Gc^k) per element.
  /// L2: P^k per element.
  DofLayout(const Mesh &mesh, Space space, int k);

  Space space() const { return m_space; }
  int degree() const { return m_degree; }
  std::size_t dimension() const { return m_dimension; }

  const std::vector<DofComponent> &components(int d) const { return m_components[static_cast<std::size_t>(d)]; }
  std::size_t local_dim(int d) const { return m_local_dim[static_cast<std::size_t>(d)]; }
  std::size_t offset(int d, std::size_t i) const
  {
    return m_base[static_cast<std::size_t>(d)] + i * m_local_dim[static_cast<std::size_t>(d)];
  }
  /// Offset of component `c` of entity (d, i).
  std::size_t component_offset(int d, std::size_t i, std::size_t c) const;

  /// Sorted global indices of the unknowns attached to the entity and its boundary.
  std::vector<std::size_t> closure_dofs(int d, std::size_t i) const;

private:
  const Mesh *m_mesh;
  Space m_space;
  int m_degree;
  std::array<std::vector<DofComponent>, 4> m_components;
  std::array<std::size_t, 4> m_local_dim{};
  std::array<std::size_t, 4> m_base{};
  std::size_t m_dimension = 0;
};

/// Position of `index` in the sorted list `list`; throws InternalError if absent.
std::size_t position_in(const std::vector<std::size_t> &list, std::size_t index);

} // namespace ddr

#endif
