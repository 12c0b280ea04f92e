#include <ddr/layout.hpp>

#include <algorithm>

#include <ddr/errors.hpp>

namespace ddr {

const char *to_string(Space space)
{
  switch (space) {
  case Space::Grad:
    return "Xgrad";
  case Space::Curl:
    return "Xcurl";
  case Space::Div:
    return "Xdiv";
  case Space::L2:
    return "Pk";
  }
  return "?";
}

DofLayout::DofLayout(const Mesh &mesh, Space space, int k) : m_mesh(&mesh), m_space(space), m_degree(k)
{
  if (k < 0) {
    throw DomainError("polynomial degree must be non-negative");
  }
  auto add = [&](int d, SubspaceKind kind, int ell) {
    m_components[static_cast<std::size_t>(d)].push_back({kind, ell, space_dim(kind, ell, std::max(d, 1))});
  };
  switch (space) {
  case Space::Grad:
    m_components[0].push_back({SubspaceKind::P, 0, 1});
    add(1, SubspaceKind::P, k - 1);
    add(2, SubspaceKind::P, k - 1);
    add(3, SubspaceKind::P, k - 1);
    break;
  case Space::Curl:
    add(1, SubspaceKind::P, k);
    add(2, SubspaceKind::R, k - 1);
    add(2, SubspaceKind::Rc, k);
    add(3, SubspaceKind::R, k - 1);
    add(3, SubspaceKind::Rc, k);
    break;
  case Space::Div:
    add(2, SubspaceKind::P, k);
    add(3, SubspaceKind::G, k - 1);
    add(3, SubspaceKind::Gc, k);
    break;
  case Space::L2:
    add(3, SubspaceKind::P, k);
    break;
  }
  std::size_t base = 0;
  for (int d = 0; d < 4; ++d) {
    const auto du = static_cast<std::size_t>(d);
    m_local_dim[du] = 0;
    for (const auto &c : m_components[du]) {
      m_local_dim[du] += c.size;
    }
    m_base[du] = base;
    base += m_local_dim[du] * mesh.n_entities(d);
  }
  m_dimension = base;
}

std::size_t DofLayout::component_offset(int d, std::size_t i, std::size_t c) const
{
  std::size_t off = offset(d, i);
  const auto &comps = components(d);
  for (std::size_t j = 0; j < c; ++j) {
    off += comps.at(j).size;
  }
  return off;
}

std::vector<std::size_t> DofLayout::closure_dofs(int d, std::size_t i) const
{
  std::array<std::vector<std::size_t>, 4> entities;
  switch (d) {
  case 0:
    entities[0] = {i};
    break;
  case 1:
    entities[0] = {m_mesh->edge(i).vertices[0], m_mesh->edge(i).vertices[1]};
    entities[1] = {i};
    break;
  case 2:
    entities[0] = m_mesh->face(i).vertices;
    entities[1] = m_mesh->face(i).edges;
    std::sort(entities[1].begin(), entities[1].end());
    entities[2] = {i};
    break;
  case 3:
    entities[0] = m_mesh->element(i).vertices;
    entities[1] = m_mesh->element(i).edges;
    entities[2] = m_mesh->element(i).faces;
    std::sort(entities[2].begin(), entities[2].end());
    entities[3] = {i};
    break;
  default:
    throw DomainError("entity dimension must be in 0..3");
  }
  std::vector<std::size_t> dofs;
  for (int e = 0; e < 4; ++e) {
    const std::size_t n = local_dim(e);
    for (auto id : entities[static_cast<std::size_t>(e)]) {
      const std::size_t off = offset(e, id);
      for (std::size_t j = 0; j < n; ++j) {
        dofs.push_back(off + j);
      }
    }
  }
  return dofs;
}

std::size_t position_in(const std::vector<std::size_t> &list, std::size_t index)
{
  auto it = std::lower_bound(list.begin(), list.end(), index);
  if (it == list.end() || *it != index) {
    throw InternalError("unknown " + std::to_string(index) + " is not part of the local closure");
  }
  return static_cast<std::size_t>(it - list.begin());
}

} // namespace ddr
