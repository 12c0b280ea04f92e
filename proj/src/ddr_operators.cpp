#include <ddr/ddr_operators.hpp>

#include <ddr/errors.hpp>
#include <ddr/parallel.hpp>

namespace ddr {

namespace {

const Eigen::MatrixXd &differential(Differential op, int degree)
{
  return differential_matrix(op, degree);
}

const Eigen::MatrixXd &derivative(int d, int degree, int axis)
{
  return derivative_matrix(d, degree, axis);
}

const Eigen::MatrixXd &basis(int d, SubspaceKind kind, int ell)
{
  return build_subspace_basis(d, kind, ell).values;
}

Eigen::Index n_poly(int d, int degree)
{
  return static_cast<Eigen::Index>(poly_dim(d, degree));
}

Eigen::Index pos(const std::vector<std::size_t> &list, std::size_t index)
{
  return static_cast<Eigen::Index>(position_in(list, index));
}

} // namespace

Eigen::MatrixXd expand_columns(const Eigen::MatrixXd &m, const std::vector<std::size_t> &from,
                               const std::vector<std::size_t> &to)
{
  if (static_cast<std::size_t>(m.cols()) != from.size()) {
    throw InternalError("expand_columns: column count does not match the source list");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows(), static_cast<Eigen::Index>(to.size()));
  for (std::size_t j = 0; j < from.size(); ++j) {
    out.col(pos(to, from[j])) += m.col(static_cast<Eigen::Index>(j));
  }
  return out;
}

void SparseBuilder::add_block(std::size_t first_row, const std::vector<std::size_t> &columns,
                              const Eigen::MatrixXd &block)
{
  if (static_cast<std::size_t>(block.cols()) != columns.size() || first_row + static_cast<std::size_t>(block.rows()) > m_rows) {
    throw InternalError("SparseBuilder: block does not fit");
  }
  for (Eigen::Index i = 0; i < block.rows(); ++i) {
    for (Eigen::Index j = 0; j < block.cols(); ++j) {
      if (block(i, j) != 0) {
        m_triplets.emplace_back(static_cast<int>(first_row + static_cast<std::size_t>(i)),
                                static_cast<int>(columns[static_cast<std::size_t>(j)]), block(i, j));
      }
    }
  }
}

void SparseBuilder::add(std::size_t row, std::size_t col, double value)
{
  if (row >= m_rows || col >= m_cols) {
    throw InternalError("SparseBuilder: entry out of range");
  }
  m_triplets.emplace_back(static_cast<int>(row), static_cast<int>(col), value);
}

SparseMatrix SparseBuilder::build() const
{
  SparseMatrix m(static_cast<Eigen::Index>(m_rows), static_cast<Eigen::Index>(m_cols));
  m.setFromTriplets(m_triplets.begin(), m_triplets.end());
  return m;
}

//------------------------------------------------------------------------------
// Construction
//------------------------------------------------------------------------------

DDRComplex::DDRComplex(const Mesh &mesh, const OrientationTable &orientation, int k)
    : m_mesh(&mesh), m_orientation(&orientation), m_degree(k)
{
  if (k < 0) {
    throw DomainError("polynomial degree must be non-negative");
  }
  for (Space s : {Space::Grad, Space::Curl, Space::Div, Space::L2}) {
    m_layouts.emplace_back(mesh, s, k);
  }
  for (std::size_t s = 0; s < 3; ++s) {
    for (int d = 1; d <= 3; ++d) {
      auto &list = m_closures[s][static_cast<std::size_t>(d)];
      list.resize(mesh.n_entities(d));
      for (std::size_t i = 0; i < list.size(); ++i) {
        list[i] = m_layouts[s].closure_dofs(d, i);
      }
    }
  }
  build_entities();

  m_edge_ops.resize(mesh.n_edges());
  m_face_ops.resize(mesh.n_faces());
  m_element_ops.resize(mesh.n_elements());
  parallel_for(mesh.n_edges(), [this](std::size_t e) { build_edge(e); });
  parallel_for(mesh.n_faces(), [this](std::size_t f) { build_face(f); });
  parallel_for(mesh.n_elements(), [this](std::size_t t) { build_element(t); });
  assemble();
}

const std::vector<std::size_t> &DDRComplex::closure(Space space, int d, std::size_t i) const
{
  if (space == Space::L2 || d < 1 || d > 3) {
    throw DomainError("closure lists exist for the gradient, curl and divergence spaces on edges, faces and elements");
  }
  return m_closures[static_cast<std::size_t>(space)][static_cast<std::size_t>(d)][i];
}

void DDRComplex::build_entities()
{
  const int q = quadrature_degree();
  const int mass_degree = m_degree + 2;
  for (int d = 1; d <= 3; ++d) {
    auto &list = m_entities[static_cast<std::size_t>(d)];
    list.resize(m_mesh->n_entities(d));
    parallel_for(list.size(), [&, d](std::size_t i) {
      EntityData &data = list[i];
      if (d == 1) {
        data.frame = edge_frame(*m_orientation, i);
        data.rule = edge_quadrature(*m_mesh, i, q);
      } else if (d == 2) {
        data.frame = face_frame(*m_orientation, i);
        data.rule = face_quadrature(*m_mesh, *m_orientation, i, q);
      } else {
        data.frame = element_frame(*m_orientation, i);
        data.rule = element_quadrature(*m_mesh, *m_orientation, i, q);
      }
      data.mass = mass_matrix(data.frame, mass_degree, data.rule);
    });
  }
}

void DDRComplex::build_edge(std::size_t e)
{
  const int k = m_degree;
  const EntityData &ed = entity(1, e);
  const auto &cl = closure(Space::Grad, 1, e);
  const Eigen::MatrixXd &M = ed.mass;
  const double h = ed.frame.h;
  const Eigen::Index nk1 = n_poly(1, k + 1), nk = n_poly(1, k), nkm = n_poly(1, k - 1);
  const auto ncl = static_cast<Eigen::Index>(cl.size());
  const Vector3 &x1 = m_mesh->vertex(m_mesh->edge(e).vertices[0]);
  const Vector3 &x2 = m_mesh->vertex(m_mesh->edge(e).vertices[1]);

  EdgeOperators &ops = m_edge_ops[e];

  // Trace: vertex values and projection on P^{k-1}
  Eigen::MatrixXd a(nk1, nk1);
  a.row(0) = monomial_values(ed.frame, k + 1, x1).transpose();
  a.row(1) = monomial_values(ed.frame, k + 1, x2).transpose();
  a.bottomRows(nkm) = mass_block(M, 1, k - 1, k + 1);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(nk1, ncl);
  b(0, 0) = 1;
  b(1, 1) = 1;
  b.bottomRightCorner(nkm, nkm) = mass_block(M, 1, k - 1, k - 1);
  ops.trace = solve_checked(a, b, "edge " + std::to_string(e) + " trace");

  // Gradient
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nk, ncl);
  rhs.col(0) = -monomial_values(ed.frame, k, x1);
  rhs.col(1) = monomial_values(ed.frame, k, x2);
  if (nkm > 0) {
    rhs.rightCols(nkm) = -(mass_block(M, 1, k - 1, k - 1) * derivative(1, k, 0)).transpose() / h;
  }
  ops.gradient = solve_checked(mass_block(M, 1, k, k), rhs, "edge " + std::to_string(e) + " gradient");
}

Eigen::MatrixXd DDRComplex::face_trace_pairing(std::size_t f, int m) const
{
  const int k = m_degree;
  const auto &clg = closure(Space::Grad, 2, f);
  const EntityData &fd = entity(2, f);
  const FaceGeometry &fg = m_orientation->faces[f];
  const Eigen::Index nm = n_poly(2, m);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * nm, static_cast<Eigen::Index>(clg.size()));
  const auto &edges = m_mesh->face(f).edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::size_t e = edges[i];
    const double omega = fg.edge_orientations[i];
    const Vector3 &nfe = fg.edge_normals[i];
    const double nc[2] = {nfe.dot(fg.tau1), nfe.dot(fg.tau2)};
    const Eigen::MatrixXd trace = expand_columns(m_edge_ops[e].trace, closure(Space::Grad, 1, e), clg);
    const EntityData &ed = entity(1, e);
    for (const auto &qp : ed.rule.points) {
      const Eigen::RowVectorXd value = monomial_values(ed.frame, k + 1, qp.point).transpose() * trace;
      const Eigen::VectorXd test = monomial_values(fd.frame, m, qp.point);
      for (int c = 0; c < 2; ++c) {
        out.middleRows(c * nm, nm) += (omega * qp.weight * nc[c]) * test * value;
      }
    }
  }
  return out;
}

Eigen::MatrixXd DDRComplex::face_edge_pairing(std::size_t f, int m) const
{
  const int k = m_degree;
  const auto &clc = closure(Space::Curl, 2, f);
  const EntityData &fd = entity(2, f);
  const FaceGeometry &fg = m_orientation->faces[f];
  const Eigen::Index nm = n_poly(2, m), ne = n_poly(1, k);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nm, static_cast<Eigen::Index>(clc.size()));
  const auto &edges = m_mesh->face(f).edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::size_t e = edges[i];
    const double omega = fg.edge_orientations[i];
    const Eigen::Index first = pos(clc, layout(Space::Curl).offset(1, e));
    const EntityData &ed = entity(1, e);
    for (const auto &qp : ed.rule.points) {
      out.middleCols(first, ne) += (omega * qp.weight) * monomial_values(fd.frame, m, qp.point) *
                                   monomial_values(ed.frame, k, qp.point).transpose();
    }
  }
  return out;
}

void DDRComplex::build_face(std::size_t f)
{
  const int k = m_degree;
  const EntityData &fd = entity(2, f);
  const auto &clg = closure(Space::Grad, 2, f);
  const auto &clc = closure(Space::Curl, 2, f);
  const Eigen::MatrixXd &M = fd.mass;
  const double h = fd.frame.h;
  const Eigen::Index nk = n_poly(2, k), nkm = n_poly(2, k - 1), nk1 = n_poly(2, k + 1);
  const std::string name = "face " + std::to_string(f);
  FaceOperators &ops = m_face_ops[f];

  // Gradient
  {
    Eigen::MatrixXd rhs = face_trace_pairing(f, k);
    if (nkm > 0) {
      const Eigen::Index first = pos(clg, layout(Space::Grad).offset(2, f));
      const Eigen::MatrixXd mkm = mass_block(M, 2, k - 1, k - 1);
      for (int c = 0; c < 2; ++c) {
        rhs.block(c * nk, first, nk, nkm) -= (mkm * derivative(2, k, c)).transpose() / h;
      }
    }
    ops.gradient = solve_checked(vector_mass(M, 2, k, k), rhs, name + " gradient");
  }

  // Scalar trace, tested against Rc^{k+2}(F)
  {
    const Eigen::MatrixXd &bc = basis(2, SubspaceKind::Rc, k + 2);
    const Eigen::MatrixXd lhs = (differential(Differential::DivF, k + 2) * bc).transpose() * mass_block(M, 2, k + 1, k + 1) / h;
    const Eigen::MatrixXd rhs =
        bc.transpose() * (face_trace_pairing(f, k + 2) - vector_mass(M, 2, k + 2, k) * ops.gradient);
    ops.trace = solve_checked(lhs, rhs, name + " trace");
  }

  // Curl
  {
    const Eigen::MatrixXd &br = basis(2, SubspaceKind::R, k - 1);
    Eigen::MatrixXd rhs = -face_edge_pairing(f, k);
    if (br.cols() > 0) {
      const Eigen::Index first = pos(clc, layout(Space::Curl).component_offset(2, f, 0));
      rhs.middleCols(first, br.cols()) +=
          differential(Differential::VrotF, k).transpose() * vector_mass(M, 2, k - 1, k - 1) * br / h;
    }
    ops.curl = solve_checked(mass_block(M, 2, k, k), rhs, name + " curl");
  }

  // Tangential trace, tested against VROT_F P^{0,k+1}(F) and Rc^k(F)
  {
    const Eigen::MatrixXd &brc = basis(2, SubspaceKind::Rc, k);
    const Eigen::MatrixXd vm = vector_mass(M, 2, k, k);
    const Eigen::Index nr = nk1 - 1, nrc = brc.cols();
    Eigen::MatrixXd lhs(nr + nrc, 2 * nk);
    lhs.topRows(nr) = differential(Differential::VrotF, k + 1).rightCols(nr).transpose() * vm / h;
    lhs.bottomRows(nrc) = brc.transpose() * vm;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nr + nrc, static_cast<Eigen::Index>(clc.size()));
    rhs.topRows(nr) = (mass_block(M, 2, k + 1, k) * ops.curl + face_edge_pairing(f, k + 1)).bottomRows(nr);
    if (nrc > 0) {
      const Eigen::Index first = pos(clc, layout(Space::Curl).component_offset(2, f, 1));
      rhs.bottomRows(nrc).middleCols(first, nrc) = brc.transpose() * vm * brc;
    }
    ops.tangential_trace = solve_checked(lhs, rhs, name + " tangential trace");
  }
}

Eigen::MatrixXd DDRComplex::element_trace_pairing(std::size_t t, int m) const
{
  const int k = m_degree;
  const auto &clg = closure(Space::Grad, 3, t);
  const EntityData &td = entity(3, t);
  const Eigen::Index nm = n_poly(3, m);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(3 * nm, static_cast<Eigen::Index>(clg.size()));
  const auto &faces = m_mesh->element(t).faces;
  for (std::size_t j = 0; j < faces.size(); ++j) {
    const std::size_t f = faces[j];
    const double omega = m_orientation->elements[t].face_orientations[j];
    const Vector3 &n = m_orientation->faces[f].normal;
    const Eigen::MatrixXd trace = expand_columns(m_face_ops[f].trace, closure(Space::Grad, 2, f), clg);
    const EntityData &fd = entity(2, f);
    for (const auto &qp : fd.rule.points) {
      const Eigen::RowVectorXd value = monomial_values(fd.frame, k + 1, qp.point).transpose() * trace;
      const Eigen::VectorXd test = monomial_values(td.frame, m, qp.point);
      for (int c = 0; c < 3; ++c) {
        out.middleRows(c * nm, nm) += (omega * qp.weight * n(c)) * test * value;
      }
    }
  }
  return out;
}

Eigen::MatrixXd DDRComplex::element_tangential_pairing(std::size_t t, int m) const
{
  const int k = m_degree;
  const auto &clc = closure(Space::Curl, 3, t);
  const EntityData &td = entity(3, t);
  const Eigen::Index nm = n_poly(3, m), nf = n_poly(2, k);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(3 * nm, static_cast<Eigen::Index>(clc.size()));
  const auto &faces = m_mesh->element(t).faces;
  for (std::size_t j = 0; j < faces.size(); ++j) {
    const std::size_t f = faces[j];
    const double omega = m_orientation->elements[t].face_orientations[j];
    const FaceGeometry &fg = m_orientation->faces[f];
    const Eigen::MatrixXd trace =
        expand_columns(m_face_ops[f].tangential_trace, closure(Space::Curl, 2, f), clc);
    const EntityData &fd = entity(2, f);
    for (const auto &qp : fd.rule.points) {
      const Eigen::RowVectorXd phi = monomial_values(fd.frame, k, qp.point).transpose();
      const Eigen::RowVectorXd g1 = phi * trace.topRows(nf);
      const Eigen::RowVectorXd g2 = phi * trace.bottomRows(nf);
      const Eigen::VectorXd test = monomial_values(td.frame, m, qp.point);
      // (w x n_F) . g = w . (n_F x g), and n_F x g = g_1 tau2 - g_2 tau1
      for (int c = 0; c < 3; ++c) {
        out.middleRows(c * nm, nm) += (omega * qp.weight) * test * (fg.tau2(c) * g1 - fg.tau1(c) * g2);
      }
    }
  }
  return out;
}

Eigen::MatrixXd DDRComplex::element_face_pairing(std::size_t t, int m) const
{
  const int k = m_degree;
  const auto &cld = closure(Space::Div, 3, t);
  const EntityData &td = entity(3, t);
  const Eigen::Index nm = n_poly(3, m), nf = n_poly(2, k);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nm, static_cast<Eigen::Index>(cld.size()));
  const auto &faces = m_mesh->element(t).faces;
  for (std::size_t j = 0; j < faces.size(); ++j) {
    const std::size_t f = faces[j];
    const double omega = m_orientation->elements[t].face_orientations[j];
    const Eigen::Index first = pos(cld, layout(Space::Div).offset(2, f));
    const EntityData &fd = entity(2, f);
    for (const auto &qp : fd.rule.points) {
      out.middleCols(first, nf) += (omega * qp.weight) * monomial_values(td.frame, m, qp.point) *
                                   monomial_values(fd.frame, k, qp.point).transpose();
    }
  }
  return out;
}

void DDRComplex::build_element(std::size_t t)
{
  const int k = m_degree;
  const EntityData &td = entity(3, t);
  const auto &clg = closure(Space::Grad, 3, t);
  const auto &clc = closure(Space::Curl, 3, t);
  const auto &cld = closure(Space::Div, 3, t);
  const Eigen::MatrixXd &M = td.mass;
  const double h = td.frame.h;
  const Eigen::Index nk = n_poly(3, k), nkm = n_poly(3, k - 1), nk1 = n_poly(3, k + 1);
  const Eigen::MatrixXd vm = vector_mass(M, 3, k, k);
  const std::string name = "element " + std::to_string(t);
  ElementOperators &ops = m_element_ops[t];

  // Gradient
  {
    Eigen::MatrixXd rhs = element_trace_pairing(t, k);
    if (nkm > 0) {
      const Eigen::Index first = pos(clg, layout(Space::Grad).offset(3, t));
      const Eigen::MatrixXd mkm = mass_block(M, 3, k - 1, k - 1);
      for (int c = 0; c < 3; ++c) {
        rhs.block(c * nk, first, nk, nkm) -= (mkm * derivative(3, k, c)).transpose() / h;
      }
    }
    ops.gradient = solve_checked(vm, rhs, name + " gradient");
  }

  // Curl
  {
    const Eigen::MatrixXd &br = basis(3, SubspaceKind::R, k - 1);
    Eigen::MatrixXd rhs = element_tangential_pairing(t, k);
    if (br.cols() > 0) {
      const Eigen::Index first = pos(clc, layout(Space::Curl).component_offset(3, t, 0));
      rhs.middleCols(first, br.cols()) +=
          differential(Differential::Curl, k).transpose() * vector_mass(M, 3, k - 1, k - 1) * br / h;
    }
    ops.curl = solve_checked(vm, rhs, name + " curl");
  }

  // Vector potential from the curl, tested against CURL Gc^{k+1}(T) and Rc^k(T)
  {
    const Eigen::MatrixXd &bg = basis(3, SubspaceKind::Gc, k + 1);
    const Eigen::MatrixXd &brc = basis(3, SubspaceKind::Rc, k);
    const Eigen::Index ng = bg.cols(), nrc = brc.cols();
    Eigen::MatrixXd lhs(ng + nrc, 3 * nk);
    lhs.topRows(ng) = (differential(Differential::Curl, k + 1) * bg).transpose() * vm / h;
    lhs.bottomRows(nrc) = brc.transpose() * vm;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(ng + nrc, static_cast<Eigen::Index>(clc.size()));
    rhs.topRows(ng) =
        bg.transpose() * (vector_mass(M, 3, k + 1, k) * ops.curl - element_tangential_pairing(t, k + 1));
    if (nrc > 0) {
      const Eigen::Index first = pos(clc, layout(Space::Curl).component_offset(3, t, 1));
      rhs.bottomRows(nrc).middleCols(first, nrc) = brc.transpose() * vm * brc;
    }
    ops.curl_potential = solve_checked(lhs, rhs, name + " curl potential");
  }

  // Divergence
  {
    const Eigen::MatrixXd &bg = basis(3, SubspaceKind::G, k - 1);
    Eigen::MatrixXd rhs = element_face_pairing(t, k);
    if (bg.cols() > 0) {
      const Eigen::Index first = pos(cld, layout(Space::Div).component_offset(3, t, 0));
      rhs.middleCols(first, bg.cols()) -=
          differential(Differential::Grad, k).transpose() * vector_mass(M, 3, k - 1, k - 1) * bg / h;
    }
    ops.divergence = solve_checked(mass_block(M, 3, k, k), rhs, name + " divergence");
  }

  // Vector potential from the divergence, tested against GRAD P^{0,k+1}(T) and Gc^k(T)
  {
    const Eigen::MatrixXd &bgc = basis(3, SubspaceKind::Gc, k);
    const Eigen::Index nr = nk1 - 1, ngc = bgc.cols();
    Eigen::MatrixXd lhs(nr + ngc, 3 * nk);
    lhs.topRows(nr) = differential(Differential::Grad, k + 1).rightCols(nr).transpose() * vm / h;
    lhs.bottomRows(ngc) = bgc.transpose() * vm;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(nr + ngc, static_cast<Eigen::Index>(cld.size()));
    rhs.topRows(nr) = (element_face_pairing(t, k + 1) - mass_block(M, 3, k + 1, k) * ops.divergence).bottomRows(nr);
    if (ngc > 0) {
      const Eigen::Index first = pos(cld, layout(Space::Div).component_offset(3, t, 1));
      rhs.bottomRows(ngc).middleCols(first, ngc) = bgc.transpose() * vm * bgc;
    }
    ops.div_potential = solve_checked(lhs, rhs, name + " divergence potential");
  }
}

void DDRComplex::assemble()
{
  const int k = m_degree;
  const DofLayout &lg = layout(Space::Grad), &lc = layout(Space::Curl), &ld = layout(Space::Div),
                  &lp = layout(Space::L2);

  SparseBuilder grad(lc.dimension(), lg.dimension());
  SparseBuilder curl(ld.dimension(), lc.dimension());
  SparseBuilder div(lp.dimension(), ld.dimension());

  for (std::size_t e = 0; e < m_mesh->n_edges(); ++e) {
    grad.add_block(lc.offset(1, e), closure(Space::Grad, 1, e), m_edge_ops[e].gradient);
  }
  for (std::size_t f = 0; f < m_mesh->n_faces(); ++f) {
    const Eigen::MatrixXd &M = entity(2, f).mass;
    const auto &g = m_face_ops[f].gradient;
    grad.add_block(lc.component_offset(2, f, 0), closure(Space::Grad, 2, f),
                   projector(build_subspace_basis(2, SubspaceKind::R, k - 1), M, k) * g);
    grad.add_block(lc.component_offset(2, f, 1), closure(Space::Grad, 2, f),
                   projector(build_subspace_basis(2, SubspaceKind::Rc, k), M, k) * g);
    curl.add_block(ld.offset(2, f), closure(Space::Curl, 2, f), m_face_ops[f].curl);
  }
  for (std::size_t t = 0; t < m_mesh->n_elements(); ++t) {
    const Eigen::MatrixXd &M = entity(3, t).mass;
    const auto &ops = m_element_ops[t];
    grad.add_block(lc.component_offset(3, t, 0), closure(Space::Grad, 3, t),
                   projector(build_subspace_basis(3, SubspaceKind::R, k - 1), M, k) * ops.gradient);
    grad.add_block(lc.component_offset(3, t, 1), closure(Space::Grad, 3, t),
                   projector(build_subspace_basis(3, SubspaceKind::Rc, k), M, k) * ops.gradient);
    curl.add_block(ld.component_offset(3, t, 0), closure(Space::Curl, 3, t),
                   projector(build_subspace_basis(3, SubspaceKind::G, k - 1), M, k) * ops.curl);
    curl.add_block(ld.component_offset(3, t, 1), closure(Space::Curl, 3, t),
                   projector(build_subspace_basis(3, SubspaceKind::Gc, k), M, k) * ops.curl);
    div.add_block(lp.offset(3, t), closure(Space::Div, 3, t), ops.divergence);
  }

  m_gradient = {Space::Grad, Space::Curl, grad.build()};
  m_curl = {Space::Curl, Space::Div, curl.build()};
  m_divergence = {Space::Div, Space::L2, div.build()};
}

//------------------------------------------------------------------------------
// Interpolation and evaluation
//------------------------------------------------------------------------------

Eigen::VectorXd DDRComplex::interpolate_grad(const std::function<double(const Vector3 &)> &q) const
{
  const int k = m_degree;
  const DofLayout &lg = layout(Space::Grad);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lg.dimension()));
  for (std::size_t v = 0; v < m_mesh->n_vertices(); ++v) {
    out(static_cast<Eigen::Index>(lg.offset(0, v))) = q(m_mesh->vertex(v));
  }
  if (k == 0) {
    return out;
  }
  for (int d = 1; d <= 3; ++d) {
    const Eigen::Index n = n_poly(d, k - 1);
    for (std::size_t i = 0; i < m_mesh->n_entities(d); ++i) {
      const EntityData &data = entity(d, i);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
      for (const auto &qp : data.rule.points) {
        rhs += qp.weight * q(qp.point) * monomial_values(data.frame, k - 1, qp.point);
      }
      out.segment(static_cast<Eigen::Index>(lg.offset(d, i)), n) =
          solve_checked(mass_block(data.mass, d, k - 1, k - 1), rhs, "interpolation");
    }
  }
  return out;
}

double DDRComplex::evaluate(int d, std::size_t i, int degree, const Eigen::Ref<const Eigen::VectorXd> &c,
                            const Vector3 &x) const
{
  return monomial_values(entity(d, i).frame, degree, x).dot(c);
}

Vector3 DDRComplex::evaluate_vector(int d, std::size_t i, int degree, const Eigen::Ref<const Eigen::VectorXd> &c,
                                    const Vector3 &x) const
{
  const LocalFrame &frame = entity(d, i).frame;
  const Eigen::VectorXd phi = monomial_values(frame, degree, x);
  const Eigen::Index n = phi.size();
  Eigen::VectorXd z(frame.dim);
  for (int j = 0; j < frame.dim; ++j) {
    z(j) = phi.dot(c.segment(j * n, n));
  }
  return frame.to_physical(z);
}

//------------------------------------------------------------------------------
// Closed forms at degree 0
//------------------------------------------------------------------------------

ClosedForms ddr0_closed_forms(const Mesh &mesh, const OrientationTable &orientation)
{
  SparseBuilder grad(mesh.n_edges(), mesh.n_vertices());
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const double length = orientation.edges[e].length;
    grad.add(e, mesh.edge(e).vertices[0], -1.0 / length);
    grad.add(e, mesh.edge(e).vertices[1], 1.0 / length);
  }
  SparseBuilder curl(mesh.n_faces(), mesh.n_edges());
  for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
    const auto &fg = orientation.faces[f];
    const auto &edges = mesh.face(f).edges;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      curl.add(f, edges[i], -fg.edge_orientations[i] * orientation.edges[edges[i]].length / fg.area);
    }
  }
  SparseBuilder div(mesh.n_elements(), mesh.n_faces());
  for (std::size_t t = 0; t < mesh.n_elements(); ++t) {
    const auto &tg = orientation.elements[t];
    const auto &faces = mesh.element(t).faces;
    for (std::size_t j = 0; j < faces.size(); ++j) {
      div.add(t, faces[j], tg.face_orientations[j] * orientation.faces[faces[j]].area / tg.volume);
    }
  }
  return {grad.build(), curl.build(), div.build()};
}

} // namespace ddr
