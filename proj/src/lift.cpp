#include <ddr/lift.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include <ddr/errors.hpp>
#include <ddr/parallel.hpp>

namespace ddr {

namespace {

Eigen::Index n_poly(int d, int degree)
{
  return static_cast<Eigen::Index>(poly_dim(d, degree));
}

const Eigen::MatrixXd &basis(int d, SubspaceKind kind, int ell)
{
  return build_subspace_basis(d, kind, ell).values;
}

// Rows of a sparse map under construction; each entity fills its own rows.
class RowTable {
public:
  RowTable(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols) {}

  void set_block(std::size_t first_row, const std::vector<std::size_t> &columns, const Eigen::MatrixXd &block)
  {
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
      auto &row = m_rows[first_row + static_cast<std::size_t>(i)];
      row.clear();
      for (Eigen::Index j = 0; j < block.cols(); ++j) {
        if (block(i, j) != 0) {
          row.emplace_back(columns[static_cast<std::size_t>(j)], block(i, j));
        }
      }
    }
  }

  void set(std::size_t row, std::size_t col, double value) { m_rows[row] = {{col, value}}; }

  /// Dense restriction to the given rows and columns. Rows not filled yet are zero.
  Eigen::MatrixXd gather(const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols) const
  {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto &[col, value] : m_rows[rows[i]]) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(position_in(cols, col))) = value;
      }
    }
    return out;
  }

  SparseMatrix build() const
  {
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t i = 0; i < m_rows.size(); ++i) {
      for (const auto &[col, value] : m_rows[i]) {
        triplets.emplace_back(static_cast<int>(i), static_cast<int>(col), value);
      }
    }
    SparseMatrix m(static_cast<Eigen::Index>(m_rows.size()), static_cast<Eigen::Index>(m_cols));
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
  }

private:
  std::vector<std::vector<std::pair<std::size_t, double>>> m_rows;
  std::size_t m_cols;
};

// Dense block of a sparse matrix; `rows` and `cols` are sorted and entries outside `cols` must vanish.
Eigen::MatrixXd dense_block(const Eigen::SparseMatrix<double, Eigen::RowMajor> &m, const std::vector<std::size_t> &rows,
                            const std::vector<std::size_t> &cols)
{
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m, static_cast<Eigen::Index>(rows[i])); it; ++it) {
      if (it.value() != 0) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(position_in(cols, static_cast<std::size_t>(it.col())))) =
            it.value();
      }
    }
  }
  return out;
}

// Averages of the leading component: weights int m_i / int m_0 over P^k of the entity.
Eigen::RowVectorXd mean_weights(const DDRComplex &ddr, int d, std::size_t i)
{
  const Eigen::MatrixXd &M = ddr.entity(d, i).mass;
  const Eigen::Index n = n_poly(d, ddr.degree());
  return M.row(0).head(n) / M(0, 0);
}

} // namespace

SpaceMaps build_reductions(const DDRComplex &ddr)
{
  const Mesh &mesh = ddr.mesh();
  SpaceMaps r;
  const DofLayout &lg = ddr.layout(Space::Grad);
  SparseBuilder grad(mesh.n_vertices(), lg.dimension());
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
    grad.add(v, lg.offset(0, v), 1.0);
  }
  r[Space::Grad] = grad.build();
  const std::array<std::pair<Space, int>, 3> averaged = {{{Space::Curl, 1}, {Space::Div, 2}, {Space::L2, 3}}};
  for (const auto &[space, d] : averaged) {
    const DofLayout &layout = ddr.layout(space);
    SparseBuilder b(mesh.n_entities(d), layout.dimension());
    for (std::size_t i = 0; i < mesh.n_entities(d); ++i) {
      const Eigen::RowVectorXd w = mean_weights(ddr, d, i);
      for (Eigen::Index j = 0; j < w.size(); ++j) {
        if (w(j) != 0) {
          b.add(i, layout.offset(d, i) + static_cast<std::size_t>(j), w(j));
        }
      }
    }
    r[space] = b.build();
  }
  return r;
}

SpaceMaps build_extensions(const DDRComplex &ddr, const DDRComplex &ddr0)
{
  const Mesh &mesh = ddr.mesh();
  const int k = ddr.degree();
  if (ddr0.degree() != 0 || &ddr0.mesh() != &mesh) {
    throw DomainError("extensions need the degree-0 complex on the same mesh");
  }
  const DofLayout &lg = ddr.layout(Space::Grad), &lc = ddr.layout(Space::Curl), &ld = ddr.layout(Space::Div),
                  &lp = ddr.layout(Space::L2);
  RowTable eg(lg.dimension(), mesh.n_vertices());
  RowTable ec(lc.dimension(), mesh.n_edges());
  RowTable ed(ld.dimension(), mesh.n_faces());
  RowTable ep(lp.dimension(), mesh.n_elements());

  const Eigen::SparseMatrix<double, Eigen::RowMajor> grad0 = ddr0.gradient().matrix;
  const Eigen::SparseMatrix<double, Eigen::RowMajor> curl0 = ddr0.curl().matrix;

  // Vertices and lowest-order components
  for (std::size_t v = 0; v < mesh.n_vertices(); ++v) {
    eg.set(lg.offset(0, v), v, 1.0);
  }
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    ec.set(lc.offset(1, e), e, 1.0);
  }
  for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
    ed.set(ld.offset(2, f), f, 1.0);
  }
  for (std::size_t t = 0; t < mesh.n_elements(); ++t) {
    ep.set(lp.offset(3, t), t, 1.0);
  }

  // Edges: G_E^k(E q) = G_E^0 q
  if (k > 0) {
    parallel_for(mesh.n_edges(), [&](std::size_t e) {
      const EntityData &data = ddr.entity(1, e);
      const Eigen::MatrixXd &M = data.mass;
      const Eigen::Index nk = n_poly(1, k);
      const Vector3 &x1 = mesh.vertex(mesh.edge(e).vertices[0]);
      const Vector3 &x2 = mesh.vertex(mesh.edge(e).vertices[1]);
      const Eigen::MatrixXd lhs =
          (mass_block(M, 1, k - 1, k - 1) * derivative_matrix(1, k, 0)).transpose().bottomRows(nk - 1) / data.frame.h;
      Eigen::MatrixXd rhs(nk, 2);
      rhs.col(0) = -monomial_values(data.frame, k, x1);
      rhs.col(1) = monomial_values(data.frame, k, x2);
      rhs -= mass_block(M, 1, k, 0) * ddr0.edge_operators(e).gradient;
      eg.set_block(lg.offset(1, e), ddr0.closure(Space::Grad, 1, e),
                   solve_checked(lhs, rhs.bottomRows(nk - 1), "edge " + std::to_string(e) + " gradient extension"));
    });
  }

  // Faces
  parallel_for(mesh.n_faces(), [&](std::size_t f) {
    const EntityData &data = ddr.entity(2, f);
    const Eigen::MatrixXd &M = data.mass;
    const double h = data.frame.h;
    const Eigen::Index nk = n_poly(2, k);
    const std::string name = "face " + std::to_string(f);
    const FaceOperators &ops0 = ddr0.face_operators(f);
    const auto &clg0 = ddr0.closure(Space::Grad, 2, f), &clc0 = ddr0.closure(Space::Curl, 2, f);
    const auto &clg = ddr.closure(Space::Grad, 2, f), &clc = ddr.closure(Space::Curl, 2, f);
    // tangential trace of the degree-0 gradient: gamma_t^0 uG^0 q
    const Eigen::MatrixXd gt0 = ops0.tangential_trace * dense_block(grad0, clc0, clg0);

    if (k > 0) {
      // Gradient: int G_F^k(E q) . w = int gamma_t^0(uG^0 q) . w for w in Rc^k(F)
      const Eigen::MatrixXd &brc = basis(2, SubspaceKind::Rc, k);
      const Eigen::MatrixXd lhs =
          (differential_matrix(Differential::DivF, k) * brc).transpose() * mass_block(M, 2, k - 1, k - 1) / h;
      const Eigen::MatrixXd rhs =
          brc.transpose() * (ddr.face_trace_pairing(f, k) * eg.gather(clg, clg0) - vector_mass(M, 2, k, 0) * gt0);
      eg.set_block(lg.offset(2, f), clg0, solve_checked(lhs, rhs, name + " gradient extension"));

      // Curl, R^{k-1} component: C_F^k(E v) = C_F^0 v, tested against non-constant P^k(F)
      const Eigen::MatrixXd &br = basis(2, SubspaceKind::R, k - 1);
      const Eigen::MatrixXd lhs_r = differential_matrix(Differential::VrotF, k).rightCols(nk - 1).transpose() *
                                    vector_mass(M, 2, k - 1, k - 1) * br / h;
      const Eigen::MatrixXd rhs_r =
          (mass_block(M, 2, k, 0) * ops0.curl + ddr.face_edge_pairing(f, k) * ec.gather(clc, clc0)).bottomRows(nk - 1);
      ec.set_block(lc.component_offset(2, f, 0), clc0, solve_checked(lhs_r, rhs_r, name + " curl extension"));
    }
    // Curl, Rc^k component
    const Eigen::MatrixXd prc = projector(build_subspace_basis(2, SubspaceKind::Rc, k), M, 0);
    if (prc.rows() > 0) {
      ec.set_block(lc.component_offset(2, f, 1), clc0, prc * ops0.tangential_trace);
    }
  });

  // Elements
  parallel_for(mesh.n_elements(), [&](std::size_t t) {
    const EntityData &data = ddr.entity(3, t);
    const Eigen::MatrixXd &M = data.mass;
    const double h = data.frame.h;
    const Eigen::Index nk = n_poly(3, k);
    const std::string name = "element " + std::to_string(t);
    const ElementOperators &ops0 = ddr0.element_operators(t);
    const auto &clg0 = ddr0.closure(Space::Grad, 3, t), &clc0 = ddr0.closure(Space::Curl, 3, t),
               &cld0 = ddr0.closure(Space::Div, 3, t);
    const auto &clg = ddr.closure(Space::Grad, 3, t), &clc = ddr.closure(Space::Curl, 3, t),
               &cld = ddr.closure(Space::Div, 3, t);
    const Eigen::MatrixXd pc0 = ops0.curl_potential * dense_block(grad0, clc0, clg0); // P_curl^0 uG^0 q
    const Eigen::MatrixXd pd0 = ops0.div_potential * dense_block(curl0, cld0, clc0);  // P_div^0 uC^0 v

    if (k > 0) {
      // Gradient, tested against Rc^k(T)
      const Eigen::MatrixXd &brc = basis(3, SubspaceKind::Rc, k);
      const Eigen::MatrixXd lhs =
          (differential_matrix(Differential::Div, k) * brc).transpose() * mass_block(M, 3, k - 1, k - 1) / h;
      const Eigen::MatrixXd rhs =
          brc.transpose() * (ddr.element_trace_pairing(t, k) * eg.gather(clg, clg0) - vector_mass(M, 3, k, 0) * pc0);
      eg.set_block(lg.offset(3, t), clg0, solve_checked(lhs, rhs, name + " gradient extension"));

      // Curl, R^{k-1} component, tested against Gc^k(T)
      const Eigen::MatrixXd &bgc = basis(3, SubspaceKind::Gc, k);
      const Eigen::MatrixXd &br = basis(3, SubspaceKind::R, k - 1);
      const Eigen::MatrixXd lhs_r = (differential_matrix(Differential::Curl, k) * bgc).transpose() *
                                    vector_mass(M, 3, k - 1, k - 1) * br / h;
      const Eigen::MatrixXd rhs_r =
          bgc.transpose() *
          (vector_mass(M, 3, k, 0) * pd0 - ddr.element_tangential_pairing(t, k) * ec.gather(clc, clc0));
      ec.set_block(lc.component_offset(3, t, 0), clc0, solve_checked(lhs_r, rhs_r, name + " curl extension"));

      // Divergence, G^{k-1} component, tested against non-constant P^k(T)
      const Eigen::MatrixXd &bg = basis(3, SubspaceKind::G, k - 1);
      const Eigen::MatrixXd lhs_g = differential_matrix(Differential::Grad, k).rightCols(nk - 1).transpose() *
                                    vector_mass(M, 3, k - 1, k - 1) * bg / h;
      const Eigen::MatrixXd rhs_g =
          (ddr.element_face_pairing(t, k) * ed.gather(cld, cld0) - mass_block(M, 3, k, 0) * ops0.divergence)
              .bottomRows(nk - 1);
      ed.set_block(ld.component_offset(3, t, 0), cld0, solve_checked(lhs_g, rhs_g, name + " divergence extension"));
    }
    const Eigen::MatrixXd prc = projector(build_subspace_basis(3, SubspaceKind::Rc, k), M, 0);
    if (prc.rows() > 0) {
      ec.set_block(lc.component_offset(3, t, 1), clc0, prc * ops0.curl_potential);
    }
    const Eigen::MatrixXd pgc = projector(build_subspace_basis(3, SubspaceKind::Gc, k), M, 0);
    if (pgc.rows() > 0) {
      ed.set_block(ld.component_offset(3, t, 1), cld0, pgc * ops0.div_potential);
    }
  });

  SpaceMaps out;
  out[Space::Grad] = eg.build();
  out[Space::Curl] = ec.build();
  out[Space::Div] = ed.build();
  out[Space::L2] = ep.build();
  return out;
}

SpaceMaps zero_reduction_bases(const DDRComplex &ddr)
{
  const Mesh &mesh = ddr.mesh();
  SpaceMaps out;
  // Gradient space: everything but the vertex values
  {
    const DofLayout &lg = ddr.layout(Space::Grad);
    const std::size_t first = lg.offset(1, 0);
    SparseBuilder b(lg.dimension(), lg.dimension() - first);
    for (std::size_t i = first; i < lg.dimension(); ++i) {
      b.add(i, i - first, 1.0);
    }
    out[Space::Grad] = b.build();
  }
  const std::array<std::pair<Space, int>, 3> averaged = {{{Space::Curl, 1}, {Space::Div, 2}, {Space::L2, 3}}};
  for (const auto &[space, d] : averaged) {
    const DofLayout &layout = ddr.layout(space);
    const std::size_t n_leading = static_cast<std::size_t>(n_poly(d, ddr.degree()));
    const std::size_t n_entities = mesh.n_entities(d);
    const std::size_t cols = layout.dimension() - n_entities;
    SparseBuilder b(layout.dimension(), cols);
    std::size_t col = 0;
    for (std::size_t i = 0; i < n_entities; ++i) {
      const Eigen::RowVectorXd w = mean_weights(ddr, d, i);
      const std::size_t first = layout.offset(d, i);
      // e_j - (w_j / w_0) e_0 for the leading P^k block, unit vectors for the rest
      for (std::size_t j = 1; j < layout.local_dim(d); ++j, ++col) {
        b.add(first + j, col, 1.0);
        if (j < n_leading && w(static_cast<Eigen::Index>(j)) != 0) {
          b.add(first, col, -w(static_cast<Eigen::Index>(j)));
        }
      }
    }
    for (std::size_t i = layout.offset(d, n_entities); i < layout.dimension(); ++i, ++col) {
      b.add(i, col, 1.0);
    }
    if (col != cols) {
      throw InternalError("zero-reduction basis has the wrong size");
    }
    out[space] = b.build();
  }
  return out;
}

LiftedGenerators lift_generators(const DDRComplex &ddr, const SpaceMaps &extensions, const RationalMatrix &generators,
                                 const DeRhamScaling &scaling, int i, const RankOptions &options)
{
  if (i != 1 && i != 2) {
    throw DomainError("generators are lifted for i = 1 or i = 2");
  }
  const Space space = i == 1 ? Space::Curl : Space::Div;
  const SparseMatrix &outgoing = i == 1 ? ddr.curl().matrix : ddr.divergence().matrix;
  const SparseMatrix &incoming = i == 1 ? ddr.gradient().matrix : ddr.curl().matrix;
  const Eigen::MatrixXd g_cw = generators.to_double();
  if (g_cw.rows() != static_cast<Eigen::Index>(ddr.mesh().n_entities(i))) {
    throw DomainError("generator size does not match the number of mesh entities");
  }

  LiftedGenerators out;
  out.index = i;
  const double d_max = std::max(max_abs(outgoing), 1e-300);
  for (Eigen::Index j = 0; j < g_cw.cols(); ++j) {
    const Eigen::VectorXd v0 = de_rham_map(scaling, false, i, g_cw.col(j));
    Eigen::VectorXd v = extensions[space] * v0;
    const Eigen::VectorXd dv = outgoing * v;
    out.kernel_residual =
        std::max(out.kernel_residual, dv.lpNorm<Eigen::Infinity>() / (d_max * std::max(v.lpNorm<Eigen::Infinity>(), 1e-300)));
    out.vectors.push_back(std::move(v));
  }

  RankOptions image_options = options;
  image_options.range_basis = true;
  const RankResult image = numeric_rank(Eigen::MatrixXd(incoming), image_options);
  out.image_rank = image.rank;
  Eigen::MatrixXd combined(image.range.rows(), image.range.cols() + g_cw.cols());
  combined.leftCols(image.range.cols()) = image.range;
  for (Eigen::Index j = 0; j < g_cw.cols(); ++j) {
    combined.col(image.range.cols() + j) = out.vectors[static_cast<std::size_t>(j)].normalized();
  }
  const RankResult both = numeric_rank(combined, options);
  out.combined_rank = both.rank;
  out.gap = std::min(image.gap, both.gap);
  out.certified = out.kernel_residual <= 1e-9 && out.combined_rank == out.image_rank + out.vectors.size() && !both.ambiguous &&
                  !image.ambiguous;
  return out;
}

} // namespace ddr
