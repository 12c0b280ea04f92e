#ifndef DDR_DDR_OPERATORS_HPP
#define DDR_DDR_OPERATORS_HPP

// Local and global operators of the discrete de Rham complex of degree k.
//
// Every local operator is a dense matrix acting on the unknowns of the closure
// of its entity, listed in the order returned by DofLayout::closure_dofs, and
// producing coefficients over the scaled monomial basis of the entity (face
// vectors use the components along the face frame (tau1, tau2), element
// vectors the Cartesian components).

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include <ddr/layout.hpp>
#include <ddr/linalg.hpp>
#include <ddr/mesh.hpp>
#include <ddr/poly.hpp>
#include <ddr/quadrature.hpp>

namespace ddr {

struct EdgeOperators {
  Eigen::MatrixXd trace;    // gamma_E^{k+1}: Xgrad(E) -> P^{k+1}(E)
  Eigen::MatrixXd gradient; // G_E^k: Xgrad(E) -> P^k(E)
};

struct FaceOperators {
  Eigen::MatrixXd gradient;         // G_F^k: Xgrad(F) -> vP^k(F)
  Eigen::MatrixXd trace;            // gamma_F^{k+1}: Xgrad(F) -> P^{k+1}(F)
  Eigen::MatrixXd curl;             // C_F^k: Xcurl(F) -> P^k(F)
  Eigen::MatrixXd tangential_trace; // gamma_{t,F}^k: Xcurl(F) -> vP^k(F)
};

struct ElementOperators {
  Eigen::MatrixXd gradient;       // G_T^k: Xgrad(T) -> vP^k(T)
  Eigen::MatrixXd curl;           // C_T^k: Xcurl(T) -> vP^k(T)
  Eigen::MatrixXd curl_potential; // P_curl^k: Xcurl(T) -> vP^k(T)
  Eigen::MatrixXd divergence;     // D_T^k: Xdiv(T) -> P^k(T)
  Eigen::MatrixXd div_potential;  // P_div^k: Xdiv(T) -> vP^k(T)
};

struct GlobalOperator {
  Space source;
  Space target;
  SparseMatrix matrix;
};

/// Geometric data attached to one entity.
struct EntityData {
  LocalFrame frame;
  QuadratureRule rule;
  Eigen::MatrixXd mass; // scalar monomials of degree <= k+2
};

class DDRComplex {
public:
  DDRComplex(const Mesh &mesh, const OrientationTable &orientation, int k);

  int degree() const { return m_degree; }
  const Mesh &mesh() const { return *m_mesh; }
  const OrientationTable &orientation() const { return *m_orientation; }
  const DofLayout &layout(Space space) const { return m_layouts[static_cast<std::size_t>(space)]; }

  /// Exactness of the stored quadrature rules.
  int quadrature_degree() const { return 2 * m_degree + 4; }

  const EntityData &entity(int d, std::size_t i) const { return m_entities[static_cast<std::size_t>(d)][i]; }
  const std::vector<std::size_t> &closure(Space space, int d, std::size_t i) const;

  const EdgeOperators &edge_operators(std::size_t e) const { return m_edge_ops[e]; }
  const FaceOperators &face_operators(std::size_t f) const { return m_face_ops[f]; }
  const ElementOperators &element_operators(std::size_t t) const { return m_element_ops[t]; }

  const GlobalOperator &gradient() const { return m_gradient; }
  const GlobalOperator &curl() const { return m_curl; }
  const GlobalOperator &divergence() const { return m_divergence; }

  /// Interpolate of a scalar field in the gradient space.
  Eigen::VectorXd interpolate_grad(const std::function<double(const Vector3 &)> &q) const;

  /// Value at `x` of the polynomial with coefficients `c` on entity (d, i).
  double evaluate(int d, std::size_t i, int degree, const Eigen::Ref<const Eigen::VectorXd> &c, const Vector3 &x) const;
  /// Physical value at `x` of a vector polynomial on a face or element.
  Vector3 evaluate_vector(int d, std::size_t i, int degree, const Eigen::Ref<const Eigen::VectorXd> &c,
                          const Vector3 &x) const;

  /// Boundary terms of the local operators against test monomials of degree `m`,
  /// acting on the closure unknowns: sum over the boundary of
  /// omega * int trace * (test . n) (face_trace, element_trace),
  /// omega * int v_E * test (face_edge), omega * int gamma_t . (test x n)
  /// (element_tangential) and omega * int w_F * test (element_face).
  Eigen::MatrixXd face_trace_pairing(std::size_t f, int m) const;
  Eigen::MatrixXd face_edge_pairing(std::size_t f, int m) const;
  Eigen::MatrixXd element_trace_pairing(std::size_t t, int m) const;
  Eigen::MatrixXd element_tangential_pairing(std::size_t t, int m) const;
  Eigen::MatrixXd element_face_pairing(std::size_t t, int m) const;

private:
  void build_entities();
  void build_edge(std::size_t e);
  void build_face(std::size_t f);
  void build_element(std::size_t t);
  void assemble();

  const Mesh *m_mesh;
  const OrientationTable *m_orientation;
  int m_degree;
  std::vector<DofLayout> m_layouts;
  std::array<std::vector<EntityData>, 4> m_entities;
  std::array<std::array<std::vector<std::vector<std::size_t>>, 4>, 3> m_closures; // [space][d][i]
  std::vector<EdgeOperators> m_edge_ops;
  std::vector<FaceOperators> m_face_ops;
  std::vector<ElementOperators> m_element_ops;
  GlobalOperator m_gradient;
  GlobalOperator m_curl;
  GlobalOperator m_divergence;
};

/// Columns of `m` are indexed by the sorted list `from`; the result has its
/// columns indexed by the sorted list `to`, which must contain `from`.
Eigen::MatrixXd expand_columns(const Eigen::MatrixXd &m, const std::vector<std::size_t> &from,
                               const std::vector<std::size_t> &to);

/// Sparse matrix from dense row blocks placed at the given global rows and columns.
class SparseBuilder {
public:
  SparseBuilder(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols) {}
  void add_block(std::size_t first_row, const std::vector<std::size_t> &columns, const Eigen::MatrixXd &block);
  void add(std::size_t row, std::size_t col, double value);
  SparseMatrix build() const;

private:
  std::size_t m_rows;
  std::size_t m_cols;
  std::vector<Eigen::Triplet<double>> m_triplets;
};

/// Degree-0 operators written directly from the entity measures and orientations:
/// G_E = (q_V2 - q_V1)/|E|, C_F = -(1/|F|) sum omega_FE |E| v_E, D_T = (1/|T|) sum omega_TF |F| w_F.
struct ClosedForms {
  SparseMatrix gradient;
  SparseMatrix curl;
  SparseMatrix divergence;
};

ClosedForms ddr0_closed_forms(const Mesh &mesh, const OrientationTable &orientation);

} // namespace ddr

#endif
