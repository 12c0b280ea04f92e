#ifndef DDR_MESH_HPP
#define DDR_MESH_HPP

// Polyhedral meshes, voxel test meshes, the JSON mesh format, and the
// orientation/measure table consumed by the discrete operators.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ddr {

using Vector3 = Eigen::Vector3d;

struct MeshEdge {
  std::array<std::size_t, 2> vertices; // vertices[0] < vertices[1]
};

struct MeshFace {
  std::vector<std::size_t> loop;       // counter-clockwise around the face normal
  std::vector<std::size_t> edges;      // edges[i] joins loop[i] and loop[i+1]
  std::vector<int> loop_signs;         // +1 if the loop runs along edges[i] from its lower to its higher vertex
  std::vector<std::size_t> vertices;   // sorted
};

struct MeshElement {
  std::vector<std::size_t> faces;      // as given
  std::vector<std::size_t> edges;      // sorted
  std::vector<std::size_t> vertices;   // sorted
};

/// Immutable polyhedral mesh. Edges are derived from the face loops and
/// sorted lexicographically by (lower, higher) vertex index.
class Mesh {
public:
  Mesh(std::vector<Vector3> vertices, std::vector<std::vector<std::size_t>> face_loops,
       std::vector<std::vector<std::size_t>> element_faces);

  std::size_t n_vertices() const { return m_vertices.size(); }
  std::size_t n_edges() const { return m_edges.size(); }
  std::size_t n_faces() const { return m_faces.size(); }
  std::size_t n_elements() const { return m_elements.size(); }

  /// Number of entities of dimension `d` (0..3).
  std::size_t n_entities(int d) const;

  const Vector3 &vertex(std::size_t i) const { return m_vertices[i]; }
  const MeshEdge &edge(std::size_t i) const { return m_edges[i]; }
  const MeshFace &face(std::size_t i) const { return m_faces[i]; }
  const MeshElement &element(std::size_t i) const { return m_elements[i]; }

  const std::vector<Vector3> &vertices() const { return m_vertices; }

  const std::vector<std::size_t> &edge_faces(std::size_t e) const { return m_edge_faces[e]; }
  const std::vector<std::size_t> &face_elements(std::size_t f) const { return m_face_elements[f]; }
  const std::vector<std::size_t> &vertex_edges(std::size_t v) const { return m_vertex_edges[v]; }

  /// Index of edge {a, b}, or n_edges() if absent.
  std::size_t find_edge(std::size_t a, std::size_t b) const;

  /// V - E + F - T
  long euler_characteristic() const;

private:
  std::vector<Vector3> m_vertices;
  std::vector<MeshEdge> m_edges;
  std::vector<MeshFace> m_faces;
  std::vector<MeshElement> m_elements;
  std::vector<std::vector<std::size_t>> m_edge_faces;
  std::vector<std::vector<std::size_t>> m_face_elements;
  std::vector<std::vector<std::size_t>> m_vertex_edges;
};

//------------------------------------------------------------------------------
// Voxel meshes
//------------------------------------------------------------------------------

/// Boolean occupancy grid; cell (i,j,k) spans [i,i+1]x[j,j+1]x[k,k+1] times the cell size.
struct VoxelPattern {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  std::vector<bool> occupied; // index i + nx*(j + ny*k)

  VoxelPattern() = default;
  VoxelPattern(int nx_, int ny_, int nz_, bool fill = true);

  bool at(int i, int j, int k) const;
  void set(int i, int j, int k, bool value);

  /// Builtin patterns: "cube" (1x1x1), "ring" (3x3x1 minus centre), "cavity" (3x3x3 minus centre).
  static VoxelPattern builtin(const std::string &name);

  /// Text format: one character per cell ('1' or '#' occupied, '0' or '.' empty),
  /// one line per row along y, blank lines between z-layers.
  static VoxelPattern parse(const std::string &text);
};

Mesh build_voxel_mesh(const VoxelPattern &pattern, double h);

//------------------------------------------------------------------------------
// JSON mesh format
//------------------------------------------------------------------------------

Mesh load_mesh(const std::string &document);
std::string write_mesh(const Mesh &mesh);

//------------------------------------------------------------------------------
// Orientation and measures
//------------------------------------------------------------------------------

struct EdgeGeometry {
  Vector3 tangent;   // from lower to higher vertex index
  double length = 0;
  Vector3 midpoint;
};

struct FaceGeometry {
  Vector3 normal;    // Newell normal of the stored loop
  Vector3 tau1;      // tau1 x tau2 = normal
  Vector3 tau2;
  double area = 0;
  double diameter = 0;
  Vector3 center;
  std::vector<Vector3> edge_normals; // n_FE = n_F x t_E, parallel to MeshFace::edges
  std::vector<int> edge_orientations; // omega_FE, parallel to MeshFace::edges
};

struct ElementGeometry {
  double volume = 0;
  double diameter = 0;
  Vector3 center;
  std::vector<int> face_orientations; // omega_TF, parallel to MeshElement::faces
};

struct OrientationTable {
  std::vector<EdgeGeometry> edges;
  std::vector<FaceGeometry> faces;
  std::vector<ElementGeometry> elements;

  /// omega_FE for global ids; throws if E is not an edge of F.
  int omega_fe(const Mesh &mesh, std::size_t f, std::size_t e) const;
  /// omega_TF for global ids; throws if F is not a face of T.
  int omega_tf(const Mesh &mesh, std::size_t t, std::size_t f) const;
};

OrientationTable compute_orientation(const Mesh &mesh);

/// Deliberate corruption of an orientation table, used to check that the
/// verification battery notices broken inputs.
struct OrientationFault {
  enum class Kind { FlipElementFace, FlipFaceEdge, ScaleEdgeLength };
  Kind kind = Kind::FlipElementFace;
  std::size_t primary = 0;   // element (FlipElementFace), face (FlipFaceEdge) or edge (ScaleEdgeLength)
  std::size_t secondary = 0; // face (FlipElementFace) or edge (FlipFaceEdge)
  double factor = 1.0;       // ScaleEdgeLength only
};

void apply_fault(const Mesh &mesh, OrientationTable &table, const OrientationFault &fault);

/// Optional "faults" array of a mesh document; empty when absent.
std::vector<OrientationFault> load_faults(const std::string &document);

} // namespace ddr

#endif
