#include <ddr/mesh.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include <ddr/errors.hpp>

namespace ddr {

namespace {

std::string face_label(std::size_t f)
{
  return "face " + std::to_string(f);
}

} // namespace

//------------------------------------------------------------------------------
// Mesh
//------------------------------------------------------------------------------

Mesh::Mesh(std::vector<Vector3> vertices, std::vector<std::vector<std::size_t>> face_loops,
           std::vector<std::vector<std::size_t>> element_faces)
    : m_vertices(std::move(vertices))
{
  const std::size_t nv = m_vertices.size();
  if (nv == 0 || face_loops.empty() || element_faces.empty()) {
    throw TopologyError("mesh must contain vertices, faces and elements");
  }

  // Face loops
  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  for (std::size_t f = 0; f < face_loops.size(); ++f) {
    const auto &loop = face_loops[f];
    for (auto v : loop) {
      if (v >= nv) {
        throw ReferenceError(face_label(f) + ": vertex index " + std::to_string(v) + " out of range (" +
                             std::to_string(nv) + " vertices)");
      }
    }
    if (loop.size() < 3) {
      throw ParseError(face_label(f) + ": degenerate loop (fewer than 3 vertices)");
    }
    for (std::size_t i = 0; i < loop.size(); ++i) {
      if (loop[i] == loop[(i + 1) % loop.size()]) {
        throw ParseError(face_label(f) + ": degenerate loop (repeated consecutive vertex " + std::to_string(loop[i]) +
                         ")");
      }
    }
    std::vector<std::size_t> sorted(loop);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(face_label(f) + ": degenerate loop (vertex visited twice)");
    }
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const std::size_t a = loop[i], b = loop[(i + 1) % loop.size()];
      edge_set.emplace(std::min(a, b), std::max(a, b));
    }
  }
  for (const auto &[a, b] : edge_set) {
    m_edges.push_back(MeshEdge{{a, b}});
  }

  m_faces.resize(face_loops.size());
  m_edge_faces.resize(m_edges.size());
  for (std::size_t f = 0; f < face_loops.size(); ++f) {
    MeshFace &face = m_faces[f];
    face.loop = face_loops[f];
    const std::size_t n = face.loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = face.loop[i], b = face.loop[(i + 1) % n];
      const std::size_t e = find_edge(a, b);
      face.edges.push_back(e);
      face.loop_signs.push_back(a < b ? 1 : -1);
      m_edge_faces[e].push_back(f);
    }
    std::set<std::size_t> distinct_edges(face.edges.begin(), face.edges.end());
    if (distinct_edges.size() != n) {
      throw ParseError(face_label(f) + ": degenerate loop (edge used twice)");
    }
    face.vertices = face.loop;
    std::sort(face.vertices.begin(), face.vertices.end());
  }

  // Elements
  m_face_elements.resize(m_faces.size());
  m_elements.resize(element_faces.size());
  for (std::size_t t = 0; t < element_faces.size(); ++t) {
    MeshElement &el = m_elements[t];
    el.faces = element_faces[t];
    if (el.faces.size() < 4) {
      throw TopologyError("element " + std::to_string(t) + ": fewer than 4 faces");
    }
    for (auto f : el.faces) {
      if (f >= m_faces.size()) {
        throw ReferenceError("element " + std::to_string(t) + ": face index " + std::to_string(f) +
                             " out of range (" + std::to_string(m_faces.size()) + " faces)");
      }
    }
    std::set<std::size_t> distinct(el.faces.begin(), el.faces.end());
    if (distinct.size() != el.faces.size()) {
      throw TopologyError("element " + std::to_string(t) + ": repeated face");
    }
    std::map<std::size_t, int> edge_count;
    std::set<std::size_t> verts;
    for (auto f : el.faces) {
      m_face_elements[f].push_back(t);
      for (auto e : m_faces[f].edges) {
        ++edge_count[e];
      }
      verts.insert(m_faces[f].loop.begin(), m_faces[f].loop.end());
    }
    for (const auto &[e, c] : edge_count) {
      if (c != 2) {
        throw TopologyError("element " + std::to_string(t) + ": boundary not closed at edge " + std::to_string(e));
      }
      el.edges.push_back(e);
    }
    el.vertices.assign(verts.begin(), verts.end());
  }
  for (std::size_t f = 0; f < m_faces.size(); ++f) {
    const auto c = m_face_elements[f].size();
    if (c == 0) {
      throw TopologyError(face_label(f) + ": not referenced by any element");
    }
    if (c >= 3) {
      throw TopologyError(face_label(f) + ": referenced by " + std::to_string(c) + " elements");
    }
  }

  // Vertex-edge graph must be connected (and cover every vertex)
  m_vertex_edges.resize(nv);
  for (std::size_t e = 0; e < m_edges.size(); ++e) {
    m_vertex_edges[m_edges[e].vertices[0]].push_back(e);
    m_vertex_edges[m_edges[e].vertices[1]].push_back(e);
  }
  std::vector<bool> seen(nv, false);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (auto e : m_vertex_edges[v]) {
      const auto &ev = m_edges[e].vertices;
      const std::size_t w = ev[0] == v ? ev[1] : ev[0];
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push(w);
      }
    }
  }
  if (reached != nv) {
    throw TopologyError("vertex-edge graph is disconnected (" + std::to_string(nv - reached) +
                        " vertices unreachable)");
  }
}

std::size_t Mesh::n_entities(int d) const
{
  switch (d) {
  case 0:
    return n_vertices();
  case 1:
    return n_edges();
  case 2:
    return n_faces();
  case 3:
    return n_elements();
  default:
    throw DomainError("entity dimension must be in 0..3");
  }
}

std::size_t Mesh::find_edge(std::size_t a, std::size_t b) const
{
  const MeshEdge key{{std::min(a, b), std::max(a, b)}};
  auto it = std::lower_bound(m_edges.begin(), m_edges.end(), key,
                             [](const MeshEdge &x, const MeshEdge &y) { return x.vertices < y.vertices; });
  if (it != m_edges.end() && it->vertices == key.vertices) {
    return static_cast<std::size_t>(it - m_edges.begin());
  }
  return m_edges.size();
}

long Mesh::euler_characteristic() const
{
  return static_cast<long>(n_vertices()) - static_cast<long>(n_edges()) + static_cast<long>(n_faces()) -
         static_cast<long>(n_elements());
}

//------------------------------------------------------------------------------
// Voxel meshes
//------------------------------------------------------------------------------

VoxelPattern::VoxelPattern(int nx_, int ny_, int nz_, bool fill)
    : nx(nx_), ny(ny_), nz(nz_), occupied(static_cast<std::size_t>(std::max(0, nx_ * ny_ * nz_)), fill)
{
}

bool VoxelPattern::at(int i, int j, int k) const
{
  if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) {
    return false;
  }
  return occupied[static_cast<std::size_t>(i + nx * (j + ny * k))];
}

void VoxelPattern::set(int i, int j, int k, bool value)
{
  occupied.at(static_cast<std::size_t>(i + nx * (j + ny * k))) = value;
}

VoxelPattern VoxelPattern::builtin(const std::string &name)
{
  if (name == "cube") {
    return VoxelPattern(1, 1, 1);
  }
  if (name == "ring") {
    VoxelPattern p(3, 3, 1);
    p.set(1, 1, 0, false);
    return p;
  }
  if (name == "cavity") {
    VoxelPattern p(3, 3, 3);
    p.set(1, 1, 1, false);
    return p;
  }
  throw InputError("unknown builtin pattern '" + name + "' (expected cube, ring or cavity)");
}

VoxelPattern VoxelPattern::parse(const std::string &text)
{
  std::vector<std::vector<std::string>> layers(1);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      if (!layers.back().empty()) {
        layers.emplace_back();
      }
      continue;
    }
    std::string row;
    for (char c : line) {
      if (c == '1' || c == '#') {
        row.push_back('1');
      } else if (c == '0' || c == '.') {
        row.push_back('0');
      } else if (c != ' ' && c != '\t') {
        throw ParseError(std::string("pattern: unexpected character '") + c + "'");
      }
    }
    layers.back().push_back(row);
  }
  if (layers.back().empty()) {
    layers.pop_back();
  }
  if (layers.empty()) {
    throw InputError("empty occupancy pattern");
  }
  const int ny = static_cast<int>(layers.front().size());
  const int nx = static_cast<int>(layers.front().front().size());
  VoxelPattern p(nx, ny, static_cast<int>(layers.size()), false);
  for (int k = 0; k < p.nz; ++k) {
    if (static_cast<int>(layers[k].size()) != ny) {
      throw ParseError("pattern: layers have different row counts");
    }
    for (int j = 0; j < ny; ++j) {
      if (static_cast<int>(layers[k][j].size()) != nx) {
        throw ParseError("pattern: rows have different lengths");
      }
      for (int i = 0; i < nx; ++i) {
        p.set(i, j, k, layers[k][j][i] == '1');
      }
    }
  }
  return p;
}

Mesh build_voxel_mesh(const VoxelPattern &pattern, double h)
{
  if (!(h > 0)) {
    throw InputError("voxel size must be positive");
  }
  std::vector<std::array<int, 3>> cells;
  for (int k = 0; k < pattern.nz; ++k) {
    for (int j = 0; j < pattern.ny; ++j) {
      for (int i = 0; i < pattern.nx; ++i) {
        if (pattern.at(i, j, k)) {
          cells.push_back({i, j, k});
        }
      }
    }
  }
  if (cells.empty()) {
    throw InputError("empty occupancy pattern");
  }

  // Face connectivity of the occupied cells
  {
    std::set<std::array<int, 3>> todo(cells.begin(), cells.end());
    std::queue<std::array<int, 3>> queue;
    queue.push(cells.front());
    todo.erase(cells.front());
    const int steps[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    while (!queue.empty()) {
      const auto c = queue.front();
      queue.pop();
      for (const auto &s : steps) {
        const std::array<int, 3> n{c[0] + s[0], c[1] + s[1], c[2] + s[2]};
        if (todo.erase(n) > 0) {
          queue.push(n);
        }
      }
    }
    if (!todo.empty()) {
      throw InputError("disconnected occupancy: " + std::to_string(todo.size()) +
                       " cells are not face-connected to the rest");
    }
  }

  const long sx = pattern.nx + 1, sy = pattern.ny + 1;
  auto vkey = [&](int i, int j, int k) { return i + sx * (j + sy * static_cast<long>(k)); };

  std::map<long, std::size_t> vertex_ids;
  for (const auto &c : cells) {
    for (int dk = 0; dk < 2; ++dk) {
      for (int dj = 0; dj < 2; ++dj) {
        for (int di = 0; di < 2; ++di) {
          vertex_ids.emplace(vkey(c[0] + di, c[1] + dj, c[2] + dk), 0);
        }
      }
    }
  }
  std::vector<Vector3> vertices;
  for (auto &[key, id] : vertex_ids) {
    id = vertices.size();
    const long i = key % sx;
    const long j = (key / sx) % sy;
    const long k = key / (sx * sy);
    vertices.emplace_back(h * static_cast<double>(i), h * static_cast<double>(j), h * static_cast<double>(k));
  }

  // Faces keyed by (k, j, i, axis) of their lower corner
  using FaceKey = std::array<int, 4>;
  auto cell_faces = [](const std::array<int, 3> &c) {
    const auto [i, j, k] = c;
    return std::array<FaceKey, 6>{FaceKey{k, j, i, 0}, FaceKey{k, j, i + 1, 0}, FaceKey{k, j, i, 1},
                                  FaceKey{k, j + 1, i, 1}, FaceKey{k, j, i, 2}, FaceKey{k + 1, j, i, 2}};
  };
  std::map<FaceKey, std::size_t> face_ids;
  for (const auto &c : cells) {
    for (const auto &fk : cell_faces(c)) {
      face_ids.emplace(fk, 0);
    }
  }
  std::vector<std::vector<std::size_t>> loops;
  for (auto &[fk, id] : face_ids) {
    id = loops.size();
    const auto [k, j, i, axis] = fk;
    std::array<std::array<int, 3>, 4> corners;
    if (axis == 0) { // counter-clockwise around +x in the (y, z) plane
      corners = {{{i, j, k}, {i, j + 1, k}, {i, j + 1, k + 1}, {i, j, k + 1}}};
    } else if (axis == 1) { // around +y in the (z, x) plane
      corners = {{{i, j, k}, {i, j, k + 1}, {i + 1, j, k + 1}, {i + 1, j, k}}};
    } else { // around +z in the (x, y) plane
      corners = {{{i, j, k}, {i + 1, j, k}, {i + 1, j + 1, k}, {i, j + 1, k}}};
    }
    std::vector<std::size_t> loop;
    for (const auto &p : corners) {
      loop.push_back(vertex_ids.at(vkey(p[0], p[1], p[2])));
    }
    loops.push_back(std::move(loop));
  }

  std::vector<std::vector<std::size_t>> elements;
  for (const auto &c : cells) {
    std::vector<std::size_t> faces;
    for (const auto &fk : cell_faces(c)) {
      faces.push_back(face_ids.at(fk));
    }
    elements.push_back(std::move(faces));
  }
  return Mesh(std::move(vertices), std::move(loops), std::move(elements));
}

//------------------------------------------------------------------------------
// JSON
//------------------------------------------------------------------------------

namespace {

template <typename T>
std::vector<std::vector<std::size_t>> read_index_lists(const nlohmann::json &j, const char *key)
{
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ParseError(std::string("mesh document: missing array '") + key + "'");
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto &item : j.at(key)) {
    if (!item.is_array()) {
      throw ParseError(std::string("mesh document: entries of '") + key + "' must be arrays");
    }
    std::vector<std::size_t> list;
    for (const auto &v : item) {
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParseError(std::string("mesh document: '") + key + "' must hold non-negative integers");
      }
      list.push_back(v.get<std::size_t>());
    }
    out.push_back(std::move(list));
  }
  return out;
}

nlohmann::json parse_document(const std::string &document)
{
  try {
    return nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("mesh document is not valid JSON: ") + e.what());
  }
}

} // namespace

Mesh load_mesh(const std::string &document)
{
  const nlohmann::json j = parse_document(document);
  if (!j.is_object()) {
    throw ParseError("mesh document must be a JSON object");
  }
  if (!j.contains("vertices") || !j.at("vertices").is_array()) {
    throw ParseError("mesh document: missing array 'vertices'");
  }
  std::vector<Vector3> vertices;
  for (const auto &v : j.at("vertices")) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
      throw ParseError("mesh document: each vertex must be [x, y, z]");
    }
    vertices.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  }
  auto faces = read_index_lists<std::size_t>(j, "faces");
  auto elements = read_index_lists<std::size_t>(j, "elements");
  return Mesh(std::move(vertices), std::move(faces), std::move(elements));
}

std::string write_mesh(const Mesh &mesh)
{
  nlohmann::ordered_json j;
  nlohmann::ordered_json verts = nlohmann::ordered_json::array();
  for (const auto &v : mesh.vertices()) {
    verts.push_back({v.x(), v.y(), v.z()});
  }
  nlohmann::ordered_json faces = nlohmann::ordered_json::array();
  for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
    faces.push_back(mesh.face(f).loop);
  }
  nlohmann::ordered_json elements = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < mesh.n_elements(); ++t) {
    elements.push_back(mesh.element(t).faces);
  }
  j["vertices"] = std::move(verts);
  j["faces"] = std::move(faces);
  j["elements"] = std::move(elements);
  return j.dump() + "\n";
}

std::vector<OrientationFault> load_faults(const std::string &document)
{
  const nlohmann::json j = parse_document(document);
  std::vector<OrientationFault> out;
  if (!j.is_object() || !j.contains("faults")) {
    return out;
  }
  for (const auto &item : j.at("faults")) {
    const std::string kind = item.value("kind", "");
    OrientationFault fault;
    try {
      if (kind == "flip_omega_TF") {
        fault.kind = OrientationFault::Kind::FlipElementFace;
        fault.primary = item.at("element").get<std::size_t>();
        fault.secondary = item.at("face").get<std::size_t>();
      } else if (kind == "flip_omega_FE") {
        fault.kind = OrientationFault::Kind::FlipFaceEdge;
        fault.primary = item.at("face").get<std::size_t>();
        fault.secondary = item.at("edge").get<std::size_t>();
      } else if (kind == "scale_edge_length") {
        fault.kind = OrientationFault::Kind::ScaleEdgeLength;
        fault.primary = item.at("edge").get<std::size_t>();
        fault.factor = item.at("factor").get<double>();
      } else {
        throw ParseError("unknown fault kind '" + kind + "'");
      }
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("malformed fault entry: ") + e.what());
    }
    out.push_back(fault);
  }
  return out;
}

//------------------------------------------------------------------------------
// Orientation
//------------------------------------------------------------------------------

namespace {

constexpr double planarity_tolerance = 1e-9;
constexpr double sign_tolerance = 1e-10;

int checked_sign(double value, double scale, const std::string &what)
{
  if (std::abs(value) <= sign_tolerance * scale) {
    throw GeometryError(what + ": ambiguous orientation sign");
  }
  return value > 0 ? 1 : -1;
}

double diameter_of(const Mesh &mesh, const std::vector<std::size_t> &vertices)
{
  double d = 0;
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      d = std::max(d, (mesh.vertex(vertices[a]) - mesh.vertex(vertices[b])).norm());
    }
  }
  return d;
}

} // namespace

int OrientationTable::omega_fe(const Mesh &mesh, std::size_t f, std::size_t e) const
{
  const auto &edges = mesh.face(f).edges;
  auto it = std::find(edges.begin(), edges.end(), e);
  if (it == edges.end()) {
    throw DomainError("edge " + std::to_string(e) + " is not an edge of face " + std::to_string(f));
  }
  return faces[f].edge_orientations[static_cast<std::size_t>(it - edges.begin())];
}

int OrientationTable::omega_tf(const Mesh &mesh, std::size_t t, std::size_t f) const
{
  const auto &fs = mesh.element(t).faces;
  auto it = std::find(fs.begin(), fs.end(), f);
  if (it == fs.end()) {
    throw DomainError("face " + std::to_string(f) + " is not a face of element " + std::to_string(t));
  }
  return elements[t].face_orientations[static_cast<std::size_t>(it - fs.begin())];
}

OrientationTable compute_orientation(const Mesh &mesh)
{
  OrientationTable table;

  table.edges.resize(mesh.n_edges());
  for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
    const Vector3 &a = mesh.vertex(mesh.edge(e).vertices[0]);
    const Vector3 &b = mesh.vertex(mesh.edge(e).vertices[1]);
    EdgeGeometry &g = table.edges[e];
    g.length = (b - a).norm();
    if (!(g.length > 0)) {
      throw GeometryError("edge " + std::to_string(e) + ": zero length");
    }
    g.tangent = (b - a) / g.length;
    g.midpoint = 0.5 * (a + b);
  }

  table.faces.resize(mesh.n_faces());
  for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
    const MeshFace &face = mesh.face(f);
    FaceGeometry &g = table.faces[f];
    const std::size_t n = face.loop.size();
    Vector3 newell = Vector3::Zero();
    Vector3 average = Vector3::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const Vector3 &p = mesh.vertex(face.loop[i]);
      const Vector3 &q = mesh.vertex(face.loop[(i + 1) % n]);
      newell += p.cross(q);
      average += p;
    }
    average /= static_cast<double>(n);
    g.diameter = diameter_of(mesh, face.vertices);
    if (!(newell.norm() > 1e-14 * g.diameter * g.diameter)) {
      throw GeometryError(face_label(f) + ": zero area");
    }
    g.normal = newell.normalized();

    double area = 0;
    Vector3 moment = Vector3::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const Vector3 &p = mesh.vertex(face.loop[i]);
      const Vector3 &q = mesh.vertex(face.loop[(i + 1) % n]);
      const double a = 0.5 * (p - average).cross(q - average).dot(g.normal);
      area += a;
      moment += a * (average + p + q) / 3.0;
    }
    if (!(area > 0)) {
      throw GeometryError(face_label(f) + ": zero area");
    }
    g.area = area;
    g.center = moment / area;

    for (auto v : face.loop) {
      const double dev = std::abs((mesh.vertex(v) - g.center).dot(g.normal));
      if (dev > planarity_tolerance * g.diameter) {
        throw GeometryError(face_label(f) + ": not planar (deviation " + std::to_string(dev) + ")");
      }
    }

    const Vector3 first = mesh.vertex(face.loop[1]) - mesh.vertex(face.loop[0]);
    g.tau1 = (first - first.dot(g.normal) * g.normal).normalized();
    g.tau2 = g.normal.cross(g.tau1);

    for (auto e : face.edges) {
      const EdgeGeometry &eg = table.edges[e];
      const Vector3 nfe = g.normal.cross(eg.tangent);
      g.edge_normals.push_back(nfe);
      g.edge_orientations.push_back(
          checked_sign(nfe.dot(eg.midpoint - g.center), g.diameter, face_label(f) + ", edge " + std::to_string(e)));
    }
  }

  table.elements.resize(mesh.n_elements());
  for (std::size_t t = 0; t < mesh.n_elements(); ++t) {
    const MeshElement &el = mesh.element(t);
    ElementGeometry &g = table.elements[t];
    Vector3 apex = Vector3::Zero();
    for (auto v : el.vertices) {
      apex += mesh.vertex(v);
    }
    apex /= static_cast<double>(el.vertices.size());
    double volume = 0;
    Vector3 moment = Vector3::Zero();
    for (auto f : el.faces) {
      const MeshFace &face = mesh.face(f);
      const Vector3 &xf = table.faces[f].center;
      const std::size_t n = face.loop.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Vector3 &p = mesh.vertex(face.loop[i]);
        const Vector3 &q = mesh.vertex(face.loop[(i + 1) % n]);
        const double v = std::abs((xf - apex).dot((p - apex).cross(q - apex))) / 6.0;
        volume += v;
        moment += v * (apex + xf + p + q) / 4.0;
      }
    }
    g.diameter = diameter_of(mesh, el.vertices);
    if (!(volume > 1e-14 * std::pow(g.diameter, 3))) {
      throw GeometryError("element " + std::to_string(t) + ": zero volume");
    }
    g.volume = volume;
    g.center = moment / volume;
    for (auto f : el.faces) {
      const FaceGeometry &fg = table.faces[f];
      g.face_orientations.push_back(checked_sign(fg.normal.dot(fg.center - g.center), g.diameter,
                                                 "element " + std::to_string(t) + ", " + face_label(f)));
    }
  }
  return table;
}

void apply_fault(const Mesh &mesh, OrientationTable &table, const OrientationFault &fault)
{
  switch (fault.kind) {
  case OrientationFault::Kind::FlipElementFace: {
    if (fault.primary >= mesh.n_elements()) {
      throw ReferenceError("fault: element index out of range");
    }
    const auto &fs = mesh.element(fault.primary).faces;
    auto it = std::find(fs.begin(), fs.end(), fault.secondary);
    if (it == fs.end()) {
      throw ReferenceError("fault: face is not a face of the element");
    }
    table.elements[fault.primary].face_orientations[static_cast<std::size_t>(it - fs.begin())] *= -1;
    break;
  }
  case OrientationFault::Kind::FlipFaceEdge: {
    if (fault.primary >= mesh.n_faces()) {
      throw ReferenceError("fault: face index out of range");
    }
    const auto &es = mesh.face(fault.primary).edges;
    auto it = std::find(es.begin(), es.end(), fault.secondary);
    if (it == es.end()) {
      throw ReferenceError("fault: edge is not an edge of the face");
    }
    table.faces[fault.primary].edge_orientations[static_cast<std::size_t>(it - es.begin())] *= -1;
    break;
  }
  case OrientationFault::Kind::ScaleEdgeLength:
    if (fault.primary >= mesh.n_edges()) {
      throw ReferenceError("fault: edge index out of range");
    }
    table.edges[fault.primary].length *= fault.factor;
    break;
  }
}

} // namespace ddr
