#include <ddr/verify.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include <ddr/errors.hpp>

namespace ddr {

namespace {

constexpr double tiny = std::numeric_limits<double>::min();

// Value built on first use; a construction failure is remembered and rethrown.
template <typename T> class Lazy {
public:
  template <typename F> const T &get(F make)
  {
    if (m_error) {
      std::rethrow_exception(m_error);
    }
    if (!m_value) {
      try {
        m_value = std::make_unique<T>(make());
      } catch (...) {
        m_error = std::current_exception();
        throw;
      }
    }
    return *m_value;
  }

private:
  std::unique_ptr<T> m_value;
  std::exception_ptr m_error;
};

class Context {
public:
  Context(const Mesh &mesh, int k, const std::vector<OrientationFault> &faults, const VerifyOptions &options)
      : m_mesh(mesh), m_k(k), m_faults(faults), m_options(options)
  {
  }

  const Mesh &mesh() const { return m_mesh; }
  int degree() const { return m_k; }
  const VerifyOptions &options() const { return m_options; }

  const OrientationTable &table()
  {
    return m_table.get([&] {
      OrientationTable t = compute_orientation(m_mesh);
      for (const auto &fault : m_faults) {
        apply_fault(m_mesh, t, fault);
      }
      return t;
    });
  }
  const DDRComplex &ddr()
  {
    const OrientationTable &t = table();
    return m_ddr.get([&] { return DDRComplex(m_mesh, t, m_k); });
  }
  const DDRComplex &ddr0()
  {
    if (m_k == 0) {
      return ddr();
    }
    const OrientationTable &t = table();
    return m_ddr0.get([&] { return DDRComplex(m_mesh, t, 0); });
  }
  const CochainComplexInt &cw()
  {
    return m_cw.get([&] { return build_cochain_complex(m_mesh); });
  }
  const BettiVector &betti()
  {
    const CochainComplexInt &c = cw();
    return m_betti.get([&] { return betti_numbers(m_mesh, c); });
  }
  const DeRhamScaling &scaling()
  {
    return m_scaling.get([&] { return de_rham_scaling(m_mesh); });
  }
  const SpaceMaps &reductions()
  {
    const DDRComplex &d = ddr();
    return m_reductions.get([&] { return build_reductions(d); });
  }
  const SpaceMaps &extensions()
  {
    const DDRComplex &d = ddr();
    const DDRComplex &d0 = ddr0();
    return m_extensions.get([&] { return build_extensions(d, d0); });
  }
  const std::array<RankResult, 3> &ranks()
  {
    const DDRComplex &d = ddr();
    return m_ranks.get([&] {
      return std::array<RankResult, 3>{numeric_rank(Eigen::MatrixXd(d.gradient().matrix), m_options.rank),
                                       numeric_rank(Eigen::MatrixXd(d.curl().matrix), m_options.rank),
                                       numeric_rank(Eigen::MatrixXd(d.divergence().matrix), m_options.rank)};
    });
  }

private:
  const Mesh &m_mesh;
  int m_k;
  std::vector<OrientationFault> m_faults;
  VerifyOptions m_options;
  Lazy<OrientationTable> m_table;
  Lazy<DDRComplex> m_ddr;
  Lazy<DDRComplex> m_ddr0;
  Lazy<CochainComplexInt> m_cw;
  Lazy<BettiVector> m_betti;
  Lazy<DeRhamScaling> m_scaling;
  Lazy<SpaceMaps> m_reductions;
  Lazy<SpaceMaps> m_extensions;
  Lazy<std::array<RankResult, 3>> m_ranks;
};

struct Measurement {
  double residual = 0;
  std::string detail;
};

void run_check(std::vector<CheckResult> &out, const std::string &name, double tolerance,
               const std::function<Measurement()> &fn)
{
  CheckResult r;
  r.name = name;
  r.tolerance = tolerance;
  const auto start = std::chrono::steady_clock::now();
  try {
    Measurement m = fn();
    r.residual = m.residual;
    r.detail = std::move(m.detail);
    r.passed = r.residual <= tolerance; // false for NaN
  } catch (const std::exception &e) {
    r.errored = true;
    r.passed = false;
    r.residual = std::numeric_limits<double>::quiet_NaN();
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.push_back(std::move(r));
}

// max |a b - c d| relative to the largest product of factor magnitudes
double product_residual(const SparseMatrix &a, const SparseMatrix &b, const SparseMatrix &c, const SparseMatrix &d)
{
  const SparseMatrix diff = SparseMatrix(a * b) - SparseMatrix(c * d);
  const double scale = std::max(max_abs(a) * max_abs(b), max_abs(c) * max_abs(d));
  return max_abs(diff) / std::max(scale, tiny);
}

SparseMatrix identity(std::size_t n)
{
  SparseMatrix id(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  id.setIdentity();
  return id;
}

SparseMatrix to_sparse(const IntMatrix &m)
{
  return Eigen::MatrixXd(m.cast<double>()).sparseView();
}

double gap_residual(double gap)
{
  return std::isinf(gap) ? 0.0 : 1.0 / std::max(gap, tiny);
}

std::string gap_text(double gap)
{
  std::ostringstream s;
  s << "gap " << gap;
  return s.str();
}

//------------------------------------------------------------------------------
// Families
//------------------------------------------------------------------------------

void check_orientation(Context &ctx, std::vector<CheckResult> &out)
{
  const Mesh &mesh = ctx.mesh();
  run_check(out, "orientation.frames", 1e-12, [&] {
    const OrientationTable &t = ctx.table();
    Measurement m;
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
      const FaceGeometry &g = t.faces[f];
      const double dev = std::max({std::abs(g.normal.norm() - 1), std::abs(g.tau1.norm() - 1), std::abs(g.tau1.dot(g.tau2)),
                                   std::abs(g.tau1.cross(g.tau2).dot(g.normal) - 1)});
      double edge_dev = 0;
      for (std::size_t i = 0; i < mesh.face(f).edges.size(); ++i) {
        const Vector3 &te = t.edges[mesh.face(f).edges[i]].tangent;
        edge_dev = std::max(edge_dev, (g.edge_normals[i] - g.normal.cross(te)).norm());
      }
      if (std::max(dev, edge_dev) > m.residual) {
        m.residual = std::max(dev, edge_dev);
        m.detail = "face " + std::to_string(f);
      }
    }
    return m;
  });
  run_check(out, "orientation.face_closure", 1e-12, [&] {
    const OrientationTable &t = ctx.table();
    Measurement m;
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
      Vector3 sum = Vector3::Zero();
      double perimeter = 0;
      const auto &edges = mesh.face(f).edges;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const EdgeGeometry &eg = t.edges[edges[i]];
        sum += t.faces[f].edge_orientations[i] * eg.length * t.faces[f].edge_normals[i];
        perimeter += eg.length;
      }
      const double r = sum.norm() / std::max(perimeter, tiny);
      if (r > m.residual) {
        m.residual = r;
        m.detail = "face " + std::to_string(f);
      }
    }
    return m;
  });
  run_check(out, "orientation.element_closure", 1e-12, [&] {
    const OrientationTable &t = ctx.table();
    Measurement m;
    for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
      Vector3 sum = Vector3::Zero();
      double total = 0;
      const auto &faces = mesh.element(e).faces;
      for (std::size_t j = 0; j < faces.size(); ++j) {
        const FaceGeometry &fg = t.faces[faces[j]];
        sum += t.elements[e].face_orientations[j] * fg.area * fg.normal;
        total += fg.area;
      }
      const double r = sum.norm() / std::max(total, tiny);
      if (r > m.residual) {
        m.residual = r;
        m.detail = "element " + std::to_string(e);
      }
    }
    return m;
  });
  run_check(out, "orientation.boundary_consistency", 0, [&] {
    const OrientationTable &t = ctx.table();
    Measurement m;
    for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
      std::map<std::size_t, int> sums;
      const auto &faces = mesh.element(e).faces;
      for (std::size_t j = 0; j < faces.size(); ++j) {
        const auto &edges = mesh.face(faces[j]).edges;
        for (std::size_t i = 0; i < edges.size(); ++i) {
          sums[edges[i]] += t.elements[e].face_orientations[j] * t.faces[faces[j]].edge_orientations[i];
        }
      }
      for (const auto &[edge, s] : sums) {
        if (std::abs(s) > m.residual) {
          m.residual = std::abs(s);
          m.detail = "element " + std::to_string(e) + ", edge " + std::to_string(edge);
        }
      }
    }
    return m;
  });
  run_check(out, "orientation.measures", 1e-12, [&] {
    const OrientationTable &t = ctx.table();
    const DeRhamScaling &s = ctx.scaling();
    Measurement m;
    auto compare = [&](const std::string &what, std::size_t i, double table_value, double reference) {
      const double r = std::abs(table_value - reference) / std::max(reference, tiny);
      if (r > m.residual) {
        m.residual = r;
        m.detail = what + " " + std::to_string(i);
      }
    };
    for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
      compare("edge", e, t.edges[e].length, s.measures[1](static_cast<Eigen::Index>(e)));
    }
    for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
      compare("face", f, t.faces[f].area, s.measures[2](static_cast<Eigen::Index>(f)));
    }
    for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
      compare("element", e, t.elements[e].volume, s.measures[3](static_cast<Eigen::Index>(e)));
    }
    return m;
  });
}

void check_closed_forms(Context &ctx, std::vector<CheckResult> &out)
{
  std::optional<ClosedForms> cache;
  auto closed = [&]() -> const ClosedForms & {
    if (!cache) {
      cache = ddr0_closed_forms(ctx.mesh(), ctx.table());
    }
    return *cache;
  };
  auto compare = [](const SparseMatrix &generic, const SparseMatrix &reference) {
    return Measurement{max_abs(SparseMatrix(generic - reference)) / std::max(max_abs(reference), tiny), {}};
  };
  run_check(out, "closed_forms.gradient", 1e-12, [&] { return compare(ctx.ddr0().gradient().matrix, closed().gradient); });
  run_check(out, "closed_forms.curl", 1e-12, [&] { return compare(ctx.ddr0().curl().matrix, closed().curl); });
  run_check(out, "closed_forms.divergence", 1e-12,
            [&] { return compare(ctx.ddr0().divergence().matrix, closed().divergence); });
}

void check_complex(Context &ctx, std::vector<CheckResult> &out)
{
  run_check(out, "complex.curl_gradient", 1e-10, [&] {
    const DDRComplex &d = ctx.ddr();
    const SparseMatrix zero(d.curl().matrix.rows(), d.gradient().matrix.cols());
    return Measurement{product_residual(d.curl().matrix, d.gradient().matrix, zero, identity(zero.cols())), {}};
  });
  run_check(out, "complex.divergence_curl", 1e-10, [&] {
    const DDRComplex &d = ctx.ddr();
    const SparseMatrix zero(d.divergence().matrix.rows(), d.curl().matrix.cols());
    return Measurement{product_residual(d.divergence().matrix, d.curl().matrix, zero, identity(zero.cols())), {}};
  });
  run_check(out, "complex.euler", 0, [&] {
    const DDRComplex &d = ctx.ddr();
    const long alternating = static_cast<long>(d.layout(Space::Grad).dimension()) -
                             static_cast<long>(d.layout(Space::Curl).dimension()) +
                             static_cast<long>(d.layout(Space::Div).dimension()) -
                             static_cast<long>(d.layout(Space::L2).dimension());
    const long chi = ctx.mesh().euler_characteristic();
    return Measurement{static_cast<double>(std::abs(alternating - chi)),
                       "alternating sum " + std::to_string(alternating) + ", euler characteristic " + std::to_string(chi)};
  });
}

void check_cochain(Context &ctx, std::vector<CheckResult> &out)
{
  const std::array<Space, 4> spaces = {Space::Grad, Space::Curl, Space::Div, Space::L2};
  const std::array<const char *, 4> names = {"grad", "curl", "div", "l2"};
  for (std::size_t s = 0; s < 4; ++s) {
    run_check(out, std::string("cochain.left_inverse_") + names[s], 1e-12, [&, s] {
      const SparseMatrix re = ctx.reductions()[spaces[s]] * ctx.extensions()[spaces[s]];
      return Measurement{max_abs(SparseMatrix(re - identity(static_cast<std::size_t>(re.rows())))), {}};
    });
  }

  // Reductions
  run_check(out, "cochain.reduction_interpolate", 1e-10, [&] {
    const auto q = [](const Vector3 &x) { return 1.0 + x(0) - 2.0 * x(1) + 0.5 * x(2); };
    const Eigen::VectorXd lhs = ctx.reductions()[Space::Grad] * ctx.ddr().interpolate_grad(q);
    const Eigen::VectorXd rhs = ctx.ddr0().interpolate_grad(q);
    return Measurement{(lhs - rhs).lpNorm<Eigen::Infinity>() / std::max(rhs.lpNorm<Eigen::Infinity>(), tiny), {}};
  });
  run_check(out, "cochain.reduction_gradient", 1e-10, [&] {
    const SpaceMaps &r = ctx.reductions();
    return Measurement{product_residual(r[Space::Curl], ctx.ddr().gradient().matrix, ctx.ddr0().gradient().matrix,
                                        r[Space::Grad]),
                       {}};
  });
  run_check(out, "cochain.reduction_curl", 1e-10, [&] {
    const SpaceMaps &r = ctx.reductions();
    return Measurement{
        product_residual(r[Space::Div], ctx.ddr().curl().matrix, ctx.ddr0().curl().matrix, r[Space::Curl]), {}};
  });
  run_check(out, "cochain.reduction_divergence", 1e-10, [&] {
    const SpaceMaps &r = ctx.reductions();
    return Measurement{product_residual(r[Space::L2], ctx.ddr().divergence().matrix, ctx.ddr0().divergence().matrix,
                                        r[Space::Div]),
                       {}};
  });

  // Extensions
  run_check(out, "cochain.extension_interpolate", 1e-10, [&] {
    const auto one = [](const Vector3 &) { return 1.0; };
    const Eigen::VectorXd lhs = ctx.ddr().interpolate_grad(one);
    const Eigen::VectorXd rhs = ctx.extensions()[Space::Grad] * ctx.ddr0().interpolate_grad(one);
    return Measurement{(lhs - rhs).lpNorm<Eigen::Infinity>(), {}};
  });
  run_check(out, "cochain.extension_gradient", 1e-10, [&] {
    const SpaceMaps &e = ctx.extensions();
    return Measurement{product_residual(ctx.ddr().gradient().matrix, e[Space::Grad], e[Space::Curl],
                                        ctx.ddr0().gradient().matrix),
                       {}};
  });
  run_check(out, "cochain.extension_curl", 1e-10, [&] {
    const SpaceMaps &e = ctx.extensions();
    return Measurement{
        product_residual(ctx.ddr().curl().matrix, e[Space::Curl], e[Space::Div], ctx.ddr0().curl().matrix), {}};
  });
  run_check(out, "cochain.extension_divergence", 1e-10, [&] {
    const SpaceMaps &e = ctx.extensions();
    return Measurement{product_residual(ctx.ddr().divergence().matrix, e[Space::Div], e[Space::L2],
                                        ctx.ddr0().divergence().matrix),
                       {}};
  });

  // Degree-0 complex against the CW cochain complex
  run_check(out, "cochain.cw_interpolate", 1e-13, [&] {
    const Eigen::VectorXd lhs = ctx.scaling().forward(0, ctx.ddr0().interpolate_grad([](const Vector3 &) { return 1.0; }));
    const Eigen::VectorXd rhs = ctx.cw().embedding.cast<double>().col(0);
    return Measurement{(lhs - rhs).lpNorm<Eigen::Infinity>(), {}};
  });
  const std::array<const char *, 3> ops = {"gradient", "curl", "divergence"};
  for (int i = 0; i < 3; ++i) {
    run_check(out, std::string("cochain.cw_") + ops[static_cast<std::size_t>(i)], 1e-13, [&, i] {
      const DDRComplex &d0 = ctx.ddr0();
      const SparseMatrix &op = i == 0 ? d0.gradient().matrix : i == 1 ? d0.curl().matrix : d0.divergence().matrix;
      const DeRhamScaling &s = ctx.scaling();
      return Measurement{product_residual(s.matrix(i + 1), op, to_sparse(ctx.cw().coboundary[static_cast<std::size_t>(i)]),
                                          s.matrix(i)),
                         {}};
    });
  }
}

void check_cohomology(Context &ctx, std::vector<CheckResult> &out)
{
  run_check(out, "cohomology.betti_euler", 0, [&] {
    const auto &b = ctx.betti().b;
    const long alternating = b[0] - b[1] + b[2] - b[3];
    return Measurement{static_cast<double>(std::abs(alternating - ctx.mesh().euler_characteristic())), {}};
  });
  auto dims = [&]() {
    const DDRComplex &d = ctx.ddr();
    return std::array<long, 4>{static_cast<long>(d.layout(Space::Grad).dimension()),
                               static_cast<long>(d.layout(Space::Curl).dimension()),
                               static_cast<long>(d.layout(Space::Div).dimension()),
                               static_cast<long>(d.layout(Space::L2).dimension())};
  };
  for (int i = 0; i < 4; ++i) {
    run_check(out, "cohomology.H" + std::to_string(i), 0, [&, i] {
      const auto n = dims();
      const auto &r = ctx.ranks();
      const long incoming = i == 0 ? 0 : static_cast<long>(r[static_cast<std::size_t>(i - 1)].rank);
      const long outgoing = i == 3 ? 0 : static_cast<long>(r[static_cast<std::size_t>(i)].rank);
      long h = n[static_cast<std::size_t>(i)] - outgoing - incoming;
      if (i == 0) {
        h -= 1; // constants
      }
      const auto &b = ctx.betti().b;
      const long expected = i == 0 ? b[0] - 1 : b[static_cast<std::size_t>(i)];
      return Measurement{static_cast<double>(std::abs(h - expected)),
                         "dim " + std::to_string(h) + ", expected " + std::to_string(expected)};
    });
  }
  run_check(out, "cohomology.rank_gap", 0.1, [&] {
    const auto &r = ctx.ranks();
    const double gap = std::min({r[0].gap, r[1].gap, r[2].gap});
    return Measurement{gap_residual(gap), gap_text(gap)};
  });
}

void check_zero_reduction(Context &ctx, std::vector<CheckResult> &out)
{
  // ranks of d_i restricted to the kernels of the reductions
  std::optional<std::array<RankResult, 3>> cache;
  auto ranks = [&]() -> const std::array<RankResult, 3> & {
    if (!cache) {
      const DDRComplex &d = ctx.ddr();
      const SpaceMaps z = zero_reduction_bases(d);
      const std::array<SparseMatrix, 3> restricted = {SparseMatrix(d.gradient().matrix * z[Space::Grad]),
                                                      SparseMatrix(d.curl().matrix * z[Space::Curl]),
                                                      SparseMatrix(d.divergence().matrix * z[Space::Div])};
      std::array<RankResult, 3> r;
      for (std::size_t i = 0; i < 3; ++i) {
        r[i] = numeric_rank(Eigen::MatrixXd(restricted[i]), ctx.options().rank);
      }
      cache = std::move(r);
    }
    return *cache;
  };
  auto kernel_dims = [&]() {
    const DDRComplex &d = ctx.ddr();
    const Mesh &mesh = ctx.mesh();
    return std::array<long, 4>{
        static_cast<long>(d.layout(Space::Grad).dimension() - mesh.n_vertices()),
        static_cast<long>(d.layout(Space::Curl).dimension() - mesh.n_edges()),
        static_cast<long>(d.layout(Space::Div).dimension() - mesh.n_faces()),
        static_cast<long>(d.layout(Space::L2).dimension() - mesh.n_elements())};
  };
  for (int i = 0; i < 4; ++i) {
    run_check(out, "zero_reduction.stage" + std::to_string(i), 0, [&, i] {
      const auto &r = ranks();
      const long dim = kernel_dims()[static_cast<std::size_t>(i)];
      const long outgoing = i == 3 ? 0 : static_cast<long>(r[static_cast<std::size_t>(i)].rank);
      const long incoming = i == 0 ? 0 : static_cast<long>(r[static_cast<std::size_t>(i - 1)].rank);
      const long deficit = dim - outgoing - incoming;
      return Measurement{static_cast<double>(std::abs(deficit)), "deficit " + std::to_string(deficit)};
    });
  }
  run_check(out, "zero_reduction.rank_gap", 0.1, [&] {
    const auto &r = ranks();
    const double gap = std::min({r[0].gap, r[1].gap, r[2].gap});
    return Measurement{gap_residual(gap), gap_text(gap)};
  });
}

// Scalar polynomial on the mesh in coordinates centred and scaled by the bounding box.
struct TestFunction {
  std::string label;
  std::vector<std::pair<std::array<int, 3>, double>> terms;
  Vector3 center;
  double scale = 1;

  double value(const Vector3 &x) const
  {
    const Vector3 xi = (x - center) / scale;
    double v = 0;
    for (const auto &[a, c] : terms) {
      v += c * std::pow(xi(0), a[0]) * std::pow(xi(1), a[1]) * std::pow(xi(2), a[2]);
    }
    return v;
  }

  Vector3 gradient(const Vector3 &x) const
  {
    const Vector3 xi = (x - center) / scale;
    Vector3 g = Vector3::Zero();
    for (const auto &[a, c] : terms) {
      for (int j = 0; j < 3; ++j) {
        if (a[static_cast<std::size_t>(j)] == 0) {
          continue;
        }
        double t = c * a[static_cast<std::size_t>(j)] / scale;
        for (int l = 0; l < 3; ++l) {
          t *= std::pow(xi(l), l == j ? a[static_cast<std::size_t>(l)] - 1 : a[static_cast<std::size_t>(l)]);
        }
        g(j) += t;
      }
    }
    return g;
  }
};

std::vector<TestFunction> consistency_functions(const Mesh &mesh, int degree, std::uint64_t seed)
{
  Vector3 lo = mesh.vertex(0), hi = mesh.vertex(0);
  for (const auto &v : mesh.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vector3 center = 0.5 * (lo + hi);
  const double scale = std::max((hi - lo).maxCoeff(), tiny);
  std::vector<TestFunction> out;
  const auto &table = monomial_exponents(3, degree);
  const std::vector<std::array<int, 3>> exponents(table.begin(),
                                                 table.begin() + static_cast<std::ptrdiff_t>(poly_dim(3, degree)));
  for (const auto &a : exponents) {
    out.push_back({"x^" + std::to_string(a[0]) + " y^" + std::to_string(a[1]) + " z^" + std::to_string(a[2]),
                   {{a, 1.0}},
                   center,
                   scale});
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
  for (int r = 0; r < 3; ++r) {
    TestFunction f{"random combination " + std::to_string(r), {}, center, scale};
    for (const auto &a : exponents) {
      f.terms.emplace_back(a, coefficient(rng));
    }
    out.push_back(std::move(f));
  }
  return out;
}

void check_consistency(Context &ctx, std::vector<CheckResult> &out)
{
  // errors[check] = (worst relative error, detail)
  struct Worst {
    double error = 0;
    std::string detail;
  };
  std::array<Worst, 5> worst;
  std::string failure;
  bool evaluated = false;
  auto evaluate = [&]() {
    if (evaluated) {
      if (!failure.empty()) {
        throw InternalError(failure);
      }
      return;
    }
    evaluated = true;
    try {
      const DDRComplex &d = ctx.ddr();
      const Mesh &mesh = ctx.mesh();
      const OrientationTable &table = ctx.table();
      const int k = d.degree();
      for (const auto &fn : consistency_functions(mesh, k + 1, ctx.options().seed)) {
        const Eigen::VectorXd iq = d.interpolate_grad([&](const Vector3 &x) { return fn.value(x); });
        // per check: max error and max exact magnitude
        std::array<double, 5> err{}, mag{};
        std::array<std::string, 5> where;
        auto record = [&](std::size_t c, double e, double exact, const std::string &entity) {
          mag[c] = std::max(mag[c], std::abs(exact));
          if (e > err[c]) {
            err[c] = e;
            where[c] = entity;
          }
        };
        auto local = [&](int dim, std::size_t i) {
          const auto &cl = d.closure(Space::Grad, dim, i);
          Eigen::VectorXd v(static_cast<Eigen::Index>(cl.size()));
          for (std::size_t j = 0; j < cl.size(); ++j) {
            v(static_cast<Eigen::Index>(j)) = iq(static_cast<Eigen::Index>(cl[j]));
          }
          return v;
        };
        for (std::size_t e = 0; e < mesh.n_edges(); ++e) {
          const Eigen::VectorXd v = local(1, e);
          const Eigen::VectorXd trace = d.edge_operators(e).trace * v;
          const Eigen::VectorXd grad = d.edge_operators(e).gradient * v;
          for (const auto &qp : d.entity(1, e).rule.points) {
            const double q = fn.value(qp.point);
            const double dq = fn.gradient(qp.point).dot(table.edges[e].tangent);
            record(0, std::abs(d.evaluate(1, e, k + 1, trace, qp.point) - q), q, "edge " + std::to_string(e));
            record(1, std::abs(d.evaluate(1, e, k, grad, qp.point) - dq), dq, "edge " + std::to_string(e));
          }
        }
        for (std::size_t f = 0; f < mesh.n_faces(); ++f) {
          const Eigen::VectorXd v = local(2, f);
          const Eigen::VectorXd trace = d.face_operators(f).trace * v;
          const Eigen::VectorXd grad = d.face_operators(f).gradient * v;
          const Vector3 &n = table.faces[f].normal;
          for (const auto &qp : d.entity(2, f).rule.points) {
            const double q = fn.value(qp.point);
            Vector3 g = fn.gradient(qp.point);
            g -= g.dot(n) * n;
            record(2, std::abs(d.evaluate(2, f, k + 1, trace, qp.point) - q), q, "face " + std::to_string(f));
            record(3, (d.evaluate_vector(2, f, k, grad, qp.point) - g).norm(), g.norm(), "face " + std::to_string(f));
          }
        }
        for (std::size_t t = 0; t < mesh.n_elements(); ++t) {
          const Eigen::VectorXd grad = d.element_operators(t).gradient * local(3, t);
          for (const auto &qp : d.entity(3, t).rule.points) {
            const Vector3 g = fn.gradient(qp.point);
            record(4, (d.evaluate_vector(3, t, k, grad, qp.point) - g).norm(), g.norm(),
                   "element " + std::to_string(t));
          }
        }
        for (std::size_t c = 0; c < 5; ++c) {
          const double rel = err[c] / (mag[c] > 0 ? mag[c] : 1.0);
          if (rel > worst[c].error) {
            worst[c] = {rel, fn.label + " on " + where[c]};
          }
        }
      }
    } catch (const std::exception &e) {
      failure = e.what();
      throw;
    }
  };
  const std::array<const char *, 5> names = {"consistency.edge_trace", "consistency.edge_gradient",
                                             "consistency.face_trace", "consistency.face_gradient",
                                             "consistency.element_gradient"};
  for (std::size_t c = 0; c < 5; ++c) {
    run_check(out, names[c], 1e-9, [&, c] {
      evaluate();
      return Measurement{worst[c].error, worst[c].detail};
    });
  }
}

void lift_all(Context &ctx, VerificationReport &report, std::vector<CheckResult> &out)
{
  for (int i : {1, 2}) {
    run_check(out, "cohomology.generators_h" + std::to_string(i), 1e-9, [&, i] {
      const RationalMatrix g = cohomology_generators(ctx.mesh(), ctx.cw(), i);
      LiftedGenerators lifted =
          lift_generators(ctx.ddr(), ctx.extensions(), g, ctx.scaling(), i, ctx.options().rank);
      const long expected = ctx.betti().b[static_cast<std::size_t>(i)];
      Measurement m{lifted.kernel_residual,
                    std::to_string(lifted.vectors.size()) + " generators, image rank " +
                        std::to_string(lifted.image_rank) + ", combined rank " + std::to_string(lifted.combined_rank)};
      if (!lifted.certified || static_cast<long>(lifted.vectors.size()) != expected) {
        m.residual = std::numeric_limits<double>::infinity();
        m.detail += ", not certified";
      }
      report.generators.push_back(std::move(lifted));
      return m;
    });
  }
}

} // namespace

const std::vector<std::string> &check_families()
{
  static const std::vector<std::string> families = {"orientation", "closed_forms",   "complex",    "cochain",
                                                     "cohomology",  "zero_reduction", "consistency"};
  return families;
}

bool VerificationReport::passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

const CheckResult *VerificationReport::find(const std::string &name) const
{
  for (const auto &c : checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

VerificationReport run_all(const Mesh &mesh, int k, const VerifyOptions &options,
                           const std::vector<OrientationFault> &faults)
{
  if (k < 0) {
    throw InputError("degree must be non-negative");
  }
  std::set<std::string> selected(options.families.begin(), options.families.end());
  for (const auto &name : selected) {
    if (std::find(check_families().begin(), check_families().end(), name) == check_families().end()) {
      throw InputError("unknown check family '" + name + "'");
    }
  }
  if (selected.empty()) {
    selected.insert(check_families().begin(), check_families().end());
  }

  VerificationReport report;
  report.counts = {mesh.n_vertices(), mesh.n_edges(), mesh.n_faces(), mesh.n_elements()};
  report.degree = k;
  for (Space s : {Space::Grad, Space::Curl, Space::Div, Space::L2}) {
    report.dims[static_cast<std::size_t>(s)] = DofLayout(mesh, s, k).dimension();
  }

  Context ctx(mesh, k, faults, options);
  using Family = void (*)(Context &, std::vector<CheckResult> &);
  const std::vector<std::pair<std::string, Family>> families = {
      {"orientation", check_orientation}, {"closed_forms", check_closed_forms},     {"complex", check_complex},
      {"cochain", check_cochain},         {"cohomology", check_cohomology},         {"zero_reduction", check_zero_reduction},
      {"consistency", check_consistency}};
  for (const auto &[name, run] : families) {
    if (selected.count(name)) {
      run(ctx, report.checks);
    }
  }
  if (options.generators) {
    lift_all(ctx, report, report.checks);
  }

  try {
    report.betti_cw = ctx.betti().b;
  } catch (const std::exception &) {
  }
  if (selected.count("cohomology")) {
    try {
      const auto &r = ctx.ranks();
      report.ranks = std::array<std::size_t, 3>{r[0].rank, r[1].rank, r[2].rank};
      report.gaps = {r[0].gap, r[1].gap, r[2].gap};
      const auto &d = report.dims;
      report.cohomology_ddr = std::array<long, 4>{
          static_cast<long>(d[0] - r[0].rank) - 1, static_cast<long>(d[1] - r[1].rank - r[0].rank),
          static_cast<long>(d[2] - r[2].rank - r[1].rank), static_cast<long>(d[3] - r[2].rank)};
    } catch (const std::exception &) {
    }
  }
  return report;
}

std::string report_json(const VerificationReport &report, bool timestamp)
{
  using Json = nlohmann::ordered_json;
  auto number = [](double x) -> Json {
    if (std::isfinite(x)) {
      return x;
    }
    return nullptr;
  };
  Json j;
  j["mesh"] = {{"vertices", report.counts[0]},
               {"edges", report.counts[1]},
               {"faces", report.counts[2]},
               {"elements", report.counts[3]}};
  j["degree"] = report.degree;
  j["dims"] = {{"Xgrad", report.dims[0]}, {"Xcurl", report.dims[1]}, {"Xdiv", report.dims[2]}, {"Pk", report.dims[3]}};
  if (report.ranks) {
    const auto &r = *report.ranks;
    j["ranks"] = {{"uG", r[0]},
                  {"uC", r[1]},
                  {"D", r[2]},
                  {"gaps", {{"uG", number(report.gaps[0])}, {"uC", number(report.gaps[1])}, {"D", number(report.gaps[2])}}}};
  }
  if (report.betti_cw) {
    j["betti_cw"] = *report.betti_cw;
  }
  if (report.cohomology_ddr) {
    j["cohomology_ddr"] = *report.cohomology_ddr;
  }
  Json checks = Json::array();
  for (const auto &c : report.checks) {
    Json entry = {{"name", c.name},
                  {"passed", c.passed},
                  {"residual", number(c.residual)},
                  {"tolerance", c.tolerance},
                  {"seconds", timestamp ? c.seconds : 0.0}};
    if (c.errored) {
      entry["error"] = c.detail;
    } else if (!c.detail.empty()) {
      entry["detail"] = c.detail;
    }
    checks.push_back(std::move(entry));
  }
  j["checks"] = std::move(checks);
  if (!report.generators.empty()) {
    Json gens = Json::array();
    for (const auto &g : report.generators) {
      Json vectors = Json::array();
      for (const auto &v : g.vectors) {
        vectors.push_back(std::vector<double>(v.data(), v.data() + v.size()));
      }
      gens.push_back({{"index", g.index},
                      {"count", g.vectors.size()},
                      {"kernel_residual", g.kernel_residual},
                      {"image_rank", g.image_rank},
                      {"combined_rank", g.combined_rank},
                      {"gap", number(g.gap)},
                      {"certified", g.certified},
                      {"vectors", std::move(vectors)}});
    }
    j["generators"] = std::move(gens);
  }
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
    j["generated_at"] = buffer;
  }
  return j.dump(2) + "\n";
}

} // namespace ddr
