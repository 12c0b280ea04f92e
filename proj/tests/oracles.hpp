#ifndef DDR_TESTS_ORACLES_HPP
#define DDR_TESTS_ORACLES_HPP

// Reference values computed without the library: a cubical complex enumerated
// directly from a list of unit cells, and closed-form dimensions of the
// discrete spaces.

#include <array>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Cell = std::array<int, 3>;

inline std::vector<Cell> block_minus_centre(int nz)
{
  std::vector<Cell> cells;
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) {
        if (!(i == 1 && j == 1 && k == (nz - 1) / 2)) {
          cells.push_back({i, j, k});
        }
      }
    }
  }
  return cells;
}

inline std::vector<Cell> cube_cells() { return {{0, 0, 0}}; }
inline std::vector<Cell> ring_cells() { return block_minus_centre(1); }
inline std::vector<Cell> cavity_cells() { return block_minus_centre(3); }

/// Cubical chain complex of a union of unit cells. An entity is a base point
/// plus the set of axes it extends along.
struct CubicalComplex {
  std::array<std::map<std::pair<Cell, int>, int>, 4> index; // (base point, axis mask) -> id, per dimension
  std::array<Eigen::MatrixXd, 3> coboundary;               // (d+1)-cells x d-cells

  std::array<long, 4> counts() const
  {
    return {static_cast<long>(index[0].size()), static_cast<long>(index[1].size()), static_cast<long>(index[2].size()),
            static_cast<long>(index[3].size())};
  }

  std::array<long, 3> ranks() const
  {
    std::array<long, 3> r{};
    for (int i = 0; i < 3; ++i) {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(coboundary[static_cast<std::size_t>(i)]);
      r[static_cast<std::size_t>(i)] = static_cast<long>(lu.rank());
    }
    return r;
  }

  std::array<long, 4> betti() const
  {
    const auto n = counts();
    const auto r = ranks();
    return {n[0] - r[0], n[1] - r[0] - r[1], n[2] - r[1] - r[2], n[3] - r[2]};
  }
};

inline CubicalComplex cubical_complex(const std::vector<Cell> &cells)
{
  CubicalComplex c;
  for (const auto &cell : cells) {
    // every face of the closed cell: choose a mask of free axes and offsets for the others
    for (int mask = 0; mask < 8; ++mask) {
      const int dim = __builtin_popcount(static_cast<unsigned>(mask));
      for (int offset = 0; offset < 8; ++offset) {
        if (offset & mask) {
          continue;
        }
        Cell base = cell;
        for (int a = 0; a < 3; ++a) {
          if (offset & (1 << a)) {
            base[static_cast<std::size_t>(a)] += 1;
          }
        }
        auto &idx = c.index[static_cast<std::size_t>(dim)];
        idx.emplace(std::make_pair(base, mask), 0);
      }
    }
  }
  for (auto &idx : c.index) {
    int n = 0;
    for (auto &entry : idx) {
      entry.second = n++;
    }
  }
  // boundary of [base, mask]: for each free axis a (l-th free axis), the two
  // faces at offsets 0 and 1 with sign (-1)^l and -(-1)^l
  for (int dim = 1; dim <= 3; ++dim) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(c.index[static_cast<std::size_t>(dim)].size()),
                                              static_cast<Eigen::Index>(c.index[static_cast<std::size_t>(dim - 1)].size()));
    for (const auto &[key, id] : c.index[static_cast<std::size_t>(dim)]) {
      const auto &[base, mask] = key;
      int l = 0;
      for (int a = 0; a < 3; ++a) {
        if (!(mask & (1 << a))) {
          continue;
        }
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        Cell upper = base;
        upper[static_cast<std::size_t>(a)] += 1;
        const int face_mask = mask & ~(1 << a);
        const auto &lower_idx = c.index[static_cast<std::size_t>(dim - 1)];
        d(id, lower_idx.at({upper, face_mask})) += sign;
        d(id, lower_idx.at({base, face_mask})) -= sign;
        ++l;
      }
    }
    c.coboundary[static_cast<std::size_t>(dim - 1)] = d;
  }
  return c;
}

inline long binomial(long n, long r)
{
  if (r < 0 || n < r) {
    return 0;
  }
  long out = 1;
  for (long i = 1; i <= r; ++i) {
    out = out * (n - r + i) / i;
  }
  return out;
}

/// dim P^k in dimension d
inline long np(int d, int k) { return k < 0 ? 0 : binomial(k + d, d); }

/// dimensions of Xgrad, Xcurl, Xdiv, Pk from the entity counts, using
/// dim R^l(F) = dim P^{l+1}(F) - 1, dim Rc^l(F) = 2 dim P^l(F) - dim R^l(F),
/// dim R^l(T) = 3 dim P^{l+1}(T) - dim P^{l+2}(T) + 1, dim Rc^l(T) = 3 dim P^l(T) - dim R^l(T),
/// dim G^l(T) = dim P^{l+1}(T) - 1, dim Gc^l(T) = 3 dim P^l(T) - dim G^l(T).
inline std::array<long, 4> ddr_dims(const std::array<long, 4> &n, int k)
{
  auto r2 = [](int l) { return l < 0 ? 0 : np(2, l + 1) - 1; };
  auto rc2 = [&](int l) { return l < 0 ? 0 : 2 * np(2, l) - r2(l); };
  auto r3 = [](int l) { return l < 0 ? 0 : 3 * np(3, l + 1) - np(3, l + 2) + 1; };
  auto rc3 = [&](int l) { return l < 0 ? 0 : 3 * np(3, l) - r3(l); };
  auto g3 = [](int l) { return l < 0 ? 0 : np(3, l + 1) - 1; };
  auto gc3 = [&](int l) { return l < 0 ? 0 : 3 * np(3, l) - g3(l); };
  const long grad = n[0] + n[1] * np(1, k - 1) + n[2] * np(2, k - 1) + n[3] * np(3, k - 1);
  const long curl = n[1] * np(1, k) + n[2] * (r2(k - 1) + rc2(k)) + n[3] * (r3(k - 1) + rc3(k));
  const long div = n[2] * np(2, k) + n[3] * (g3(k - 1) + gc3(k));
  const long l2 = n[3] * np(3, k);
  return {grad, curl, div, l2};
}

/// Ranks (uG, uC, D) forced by exactness up to the Betti numbers of a connected domain.
inline std::array<long, 3> rank_chain(const std::array<long, 4> &dims, const std::array<long, 4> &betti)
{
  const long g = dims[0] - betti[0];
  const long c = dims[1] - g - betti[1];
  const long d = dims[2] - c - betti[2];
  return {g, c, d};
}

} // namespace oracle

#endif
