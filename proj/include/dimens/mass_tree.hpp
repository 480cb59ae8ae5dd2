#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dimens/dyadic.hpp"
#include "dimens/rng.hpp"

namespace dimens {

/// Largest number of leaf cells a tree may hold.
inline constexpr std::uint64_t kMaxLeafCells = std::uint64_t{1} << 26;

/// Depth-bounded measure on [0,1)^d stored as masses of dyadic cells at levels 0..D.
/// Parent masses are the floating-point sums of their children's masses.
class DyadicMassTree {
 public:
  DyadicMassTree() = default;

  /// Builds from nonzero leaves at level `depth`. Keys must be strictly increasing;
  /// zero masses are dropped. Throws DomainError on negative masses or an empty support.
  DyadicMassTree(int dim, int depth, std::vector<CellKey> leaf_keys, std::vector<double> leaf_masses);

  /// Builds from a dense Morton-ordered array of all 2^{dD} leaf masses.
  static DyadicMassTree from_dense(int dim, int depth, std::vector<double> leaf_masses);

  int dim() const { return dim_; }
  int depth() const { return depth_; }
  double total() const { return mass(0, 0); }

  double mass(int level, CellKey key) const;
  double mass(const DyadicCube& cube) const;

  /// Number of nonzero cells stored at `level`.
  std::size_t nonzero_count(int level) const;
  bool is_dense(int level) const { return levels_[level].dense; }

  /// Calls f(key, mass) for every nonzero cell at `level` with key in [lo, hi), in key order.
  template <class F>
  void for_each_in_range(int level, CellKey lo, CellKey hi, F&& f) const;

  template <class F>
  void for_each_nonzero(int level, F&& f) const {
    for_each_in_range(level, 0, cells_at(level), f);
  }

  /// Nonzero children of (level, key), as (child key, mass).
  template <class F>
  void for_each_child(int level, CellKey key, F&& f) const {
    for_each_in_range(level + 1, key << dim_, (key + 1) << dim_, f);
  }

  CellKey cells_at(int level) const { return CellKey{1} << (level * dim_); }

 private:
  struct LevelStore {
    bool dense = false;
    std::vector<double> dense_mass;
    std::vector<CellKey> keys;
    std::vector<double> masses;
  };

  void build_parents();
  static LevelStore make_level(int dim, int level, std::vector<CellKey> keys, std::vector<double> masses);

  int dim_ = 0;
  int depth_ = 0;
  std::vector<LevelStore> levels_;
};

template <class F>
void DyadicMassTree::for_each_in_range(int level, CellKey lo, CellKey hi, F&& f) const {
  const LevelStore& s = levels_[level];
  if (s.dense) {
    for (CellKey k = lo; k < hi; ++k)
      if (s.dense_mass[k] > 0.0) f(k, s.dense_mass[k]);
    return;
  }
  auto it = std::lower_bound(s.keys.begin(), s.keys.end(), lo);
  for (; it != s.keys.end() && *it < hi; ++it) f(*it, s.masses[it - s.keys.begin()]);
}

/// Axis-aligned cube used by region traversals.
struct Box {
  std::array<double, kMaxDim> lo{};
  double side = 1.0;
  int dim = 1;

  static Box of(int dim, int level, CellKey key) {
    return Box{lower_corner_of(dim, level, key), std::ldexp(1.0, -level), dim};
  }
  std::array<double, kMaxDim> center() const {
    std::array<double, kMaxDim> c{};
    for (int i = 0; i < dim; ++i) c[i] = lo[i] + 0.5 * side;
    return c;
  }
  double half_diagonal() const { return 0.5 * side * std::sqrt(static_cast<double>(dim)); }
};

enum class Region { Outside, Inside, Partial };

/// Visits the tree top-down. `classify(box)` decides for a whole cell; cells classified
/// Partial are refined down to the leaves, where `on_leaf(key, mass, box)` is called.
/// `on_inside(level, key, mass)` receives maximal Inside cells. Either callback may
/// return false to stop the traversal early.
template <class Classify, class OnInside, class OnLeaf>
void visit_region(const DyadicMassTree& tree, Classify&& classify, OnInside&& on_inside, OnLeaf&& on_leaf) {
  const int d = tree.dim();
  bool stop = false;
  auto rec = [&](auto&& self, int level, CellKey key, double m, const Box& box) -> void {
    if (stop) return;
    const Region r = classify(box);
    if (r == Region::Outside) return;
    if (r == Region::Inside) {
      if (!on_inside(level, key, m)) stop = true;
      return;
    }
    if (level == tree.depth()) {
      if (!on_leaf(key, m, box)) stop = true;
      return;
    }
    tree.for_each_child(level, key, [&](CellKey ck, double cm) {
      Box child = box;
      child.side = 0.5 * box.side;
      for (int i = 0; i < d; ++i)
        if ((ck >> i) & 1u) child.lo[i] += child.side;
      self(self, level + 1, ck, cm, child);
    });
  };
  const double root = tree.total();
  if (root > 0.0) rec(rec, 0, 0, root, Box::of(d, 0, 0));
}

/// Sum of leaf masses whose leaf-cell centre satisfies `in_region`, with Lipschitz pruning:
/// `classify` must only return Inside/Outside when every leaf centre of the box agrees.
template <class Classify, class Pred>
double leaf_center_mass(const DyadicMassTree& tree, Classify&& classify, Pred&& in_region) {
  double total = 0.0;
  visit_region(
      tree, classify, [&](int, CellKey, double m) { total += m; return true; },
      [&](CellKey, double m, const Box& b) {
        if (in_region(b.center())) total += m;
        return true;
      });
  return total;
}

/// Bracket for the mass of a closed ball resolved at the leaf level.
struct BallMassEstimate {
  double lower = 0.0;
  double upper = 0.0;
  double midpoint() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

BallMassEstimate ball_mass(const DyadicMassTree& tree, std::span<const double> x, double r);

/// Ball bracket whose traversal stops as soon as the upper bound exceeds `limit`;
/// the returned upper is then only known to be > limit.
BallMassEstimate ball_mass_until(const DyadicMassTree& tree, std::span<const double> x, double r, double limit);

/// Mass of leaf cells whose centres lie in the closed ball.
double ball_center_mass(const DyadicMassTree& tree, std::span<const double> x, double r);

/// Mass of leaf cells whose centres lie in the half-open box [lo, hi).
double box_center_mass(const DyadicMassTree& tree, std::span<const double> lo, std::span<const double> hi);

/// Mass of KQ: the cube with Q's centre and K times its side, as the union of leaf
/// cells whose centres lie in it (clipped to [0,1)^d implicitly).
double enlarged_cube_mass(const DyadicMassTree& tree, const DyadicCube& q, double K);

/// Mass of U_{K,a}(Q): the level-(k+a) subcubes of Q left after removing the K outer
/// layers on every face. Requires 2^{a-1} > K.
double shell_mass(const DyadicMassTree& tree, const DyadicCube& q, int K, int a);

/// Per-axis positions j of level-(k+a) subcells kept by the shell: K <= j <= 2^a - 1 - K.
bool in_shell(std::span<const std::uint32_t> positions, int K, int a);

/// Normalised restriction of the tree to Q, as leaf masses divided by mass(Q).
struct ConditionalMeasure {
  DyadicCube root;
  std::vector<std::pair<CellKey, double>> leaves;
  bool trivial() const { return leaves.empty(); }
  double total() const;
};

ConditionalMeasure normalized_restriction(const DyadicMassTree& tree, const DyadicCube& q);

/// Shifts the support by +omega (each coordinate in [0, 1/2)); requires support in [0,1/2)^d.
/// Each leaf's mass moves to the leaf containing its shifted centre.
DyadicMassTree translate(const DyadicMassTree& tree, std::span<const double> omega);

/// Rounds each coordinate of omega down to the 2^{-D} grid.
Point snap_to_grid(std::span<const double> omega, int depth);

/// Checks parent-sum consistency; returns the largest relative deviation found.
double parent_sum_deviation(const DyadicMassTree& tree);

/// Text serialisation; `extra` is appended verbatim to the header line.
void write_tree(std::ostream& os, const DyadicMassTree& tree, const std::string& extra = {});
DyadicMassTree read_tree(std::istream& is);

/// Draws n points distributed like mu at leaf resolution (centres of leaves).
std::vector<Point> sample_points(const DyadicMassTree& tree, std::size_t n, std::uint64_t seed);

/// Key of the leaf cell reached by descending with probabilities proportional to mass.
CellKey sample_leaf(const DyadicMassTree& tree, Rng& rng);

}  // namespace dimens
