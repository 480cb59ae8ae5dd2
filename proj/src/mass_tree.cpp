#include "dimens/mass_tree.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "dimens/error.hpp"

namespace dimens {

std::uint64_t substream(std::uint64_t seed, std::uint64_t i) { return mix64(seed ^ mix64(i + 0x5bd1e995ULL)); }

namespace {

void check_shape(int dim, int depth) {
  if (dim < 1 || dim > kMaxDim) throw DomainError("tree dimension must lie in [1, " + std::to_string(kMaxDim) + "]");
  if (depth < 0 || depth > max_level(dim)) throw DomainError("tree depth out of range for this dimension");
}

}  // namespace

DyadicMassTree::LevelStore DyadicMassTree::make_level(int dim, int level, std::vector<CellKey> keys,
                                                      std::vector<double> masses) {
  LevelStore s;
  const bool small_grid = level * dim <= 27;
  const CellKey cells = CellKey{1} << (level * dim);
  if (small_grid && keys.size() * 2 >= cells) {
    s.dense = true;
    s.dense_mass.assign(cells, 0.0);
    for (std::size_t i = 0; i < keys.size(); ++i) s.dense_mass[keys[i]] = masses[i];
  } else {
    s.keys = std::move(keys);
    s.masses = std::move(masses);
  }
  return s;
}

DyadicMassTree::DyadicMassTree(int dim, int depth, std::vector<CellKey> leaf_keys, std::vector<double> leaf_masses)
    : dim_(dim), depth_(depth) {
  check_shape(dim, depth);
  if (leaf_keys.size() != leaf_masses.size()) throw DomainError("leaf key/mass count mismatch");
  const CellKey cells = cells_at(depth);
  std::vector<CellKey> keys;
  std::vector<double> masses;
  keys.reserve(leaf_keys.size());
  masses.reserve(leaf_keys.size());
  for (std::size_t i = 0; i < leaf_keys.size(); ++i) {
    const double m = leaf_masses[i];
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("leaf masses must be finite and non-negative");
    if (leaf_keys[i] >= cells) throw DomainError("leaf key outside the grid");
    if (i > 0 && leaf_keys[i] <= leaf_keys[i - 1]) throw DomainError("leaf keys must be strictly increasing");
    if (m == 0.0) continue;
    keys.push_back(leaf_keys[i]);
    masses.push_back(m);
  }
  if (keys.empty()) throw DomainError("tree has no mass");
  if (keys.size() > kMaxLeafCells) throw DomainError("tree exceeds the leaf-cell memory guard");
  leaf_keys.clear();
  leaf_keys.shrink_to_fit();
  leaf_masses.clear();
  leaf_masses.shrink_to_fit();
  levels_.resize(depth + 1);
  levels_[depth] = make_level(dim, depth, std::move(keys), std::move(masses));
  build_parents();
}

DyadicMassTree DyadicMassTree::from_dense(int dim, int depth, std::vector<double> leaf_masses) {
  check_shape(dim, depth);
  if (static_cast<std::uint64_t>(dim) * depth > 26) throw DomainError("dense tree exceeds the leaf-cell memory guard");
  DyadicMassTree t;
  t.dim_ = dim;
  t.depth_ = depth;
  if (leaf_masses.size() != t.cells_at(depth)) throw DomainError("dense leaf array has the wrong size");
  bool any = false;
  for (double m : leaf_masses) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("leaf masses must be finite and non-negative");
    any = any || m > 0.0;
  }
  if (!any) throw DomainError("tree has no mass");
  t.levels_.resize(depth + 1);
  t.levels_[depth].dense = true;
  t.levels_[depth].dense_mass = std::move(leaf_masses);
  t.build_parents();
  return t;
}

void DyadicMassTree::build_parents() {
  const CellKey nchild = CellKey{1} << dim_;
  for (int level = depth_ - 1; level >= 0; --level) {
    const LevelStore& c = levels_[level + 1];
    if (c.dense) {
      const CellKey cells = cells_at(level);
      std::vector<double> sums(cells, 0.0);
      std::size_t nnz = 0;
      for (CellKey k = 0; k < cells; ++k) {
        double s = 0.0;
        for (CellKey j = 0; j < nchild; ++j) s += c.dense_mass[(k << dim_) | j];
        sums[k] = s;
        nnz += s > 0.0;
      }
      if (nnz * 2 >= cells) {
        levels_[level].dense = true;
        levels_[level].dense_mass = std::move(sums);
      } else {
        for (CellKey k = 0; k < cells; ++k)
          if (sums[k] > 0.0) {
            levels_[level].keys.push_back(k);
            levels_[level].masses.push_back(sums[k]);
          }
      }
      continue;
    }
    std::vector<CellKey> keys;
    std::vector<double> masses;
    for (std::size_t i = 0; i < c.keys.size(); ++i) {
      const CellKey p = c.keys[i] >> dim_;
      if (keys.empty() || keys.back() != p) {
        keys.push_back(p);
        masses.push_back(c.masses[i]);
      } else {
        masses.back() += c.masses[i];
      }
    }
    levels_[level] = make_level(dim_, level, std::move(keys), std::move(masses));
  }
}

double DyadicMassTree::mass(int level, CellKey key) const {
  if (level < 0 || level > depth_) throw DomainError("mass query below tree depth");
  const LevelStore& s = levels_[level];
  if (s.dense) return key < s.dense_mass.size() ? s.dense_mass[key] : 0.0;
  auto it = std::lower_bound(s.keys.begin(), s.keys.end(), key);
  if (it == s.keys.end() || *it != key) return 0.0;
  return s.masses[it - s.keys.begin()];
}

double DyadicMassTree::mass(const DyadicCube& cube) const {
  if (cube.dim() != dim_) throw DomainError("cube dimension does not match tree");
  return mass(cube.level, key_of(cube));
}

std::size_t DyadicMassTree::nonzero_count(int level) const {
  const LevelStore& s = levels_[level];
  if (!s.dense) return s.keys.size();
  std::size_t n = 0;
  for (double m : s.dense_mass) n += m > 0.0;
  return n;
}

namespace {

double near_dist2(const Box& b, std::span<const double> x) {
  double s = 0.0;
  for (int i = 0; i < b.dim; ++i) {
    double t = 0.0;
    if (x[i] < b.lo[i]) t = b.lo[i] - x[i];
    else if (x[i] > b.lo[i] + b.side) t = x[i] - b.lo[i] - b.side;
    s += t * t;
  }
  return s;
}

double far_dist2(const Box& b, std::span<const double> x) {
  double s = 0.0;
  for (int i = 0; i < b.dim; ++i) {
    const double t = std::max(std::abs(x[i] - b.lo[i]), std::abs(x[i] - b.lo[i] - b.side));
    s += t * t;
  }
  return s;
}

double dist(const std::array<double, kMaxDim>& c, std::span<const double> x, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += (c[i] - x[i]) * (c[i] - x[i]);
  return std::sqrt(s);
}

}  // namespace

BallMassEstimate ball_mass_until(const DyadicMassTree& tree, std::span<const double> x, double r, double limit) {
  if (static_cast<int>(x.size()) != tree.dim()) throw DomainError("ball centre dimension does not match tree");
  if (!(r >= 0.0)) throw DomainError("ball radius must be non-negative");
  const double r2 = r * r;
  BallMassEstimate e;
  double partial = 0.0;
  visit_region(
      tree,
      [&](const Box& b) {
        if (near_dist2(b, x) > r2) return Region::Outside;
        if (far_dist2(b, x) <= r2) return Region::Inside;
        return Region::Partial;
      },
      [&](int, CellKey, double m) {
        e.lower += m;
        return e.lower + partial <= limit;
      },
      [&](CellKey, double m, const Box&) {
        partial += m;
        return e.lower + partial <= limit;
      });
  e.upper = e.lower + partial;
  return e;
}

BallMassEstimate ball_mass(const DyadicMassTree& tree, std::span<const double> x, double r) {
  return ball_mass_until(tree, x, r, std::numeric_limits<double>::infinity());
}

double ball_center_mass(const DyadicMassTree& tree, std::span<const double> x, double r) {
  const int d = tree.dim();
  return leaf_center_mass(
      tree,
      [&](const Box& b) {
        const double c = dist(b.center(), x, d);
        const double h = b.half_diagonal();
        if (c + h <= r) return Region::Inside;
        if (c - h > r) return Region::Outside;
        return Region::Partial;
      },
      [&](const std::array<double, kMaxDim>& c) { return dist(c, x, d) <= r; });
}

double box_center_mass(const DyadicMassTree& tree, std::span<const double> lo, std::span<const double> hi) {
  const int d = tree.dim();
  return leaf_center_mass(
      tree,
      [&](const Box& b) {
        bool inside = true;
        for (int i = 0; i < d; ++i) {
          if (b.lo[i] + b.side <= lo[i] || b.lo[i] >= hi[i]) return Region::Outside;
          if (b.lo[i] < lo[i] || b.lo[i] + b.side > hi[i]) inside = false;
        }
        return inside ? Region::Inside : Region::Partial;
      },
      [&](const std::array<double, kMaxDim>& c) {
        for (int i = 0; i < d; ++i)
          if (c[i] < lo[i] || c[i] >= hi[i]) return false;
        return true;
      });
}

double enlarged_cube_mass(const DyadicMassTree& tree, const DyadicCube& q, double K) {
  if (!(K > 0.0)) throw DomainError("enlargement factor must be positive");
  const Point c = q.center();
  const double half = 0.5 * K * q.side();
  Point lo(c.size()), hi(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    lo[i] = c[i] - half;
    hi[i] = c[i] + half;
  }
  return box_center_mass(tree, lo, hi);
}

bool in_shell(std::span<const std::uint32_t> positions, int K, int a) {
  const std::uint32_t top = (std::uint32_t{1} << a) - 1 - static_cast<std::uint32_t>(K);
  for (std::uint32_t j : positions)
    if (j < static_cast<std::uint32_t>(K) || j > top) return false;
  return true;
}

double shell_mass(const DyadicMassTree& tree, const DyadicCube& q, int K, int a) {
  if (a < 1 || K < 0 || std::ldexp(1.0, a - 1) <= K) throw PreconditionError("shell requires 2^{a-1} > K");
  const double s = std::ldexp(1.0, -(q.level + a));
  const Point lo0 = q.lower_corner();
  Point lo(lo0.size()), hi(lo0.size());
  for (std::size_t i = 0; i < lo0.size(); ++i) {
    lo[i] = lo0[i] + K * s;
    hi[i] = lo0[i] + (std::ldexp(1.0, a) - K) * s;
  }
  return box_center_mass(tree, lo, hi);
}

double ConditionalMeasure::total() const {
  double s = 0.0;
  for (const auto& [k, m] : leaves) s += m;
  return s;
}

ConditionalMeasure normalized_restriction(const DyadicMassTree& tree, const DyadicCube& q) {
  if (q.level > tree.depth()) throw DomainError("restriction cube below tree depth");
  ConditionalMeasure out{q, {}};
  const double mq = tree.mass(q);
  if (mq == 0.0) return out;
  const int shift = tree.dim() * (tree.depth() - q.level);
  const CellKey k = key_of(q);
  tree.for_each_in_range(tree.depth(), k << shift, (k + 1) << shift,
                         [&](CellKey key, double m) { out.leaves.emplace_back(key, m / mq); });
  return out;
}

Point snap_to_grid(std::span<const double> omega, int depth) {
  Point out(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) out[i] = std::ldexp(std::floor(std::ldexp(omega[i], depth)), -depth);
  return out;
}

DyadicMassTree translate(const DyadicMassTree& tree, std::span<const double> omega) {
  const int d = tree.dim();
  const int D = tree.depth();
  if (static_cast<int>(omega.size()) != d) throw DomainError("translation dimension does not match tree");
  for (double w : omega)
    if (!(w >= 0.0 && w < 0.5)) throw DomainError("translation coordinates must lie in [0, 1/2)");
  const double half = 0.5;
  std::vector<std::pair<CellKey, double>> moved;
  moved.reserve(tree.nonzero_count(D));
  Point c(d);
  tree.for_each_nonzero(D, [&](CellKey key, double m) {
    const auto lo = lower_corner_of(d, D, key);
    const double s = std::ldexp(1.0, -D);
    for (int i = 0; i < d; ++i) {
      if (lo[i] + s > half) throw PreconditionError("translate requires support inside [0,1/2)^d");
      c[i] = lo[i] + 0.5 * s + omega[i];
    }
    moved.emplace_back(key_of_point(c, D), m);
  });
  std::stable_sort(moved.begin(), moved.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CellKey> keys;
  std::vector<double> masses;
  for (const auto& [k, m] : moved) {
    if (!keys.empty() && keys.back() == k) {
      masses.back() += m;
    } else {
      keys.push_back(k);
      masses.push_back(m);
    }
  }
  return DyadicMassTree(d, D, std::move(keys), std::move(masses));
}

double parent_sum_deviation(const DyadicMassTree& tree) {
  double worst = 0.0;
  for (int level = 0; level < tree.depth(); ++level) {
    tree.for_each_nonzero(level, [&](CellKey key, double m) {
      double s = 0.0;
      tree.for_each_child(level, key, [&](CellKey, double cm) { s += cm; });
      worst = std::max(worst, std::abs(s - m) / m);
    });
  }
  return worst;
}

void write_tree(std::ostream& os, const DyadicMassTree& tree, const std::string& extra) {
  const int d = tree.dim();
  const int D = tree.depth();
  os << "dimens-tree v1 d=" << d << " D=" << D;
  if (!extra.empty()) os << ' ' << extra;
  os << '\n';
  char buf[64];
  tree.for_each_nonzero(D, [&](CellKey key, double m) {
    const DyadicCube q = cube_of_key(d, D, key);
    os << D;
    for (std::uint32_t i : q.index) os << ' ' << i;
    auto res = std::to_chars(buf, buf + sizeof buf, m);
    os << ' ' << std::string_view(buf, res.ptr - buf) << '\n';
  });
}

DyadicMassTree read_tree(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("tree file is empty");
  std::istringstream hs(line);
  std::string magic, version, tok;
  hs >> magic >> version;
  if (magic != "dimens-tree" || version != "v1") throw ConfigError("tree file: bad header");
  int d = -1, D = -1;
  while (hs >> tok) {
    if (tok.rfind("d=", 0) == 0) d = std::stoi(tok.substr(2));
    else if (tok.rfind("D=", 0) == 0) D = std::stoi(tok.substr(2));
  }
  if (d < 1 || d > kMaxDim || D < 0 || D > max_level(d)) throw ConfigError("tree file: bad d or D in header");
  std::vector<std::pair<CellKey, double>> leaves;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int level = -1;
    ls >> level;
    if (level != D) throw ConfigError("tree file line " + std::to_string(lineno) + ": level must equal D");
    DyadicCube q{level, std::vector<std::uint32_t>(d)};
    for (int i = 0; i < d; ++i) {
      std::uint64_t v = 0;
      if (!(ls >> v) || v >= (std::uint64_t{1} << D))
        throw ConfigError("tree file line " + std::to_string(lineno) + ": bad index");
      q.index[i] = static_cast<std::uint32_t>(v);
    }
    std::string ms;
    if (!(ls >> ms)) throw ConfigError("tree file line " + std::to_string(lineno) + ": missing mass");
    double m = 0.0;
    auto res = std::from_chars(ms.data(), ms.data() + ms.size(), m);
    if (res.ec != std::errc{} || res.ptr != ms.data() + ms.size())
      throw ConfigError("tree file line " + std::to_string(lineno) + ": bad mass");
    leaves.emplace_back(key_of(q), m);
  }
  std::sort(leaves.begin(), leaves.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CellKey> keys;
  std::vector<double> masses;
  for (const auto& [k, m] : leaves) {
    if (!keys.empty() && keys.back() == k) throw ConfigError("tree file: duplicate leaf");
    keys.push_back(k);
    masses.push_back(m);
  }
  try {
    return DyadicMassTree(d, D, std::move(keys), std::move(masses));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("tree file: ") + e.what());
  }
}

CellKey sample_leaf(const DyadicMassTree& tree, Rng& rng) {
  CellKey key = 0;
  double m = tree.total();
  for (int level = 0; level < tree.depth(); ++level) {
    const double target = rng.uniform() * m;
    double acc = 0.0;
    CellKey chosen = 0;
    double chosen_mass = 0.0;
    bool done = false;
    tree.for_each_child(level, key, [&](CellKey ck, double cm) {
      if (done) return;
      acc += cm;
      chosen = ck;
      chosen_mass = cm;
      if (target < acc) done = true;
    });
    key = chosen;
    m = chosen_mass;
  }
  return key;
}

std::vector<Point> sample_points(const DyadicMassTree& tree, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(cube_of_key(tree.dim(), tree.depth(), sample_leaf(tree, rng)).center());
  return out;
}

}  // namespace dimens
