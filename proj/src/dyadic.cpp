#include "dimens/dyadic.hpp"

#include <cmath>
#include <string>

#include "dimens/error.hpp"

namespace dimens {

double DyadicCube::side() const { return std::ldexp(1.0, -level); }

Point DyadicCube::lower_corner() const {
  Point p(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) p[i] = std::ldexp(static_cast<double>(index[i]), -level);
  return p;
}

Point DyadicCube::center() const {
  Point p = lower_corner();
  const double h = 0.5 * side();
  for (double& v : p) v += h;
  return p;
}

bool DyadicCube::contains(std::span<const double> x) const {
  if (x.size() != index.size()) return false;
  const double s = side();
  for (std::size_t i = 0; i < index.size(); ++i) {
    const double lo = index[i] * s;
    if (x[i] < lo || x[i] >= lo + s) return false;
  }
  return true;
}

DyadicCube unit_cube(int dim) { return DyadicCube{0, std::vector<std::uint32_t>(dim, 0)}; }

DyadicCube cube_of_point(std::span<const double> x, int level) {
  if (level < 0 || level > 32) throw DomainError("cube_of_point: level must lie in [0, 32]");
  DyadicCube q;
  q.level = level;
  q.index.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] < 1.0))
      throw DomainError("cube_of_point: coordinate " + std::to_string(i) + " outside [0,1)");
    const double scaled = std::floor(std::ldexp(x[i], level));
    q.index[i] = static_cast<std::uint32_t>(scaled);
  }
  return q;
}

std::vector<DyadicCube> refine(const DyadicCube& cube, int a) {
  const int d = cube.dim();
  const std::size_t count = std::size_t{1} << (a * d);
  std::vector<DyadicCube> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) {
    DyadicCube child{cube.level + a, std::vector<std::uint32_t>(d)};
    for (int i = 0; i < d; ++i) {
      std::uint32_t off = 0;
      for (int j = 0; j < a; ++j) off |= static_cast<std::uint32_t>((c >> (j * d + i)) & 1u) << j;
      child.index[i] = (cube.index[i] << a) | off;
    }
    out.push_back(std::move(child));
  }
  return out;
}

bool is_subcube(const DyadicCube& inner, const DyadicCube& outer) {
  if (inner.dim() != outer.dim() || inner.level < outer.level) return false;
  const int shift = inner.level - outer.level;
  for (int i = 0; i < inner.dim(); ++i)
    if ((inner.index[i] >> shift) != outer.index[i]) return false;
  return true;
}

CellKey key_of(const DyadicCube& cube) {
  const int d = cube.dim();
  CellKey key = 0;
  for (int b = 0; b < cube.level; ++b)
    for (int i = 0; i < d; ++i) key |= static_cast<CellKey>((cube.index[i] >> b) & 1u) << (b * d + i);
  return key;
}

DyadicCube cube_of_key(int dim, int level, CellKey key) {
  DyadicCube q{level, std::vector<std::uint32_t>(dim, 0)};
  for (int b = 0; b < level; ++b)
    for (int i = 0; i < dim; ++i) q.index[i] |= static_cast<std::uint32_t>((key >> (b * dim + i)) & 1u) << b;
  return q;
}

CellKey key_of_point(std::span<const double> x, int level) { return key_of(cube_of_point(x, level)); }

std::array<double, kMaxDim> lower_corner_of(int dim, int level, CellKey key) {
  std::array<double, kMaxDim> out{};
  for (int i = 0; i < dim; ++i) {
    std::uint64_t idx = 0;
    for (int b = 0; b < level; ++b) idx |= ((key >> (b * dim + i)) & 1u) << b;
    out[i] = std::ldexp(static_cast<double>(idx), -level);
  }
  return out;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t root_hash() { return 0x6a09e667f3bcc908ULL; }

std::uint64_t child_hash(std::uint64_t parent_hash, std::uint32_t digit) {
  return mix64(parent_hash ^ (0x100000001b3ULL * (digit + 1)));
}

std::uint64_t path_hash(int dim, int level, CellKey key) {
  std::uint64_t h = root_hash();
  for (int j = level - 1; j >= 0; --j)
    h = child_hash(h, static_cast<std::uint32_t>((key >> (j * dim)) & ((CellKey{1} << dim) - 1)));
  return h;
}

}  // namespace dimens
