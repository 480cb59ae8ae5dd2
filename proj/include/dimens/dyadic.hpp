#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace dimens {

/// Largest ambient dimension supported by the library.
inline constexpr int kMaxDim = 4;

using Point = std::vector<double>;

/// Morton-interleaved address of a cube inside its level: the level-k key is the
/// concatenation of the k child digits from the root down, each digit holding one
/// bit per coordinate (bit i of a digit belongs to coordinate i).
using CellKey = std::uint64_t;

/// Deepest level whose keys fit in a CellKey for dimension d.
constexpr int max_level(int dim) { return 63 / dim; }

/// Half-open dyadic cube [index * 2^-level, (index + 1) * 2^-level) in each coordinate.
struct DyadicCube {
  int level = 0;
  std::vector<std::uint32_t> index;

  int dim() const { return static_cast<int>(index.size()); }
  double side() const;
  Point lower_corner() const;
  Point center() const;
  bool contains(std::span<const double> x) const;

  auto operator<=>(const DyadicCube&) const = default;
};

DyadicCube unit_cube(int dim);

/// The unique level-k cube containing x. Throws DomainError if x is outside [0,1)^d.
DyadicCube cube_of_point(std::span<const double> x, int level);

/// All 2^{a d} level-(Q.level + a) subcubes of Q, in Morton order.
std::vector<DyadicCube> refine(const DyadicCube& cube, int a);

/// True iff `inner` is contained in `outer` (levels may be equal).
bool is_subcube(const DyadicCube& inner, const DyadicCube& outer);

CellKey key_of(const DyadicCube& cube);
DyadicCube cube_of_key(int dim, int level, CellKey key);

/// Key of the level-k cube containing x (no range checks beyond those of cube_of_point).
CellKey key_of_point(std::span<const double> x, int level);

/// Child digit taking the level-(k-1) ancestor to the level-k cube: the low `dim` bits.
constexpr std::uint32_t last_digit(CellKey key, int dim) {
  return static_cast<std::uint32_t>(key & ((CellKey{1} << dim) - 1));
}

/// Lower corner of a keyed cube, written into a fixed-size buffer.
std::array<double, kMaxDim> lower_corner_of(int dim, int level, CellKey key);

/// Path hash of a cube: folds the child digits from the root. Gives every cube a
/// stable identity independent of how deep it is (usable past max_level).
std::uint64_t root_hash();
std::uint64_t child_hash(std::uint64_t parent_hash, std::uint32_t digit);
std::uint64_t path_hash(int dim, int level, CellKey key);

/// splitmix64 finaliser; the mixing primitive behind all seeded hashing.
std::uint64_t mix64(std::uint64_t x);

}  // namespace dimens
