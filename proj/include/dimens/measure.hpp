#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimens/dyadic.hpp"
#include "dimens/mass_tree.hpp"

namespace dimens {

enum class MeasureKind { Lebesgue, PointMass, Bernoulli, IFS, PorousCantor, Product, Cascade };

struct IfsMap {
  double ratio = 0.5;
  Point translation;
};

/// Declarative description of a generator. Only the fields of the chosen kind are used.
struct MeasureSpec {
  MeasureKind kind = MeasureKind::Lebesgue;
  int dim = 1;
  int depth = 0;  // 0 selects the default for the dimension

  Point point;                            // PointMass
  std::vector<double> weights;            // Bernoulli: 2^d child weights in digit order
  std::vector<IfsMap> maps;               // IFS
  std::vector<double> probabilities;      // IFS
  int levels_per_generation = 2;          // PorousCantor: a
  std::vector<bool> gap_pattern{true};    // PorousCantor: gap (true) or full generation, cycled
  std::vector<MeasureSpec> factors;       // Product, each factor contributes its own axes
  double spread = 0.5;                    // Cascade: weights proportional to 1 - s + 2sU
  std::uint64_t seed = 0;                 // Cascade
};

int default_depth(int dim);
int effective_depth(const MeasureSpec& spec);

/// Throws DomainError when weights/probabilities/maps violate their invariants.
void validate(const MeasureSpec& spec);

MeasureSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const MeasureSpec& spec);

std::string kind_name(MeasureKind kind);

/// Gap fraction of one PorousCantor gap generation: 1 - 2^{1-a}.
double porous_cantor_gap(int a);

struct KnownDimension {
  std::optional<double> value;
  std::string formula;
};

KnownDimension theoretical_dimension(const MeasureSpec& spec);

/// True iff the images of [0,1]^d under the IFS maps are pairwise disjoint closed boxes.
bool ifs_separated(const MeasureSpec& spec);

struct BuiltMeasure {
  DyadicMassTree tree;
  KnownDimension dimension;
  std::vector<std::string> warnings;
};

BuiltMeasure build(const MeasureSpec& spec);

/// Address of a cube as seen by digit laws: level, path hash and the most recent digits
/// (recent[0] is the digit that produced this cube).
inline constexpr int kHistory = 32;

struct CellPath {
  int level = 0;
  std::uint64_t hash = root_hash();
  std::array<std::uint32_t, kHistory> recent{};

  CellPath child(std::uint32_t digit) const;
};

/// Conditional child distribution of a measure generated digit by digit.
class DigitLaw {
 public:
  virtual ~DigitLaw() = default;
  virtual int dim() const = 0;
  /// Writes the 2^{dim} conditional weights of the children of `path`. `shift` selects the
  /// bits of the stored digits belonging to this law (non-zero inside products).
  virtual void child_weights(const CellPath& path, int shift, std::span<double> out) const = 0;
};

/// Law for kinds generated digit by digit; null for IFS (and products containing one).
std::unique_ptr<DigitLaw> make_law(const MeasureSpec& spec);

}  // namespace dimens
