#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dimens/dyadic.hpp"
#include "dimens/mass_tree.hpp"
#include "dimens/measure.hpp"
#include "dimens/rng.hpp"

namespace dimens {

/// The nested cubes Q^{0,x} ⊃ Q^{1,x} ⊃ ... of one point together with the conditional
/// masses of their descendants. Implemented over a finite tree and over a digit law
/// (unbounded depth), so scale sweeps run unchanged on either.
class ChainView {
 public:
  virtual ~ChainView() = default;
  virtual int dim() const = 0;
  /// Deepest level k for which Q^{k,x} is known.
  virtual int length() const = 0;
  /// Deepest level at which descendant masses can be resolved.
  virtual int resolution() const = 0;
  /// Digit taking Q^{k-1,x} to Q^{k,x}, for 1 <= k <= length().
  virtual std::uint32_t digit(int level) const = 0;
  virtual std::uint64_t cube_hash(int level) const = 0;
  virtual double log2_mass(int level) const = 0;
  /// Conditional masses µ(Q')/µ(Q^{k,x}) of the 2^{ad} cubes Q' ≺_a Q^{k,x}, indexed by the
  /// relative Morton key. Throws ZeroMassError if µ(Q^{k,x}) = 0.
  virtual void descendant_weights(int level, int a, std::vector<double>& out) const = 0;

  /// Relative Morton key of Q^{k+a,x} inside Q^{k,x}.
  std::uint64_t relative_key(int level, int a) const;
};

/// Hash of the descendant with relative key `rel` (a levels down) of the cube hashed `h`.
std::uint64_t descendant_hash(std::uint64_t h, std::uint64_t rel, int a, int dim);

class TreeChain final : public ChainView {
 public:
  TreeChain(const DyadicMassTree& tree, std::span<const double> x);
  int dim() const override { return tree_->dim(); }
  int length() const override { return tree_->depth(); }
  int resolution() const override { return tree_->depth(); }
  std::uint32_t digit(int level) const override { return last_digit(keys_[level], tree_->dim()); }
  std::uint64_t cube_hash(int level) const override { return hashes_[level]; }
  double log2_mass(int level) const override;
  void descendant_weights(int level, int a, std::vector<double>& out) const override;
  CellKey key(int level) const { return keys_[level]; }

 private:
  const DyadicMassTree* tree_;
  std::vector<CellKey> keys_;
  std::vector<std::uint64_t> hashes_;
};

/// A µ-typical chain drawn digit by digit from a law, to any length.
class SymbolicChain final : public ChainView {
 public:
  SymbolicChain(std::shared_ptr<const DigitLaw> law, int length, Rng& rng);
  int dim() const override { return law_->dim(); }
  int length() const override { return static_cast<int>(paths_.size()) - 1; }
  int resolution() const override { return length() + 64; }
  std::uint32_t digit(int level) const override { return paths_[level].recent[0]; }
  std::uint64_t cube_hash(int level) const override { return paths_[level].hash; }
  double log2_mass(int level) const override { return log2_mass_[level]; }
  void descendant_weights(int level, int a, std::vector<double>& out) const override;
  /// First coordinates of the chain's point (the centre of its deepest cube, to 53 bits).
  Point point() const;

 private:
  std::shared_ptr<const DigitLaw> law_;
  std::vector<CellPath> paths_;
  std::vector<double> log2_mass_;
};

}  // namespace dimens
