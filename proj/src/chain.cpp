#include "dimens/chain.hpp"

#include <cmath>

#include "dimens/error.hpp"

namespace dimens {

std::uint64_t ChainView::relative_key(int level, int a) const {
  std::uint64_t rel = 0;
  for (int j = level + 1; j <= level + a; ++j) rel = (rel << dim()) | digit(j);
  return rel;
}

std::uint64_t descendant_hash(std::uint64_t h, std::uint64_t rel, int a, int dim) {
  const std::uint64_t mask = (std::uint64_t{1} << dim) - 1;
  for (int j = a - 1; j >= 0; --j) h = child_hash(h, static_cast<std::uint32_t>((rel >> (j * dim)) & mask));
  return h;
}

TreeChain::TreeChain(const DyadicMassTree& tree, std::span<const double> x) : tree_(&tree) {
  if (static_cast<int>(x.size()) != tree.dim()) throw DomainError("point dimension does not match tree");
  const CellKey leaf = key_of_point(x, tree.depth());
  keys_.resize(tree.depth() + 1);
  hashes_.resize(tree.depth() + 1);
  hashes_[0] = root_hash();
  for (int k = 0; k <= tree.depth(); ++k) {
    keys_[k] = leaf >> (tree.dim() * (tree.depth() - k));
    if (k > 0) hashes_[k] = child_hash(hashes_[k - 1], last_digit(keys_[k], tree.dim()));
  }
}

double TreeChain::log2_mass(int level) const { return std::log2(tree_->mass(level, keys_[level])); }

void TreeChain::descendant_weights(int level, int a, std::vector<double>& out) const {
  if (level + a > tree_->depth()) throw PreconditionError("descendant level exceeds tree depth");
  const int d = tree_->dim();
  const double m = tree_->mass(level, keys_[level]);
  if (m == 0.0) throw ZeroMassError("cube Q^{k,x} has zero mass");
  out.assign(std::size_t{1} << (a * d), 0.0);
  const CellKey base = keys_[level] << (a * d);
  tree_->for_each_in_range(level + a, base, base + out.size(), [&](CellKey k, double mk) { out[k - base] = mk / m; });
}

SymbolicChain::SymbolicChain(std::shared_ptr<const DigitLaw> law, int length, Rng& rng) : law_(std::move(law)) {
  const std::size_t n = std::size_t{1} << law_->dim();
  std::vector<double> w(n);
  paths_.reserve(length + 1);
  log2_mass_.reserve(length + 1);
  paths_.push_back(CellPath{});
  log2_mass_.push_back(0.0);
  for (int k = 1; k <= length; ++k) {
    law_->child_weights(paths_.back(), 0, w);
    const double u = rng.uniform();
    double acc = 0.0;
    std::uint32_t chosen = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (w[c] <= 0.0) continue;
      acc += w[c];
      chosen = static_cast<std::uint32_t>(c);
      if (u < acc) break;
    }
    paths_.push_back(paths_.back().child(chosen));
    log2_mass_.push_back(log2_mass_.back() + std::log2(w[chosen]));
  }
}

void SymbolicChain::descendant_weights(int level, int a, std::vector<double>& out) const {
  const int d = law_->dim();
  const std::size_t n = std::size_t{1} << d;
  out.assign(std::size_t{1} << (a * d), 0.0);
  std::vector<std::vector<double>> scratch(a, std::vector<double>(n));
  auto rec = [&](auto&& self, const CellPath& path, int depth, std::uint64_t rel, double m) -> void {
    if (depth == a) {
      out[rel] = m;
      return;
    }
    std::vector<double>& w = scratch[depth];
    law_->child_weights(path, 0, w);
    for (std::size_t c = 0; c < n; ++c)
      if (w[c] > 0.0) self(self, path.child(static_cast<std::uint32_t>(c)), depth + 1, (rel << d) | c, m * w[c]);
  };
  rec(rec, paths_[level], 0, 0, 1.0);
}

Point SymbolicChain::point() const {
  const int d = law_->dim();
  const int bits = std::min(length(), 52);
  Point x(d, 0.0);
  for (int k = 1; k <= bits; ++k)
    for (int i = 0; i < d; ++i)
      if ((paths_[k].recent[0] >> i) & 1u) x[i] += std::ldexp(1.0, -k);
  for (int i = 0; i < d; ++i) x[i] += std::ldexp(1.0, -bits - 1);
  return x;
}

}  // namespace dimens
