#include "dimens/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dimens/entropy.hpp"
#include "dimens/error.hpp"

namespace dimens {

using nlohmann::json;

int default_depth(int dim) {
  switch (dim) {
    case 1: return 16;
    case 2: return 12;
    case 3: return 8;
    default: return 6;
  }
}

int effective_depth(const MeasureSpec& spec) { return spec.depth > 0 ? spec.depth : default_depth(spec.dim); }

std::string kind_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Lebesgue: return "lebesgue";
    case MeasureKind::PointMass: return "point_mass";
    case MeasureKind::Bernoulli: return "bernoulli";
    case MeasureKind::IFS: return "ifs";
    case MeasureKind::PorousCantor: return "porous_cantor";
    case MeasureKind::Product: return "product";
    case MeasureKind::Cascade: return "cascade";
  }
  return "unknown";
}

double porous_cantor_gap(int a) { return 1.0 - std::ldexp(1.0, 1 - a); }

namespace {

void check_probability_vector(const std::vector<double>& p, const char* what) {
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be non-negative");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12) throw DomainError(std::string(what) + " must sum to 1");
}

}  // namespace

void validate(const MeasureSpec& spec) {
  if (spec.dim < 1 || spec.dim > kMaxDim) throw DomainError("measure dimension must lie in [1, 4]");
  if (spec.depth < 0 || spec.depth > max_level(spec.dim)) throw DomainError("depth out of range for this dimension");
  switch (spec.kind) {
    case MeasureKind::Lebesgue: break;
    case MeasureKind::PointMass:
      if (static_cast<int>(spec.point.size()) != spec.dim) throw DomainError("point_mass: point has wrong dimension");
      for (double v : spec.point)
        if (!(v >= 0.0 && v < 1.0)) throw DomainError("point_mass: point must lie in [0,1)^d");
      break;
    case MeasureKind::Bernoulli:
      if (spec.weights.size() != (std::size_t{1} << spec.dim)) throw DomainError("bernoulli: need 2^d weights");
      check_probability_vector(spec.weights, "bernoulli weights");
      break;
    case MeasureKind::IFS:
      if (spec.maps.empty() || spec.maps.size() != spec.probabilities.size())
        throw DomainError("ifs: need one probability per map");
      check_probability_vector(spec.probabilities, "ifs probabilities");
      for (const IfsMap& m : spec.maps) {
        if (!(m.ratio > 0.0 && m.ratio < 1.0)) throw DomainError("ifs: contraction ratio must lie in (0,1)");
        if (static_cast<int>(m.translation.size()) != spec.dim) throw DomainError("ifs: translation has wrong dimension");
        for (double t : m.translation)
          if (!(t >= 0.0 && t + m.ratio <= 1.0)) throw DomainError("ifs: map image leaves [0,1)^d");
      }
      break;
    case MeasureKind::PorousCantor:
      if (spec.levels_per_generation < 2 || spec.levels_per_generation > kHistory)
        throw DomainError("porous_cantor: levels_per_generation must lie in [2, 32]");
      if (spec.gap_pattern.empty()) throw DomainError("porous_cantor: empty pattern");
      break;
    case MeasureKind::Product: {
      if (spec.factors.empty()) throw DomainError("product: no factors");
      int total = 0;
      for (const MeasureSpec& f : spec.factors) {
        if (f.kind == MeasureKind::IFS) throw DomainError("product: ifs factors are not supported");
        validate(f);
        total += f.dim;
      }
      if (total != spec.dim) throw DomainError("product: factor dimensions must add up to dim");
      break;
    }
    case MeasureKind::Cascade:
      if (!(spec.spread >= 0.0 && spec.spread < 1.0)) throw DomainError("cascade: spread must lie in [0,1)");
      break;
  }
}

namespace {

MeasureKind kind_from_name(const std::string& s) {
  for (MeasureKind k : {MeasureKind::Lebesgue, MeasureKind::PointMass, MeasureKind::Bernoulli, MeasureKind::IFS,
                        MeasureKind::PorousCantor, MeasureKind::Product, MeasureKind::Cascade})
    if (kind_name(k) == s) return k;
  throw ConfigError("unknown measure type '" + s + "'");
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("measure spec field '") + key + "': " + e.what());
  }
}

}  // namespace

MeasureSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw ConfigError("measure spec must be an object with a 'type'");
  MeasureSpec s;
  s.kind = kind_from_name(get_or<std::string>(j, "type", ""));
  s.depth = get_or<int>(j, "depth", 0);
  s.dim = get_or<int>(j, "dim", 1);
  switch (s.kind) {
    case MeasureKind::Lebesgue: break;
    case MeasureKind::PointMass:
      s.point = get_or<std::vector<double>>(j, "point", {});
      if (!j.contains("dim")) s.dim = static_cast<int>(s.point.size());
      break;
    case MeasureKind::Bernoulli:
      s.weights = get_or<std::vector<double>>(j, "weights", {});
      if (!j.contains("dim")) s.dim = std::max(1, static_cast<int>(std::lround(std::log2(std::max<std::size_t>(1, s.weights.size())))));
      break;
    case MeasureKind::IFS:
      if (!j.contains("maps") || !j.at("maps").is_array()) throw ConfigError("ifs: 'maps' array required");
      for (const json& m : j.at("maps")) {
        IfsMap im;
        im.ratio = get_or<double>(m, "ratio", 0.0);
        im.translation = get_or<std::vector<double>>(m, "translation", {});
        s.maps.push_back(im);
      }
      if (!j.contains("dim") && !s.maps.empty()) s.dim = static_cast<int>(s.maps[0].translation.size());
      s.probabilities = get_or<std::vector<double>>(j, "probabilities", {});
      if (s.probabilities.empty())
        s.probabilities.assign(s.maps.size(), s.maps.empty() ? 0.0 : 1.0 / static_cast<double>(s.maps.size()));
      break;
    case MeasureKind::PorousCantor: {
      if (j.contains("gap")) {
        const double g = get_or<double>(j, "gap", 0.0);
        const double a = 1.0 - std::log2(1.0 - g);
        if (!(g > 0.0 && g < 1.0) || std::abs(a - std::round(a)) > 1e-12)
          throw DomainError("porous_cantor: gap must equal 1 - 2^{1-a} for an integer a >= 2");
        s.levels_per_generation = static_cast<int>(std::lround(a));
      } else {
        s.levels_per_generation = get_or<int>(j, "levels_per_generation", 2);
      }
      if (j.contains("pattern")) {
        s.gap_pattern.clear();
        for (const auto& p : get_or<std::vector<std::string>>(j, "pattern", {})) {
          if (p == "gap") s.gap_pattern.push_back(true);
          else if (p == "full") s.gap_pattern.push_back(false);
          else throw ConfigError("porous_cantor: pattern entries must be 'gap' or 'full'");
        }
      }
      break;
    }
    case MeasureKind::Product: {
      if (!j.contains("factors") || !j.at("factors").is_array()) throw ConfigError("product: 'factors' array required");
      int total = 0;
      for (const json& f : j.at("factors")) {
        s.factors.push_back(spec_from_json(f));
        total += s.factors.back().dim;
      }
      if (!j.contains("dim")) s.dim = total;
      break;
    }
    case MeasureKind::Cascade:
      s.spread = get_or<double>(j, "spread", 0.5);
      s.seed = get_or<std::uint64_t>(j, "seed", 0);
      break;
  }
  validate(s);
  return s;
}

json spec_to_json(const MeasureSpec& s) {
  json j;
  j["type"] = kind_name(s.kind);
  j["dim"] = s.dim;
  if (s.depth > 0) j["depth"] = s.depth;
  switch (s.kind) {
    case MeasureKind::Lebesgue: break;
    case MeasureKind::PointMass: j["point"] = s.point; break;
    case MeasureKind::Bernoulli: j["weights"] = s.weights; break;
    case MeasureKind::IFS: {
      json maps = json::array();
      for (const IfsMap& m : s.maps) maps.push_back({{"ratio", m.ratio}, {"translation", m.translation}});
      j["maps"] = maps;
      j["probabilities"] = s.probabilities;
      break;
    }
    case MeasureKind::PorousCantor: {
      j["levels_per_generation"] = s.levels_per_generation;
      json p = json::array();
      for (bool g : s.gap_pattern) p.push_back(g ? "gap" : "full");
      j["pattern"] = p;
      break;
    }
    case MeasureKind::Product: {
      json f = json::array();
      for (const MeasureSpec& x : s.factors) f.push_back(spec_to_json(x));
      j["factors"] = f;
      break;
    }
    case MeasureKind::Cascade:
      j["spread"] = s.spread;
      j["seed"] = s.seed;
      break;
  }
  return j;
}

bool ifs_separated(const MeasureSpec& spec) {
  for (std::size_t i = 0; i < spec.maps.size(); ++i)
    for (std::size_t j = i + 1; j < spec.maps.size(); ++j) {
      bool apart = false;
      for (int c = 0; c < spec.dim; ++c) {
        const double a0 = spec.maps[i].translation[c], a1 = a0 + spec.maps[i].ratio;
        const double b0 = spec.maps[j].translation[c], b1 = b0 + spec.maps[j].ratio;
        if (a1 < b0 || b1 < a0) apart = true;
      }
      if (!apart) return false;
    }
  return true;
}

KnownDimension theoretical_dimension(const MeasureSpec& spec) {
  switch (spec.kind) {
    case MeasureKind::Lebesgue: return {static_cast<double>(spec.dim), "lebesgue: d"};
    case MeasureKind::PointMass: return {0.0, "point_mass: 0"};
    case MeasureKind::Bernoulli: return {tuple_entropy(spec.weights), "bernoulli: H(weights)"};
    case MeasureKind::IFS: {
      if (!ifs_separated(spec)) return {std::nullopt, "ifs: not separated"};
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < spec.maps.size(); ++i) {
        const double q = spec.probabilities[i];
        if (q > 0.0) {
          num += q * std::log2(q);
          den += q * std::log2(spec.maps[i].ratio);
        }
      }
      return {num / den, "ifs: sum q log q / sum q log r"};
    }
    case MeasureKind::PorousCantor: {
      double bits = 0.0;
      for (bool g : spec.gap_pattern) bits += g ? spec.dim : spec.dim * spec.levels_per_generation;
      return {bits / (static_cast<double>(spec.levels_per_generation) * spec.gap_pattern.size()),
              "porous_cantor: log(#kept) / levels per generation"};
    }
    case MeasureKind::Product: {
      double total = 0.0;
      for (const MeasureSpec& f : spec.factors) {
        KnownDimension k = theoretical_dimension(f);
        if (!k.value) return {std::nullopt, "product: factor without known dimension"};
        total += *k.value;
      }
      return {total, "product: sum of factors"};
    }
    case MeasureKind::Cascade: return {std::nullopt, "cascade: unknown"};
  }
  return {std::nullopt, "unknown"};
}

CellPath CellPath::child(std::uint32_t digit) const {
  CellPath c;
  c.level = level + 1;
  c.hash = child_hash(hash, digit);
  c.recent[0] = digit;
  for (int i = 1; i < kHistory; ++i) c.recent[i] = recent[i - 1];
  return c;
}

namespace {

std::uint32_t sub_digit(std::uint32_t digit, int shift, int dim) { return (digit >> shift) & ((1u << dim) - 1); }

class LebesgueLaw final : public DigitLaw {
 public:
  explicit LebesgueLaw(int d) : d_(d) {}
  int dim() const override { return d_; }
  void child_weights(const CellPath&, int, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), std::ldexp(1.0, -d_));
  }

 private:
  int d_;
};

class PointMassLaw final : public DigitLaw {
 public:
  explicit PointMassLaw(Point x) : x_(std::move(x)) {}
  int dim() const override { return static_cast<int>(x_.size()); }
  void child_weights(const CellPath& path, int, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    std::uint32_t digit = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      const double scaled = std::floor(std::ldexp(x_[i], path.level + 1));
      digit |= static_cast<std::uint32_t>(std::fmod(scaled, 2.0)) << i;
    }
    out[digit] = 1.0;
  }

 private:
  Point x_;
};

class BernoulliLaw final : public DigitLaw {
 public:
  BernoulliLaw(int d, std::vector<double> w) : d_(d), w_(std::move(w)) {}
  int dim() const override { return d_; }
  void child_weights(const CellPath&, int, std::span<double> out) const override {
    std::copy(w_.begin(), w_.end(), out.begin());
  }

 private:
  int d_;
  std::vector<double> w_;
};

class PorousCantorLaw final : public DigitLaw {
 public:
  PorousCantorLaw(int d, int a, std::vector<bool> pattern) : d_(d), a_(a), pattern_(std::move(pattern)) {}
  int dim() const override { return d_; }
  void child_weights(const CellPath& path, int shift, std::span<double> out) const override {
    const int gen = path.level / a_;
    const int sub = path.level % a_;
    const bool gap = pattern_[gen % pattern_.size()];
    if (!gap || sub == 0) {
      std::fill(out.begin(), out.end(), std::ldexp(1.0, -d_));
      return;
    }
    std::fill(out.begin(), out.end(), 0.0);
    out[sub_digit(path.recent[sub - 1], shift, d_)] = 1.0;
  }

 private:
  int d_;
  int a_;
  std::vector<bool> pattern_;
};

class CascadeLaw final : public DigitLaw {
 public:
  CascadeLaw(int d, double spread, std::uint64_t seed) : d_(d), spread_(spread), seed_(seed) {}
  int dim() const override { return d_; }
  void child_weights(const CellPath& path, int shift, std::span<double> out) const override {
    double total = 0.0;
    const std::uint64_t base = mix64(seed_ ^ mix64(path.hash + static_cast<std::uint64_t>(shift)));
    for (std::size_t c = 0; c < out.size(); ++c) {
      const double u = static_cast<double>(mix64(base + c) >> 11) * 0x1.0p-53;
      out[c] = 1.0 - spread_ + 2.0 * spread_ * u;
      total += out[c];
    }
    for (double& v : out) v /= total;
  }

 private:
  int d_;
  double spread_;
  std::uint64_t seed_;
};

class ProductLaw final : public DigitLaw {
 public:
  explicit ProductLaw(std::vector<std::unique_ptr<DigitLaw>> f) : factors_(std::move(f)) {
    for (const auto& l : factors_) d_ += l->dim();
  }
  int dim() const override { return d_; }
  void child_weights(const CellPath& path, int shift, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 1.0);
    int offset = 0;
    std::array<double, std::size_t{1} << kMaxDim> fw{};
    for (const auto& l : factors_) {
      const int fd = l->dim();
      l->child_weights(path, shift + offset, std::span<double>(fw.data(), std::size_t{1} << fd));
      for (std::size_t c = 0; c < out.size(); ++c) out[c] *= fw[sub_digit(static_cast<std::uint32_t>(c), offset, fd)];
      offset += fd;
    }
  }

 private:
  std::vector<std::unique_ptr<DigitLaw>> factors_;
  int d_ = 0;
};

DyadicMassTree build_from_law(const DigitLaw& law, int depth) {
  const int d = law.dim();
  const std::size_t nchild = std::size_t{1} << d;
  std::vector<CellKey> keys;
  std::vector<double> masses;
  std::vector<std::vector<double>> scratch(depth + 1, std::vector<double>(nchild));
  auto rec = [&](auto&& self, const CellPath& path, CellKey key, double m) -> void {
    if (path.level == depth) {
      if (keys.size() >= kMaxLeafCells) throw DomainError("tree exceeds the leaf-cell memory guard");
      keys.push_back(key);
      masses.push_back(m);
      return;
    }
    std::vector<double>& w = scratch[path.level];
    law.child_weights(path, 0, w);
    for (std::size_t c = 0; c < nchild; ++c)
      if (w[c] > 0.0) self(self, path.child(static_cast<std::uint32_t>(c)), (key << d) | c, m * w[c]);
  };
  rec(rec, CellPath{}, 0, 1.0);
  return DyadicMassTree(d, depth, std::move(keys), std::move(masses));
}

DyadicMassTree build_ifs(const MeasureSpec& spec, int depth) {
  const int d = spec.dim;
  const double leaf = std::ldexp(1.0, -depth);
  std::vector<std::pair<CellKey, double>> hits;
  Point center(d);
  auto rec = [&](auto&& self, double scale, const Point& offset, double w) -> void {
    if (scale <= leaf) {
      for (int i = 0; i < d; ++i) center[i] = std::min(offset[i] + 0.5 * scale, std::nextafter(1.0, 0.0));
      if (hits.size() >= kMaxLeafCells) throw DomainError("ifs raster exceeds the leaf-cell memory guard");
      hits.emplace_back(key_of_point(center, depth), w);
      return;
    }
    Point next(d);
    for (std::size_t m = 0; m < spec.maps.size(); ++m) {
      const double q = spec.probabilities[m];
      if (q <= 0.0) continue;
      for (int i = 0; i < d; ++i) next[i] = offset[i] + scale * spec.maps[m].translation[i];
      self(self, scale * spec.maps[m].ratio, next, w * q);
    }
  };
  rec(rec, 1.0, Point(d, 0.0), 1.0);
  std::stable_sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CellKey> keys;
  std::vector<double> masses;
  for (const auto& [k, m] : hits) {
    if (!keys.empty() && keys.back() == k) {
      masses.back() += m;
    } else {
      keys.push_back(k);
      masses.push_back(m);
    }
  }
  return DyadicMassTree(d, depth, std::move(keys), std::move(masses));
}

}  // namespace

std::unique_ptr<DigitLaw> make_law(const MeasureSpec& spec) {
  switch (spec.kind) {
    case MeasureKind::Lebesgue: return std::make_unique<LebesgueLaw>(spec.dim);
    case MeasureKind::PointMass: return std::make_unique<PointMassLaw>(spec.point);
    case MeasureKind::Bernoulli: return std::make_unique<BernoulliLaw>(spec.dim, spec.weights);
    case MeasureKind::IFS: return nullptr;
    case MeasureKind::PorousCantor:
      return std::make_unique<PorousCantorLaw>(spec.dim, spec.levels_per_generation, spec.gap_pattern);
    case MeasureKind::Product: {
      std::vector<std::unique_ptr<DigitLaw>> f;
      for (const MeasureSpec& s : spec.factors) {
        f.push_back(make_law(s));
        if (!f.back()) return nullptr;
      }
      return std::make_unique<ProductLaw>(std::move(f));
    }
    case MeasureKind::Cascade: return std::make_unique<CascadeLaw>(spec.dim, spec.spread, spec.seed);
  }
  return nullptr;
}

BuiltMeasure build(const MeasureSpec& spec) {
  validate(spec);
  const int depth = effective_depth(spec);
  BuiltMeasure out;
  out.dimension = theoretical_dimension(spec);
  if (spec.kind == MeasureKind::IFS) {
    if (!ifs_separated(spec)) out.warnings.push_back("ifs maps overlap; dimension formula unreliable");
    out.tree = build_ifs(spec, depth);
  } else {
    out.tree = build_from_law(*make_law(spec), depth);
  }
  return out;
}

}  // namespace dimens
