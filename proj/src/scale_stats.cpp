#include "dimens/scale_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dimens/error.hpp"
#include "dimens/parallel.hpp"
#include "dimens/rng.hpp"

namespace dimens {

namespace {

const char* const kPredicateNames[] = {"doubling", "dyadic_doubling", "shell", "porous",
                                       "trapped", "homogeneity", "dyadic_homogeneity"};

bool needs_refinement(PredicateKind k) {
  return k == PredicateKind::DyadicDoubling || k == PredicateKind::Shell || k == PredicateKind::Porous ||
         k == PredicateKind::Trapped || k == PredicateKind::DyadicHomogeneity;
}

void finish(ScaleRow& row, int N) {
  row.count = static_cast<int>(std::count(row.values.begin(), row.values.end(), true));
  row.values.resize(N, false);
  row.fraction = N > 0 ? static_cast<double>(row.count) / N : 0.0;
}

std::vector<std::uint32_t> axis_positions(std::uint64_t rel, int a, int d) {
  std::vector<std::uint32_t> pos(d, 0);
  for (int j = a - 1; j >= 0; --j)
    for (int i = 0; i < d; ++i) pos[i] = (pos[i] << 1) | static_cast<std::uint32_t>((rel >> (j * d + i)) & 1u);
  return pos;
}

void check_shell(int K, int a) {
  if (a < 1 || K < 0 || std::ldexp(1.0, a - 1) <= K) throw PreconditionError("shell requires 2^{a-1} > K");
}

double homogeneity_threshold(const PredicateSpec& p) {
  if (p.threshold > 0.0) return p.threshold;
  if (p.kind == PredicateKind::Homogeneity) return std::pow(p.delta, -p.m);
  return std::exp2(p.a * p.m);
}

/// Predicates that read only the chain; shared by the tree and symbolic routes.
class ChainPredicate {
 public:
  ChainPredicate(const PredicateSpec& p, int d) : p_(p), d_(d) {
    if (p.kind == PredicateKind::DyadicDoubling)
      log2_c_ = p.c > 0.0 ? std::log2(p.c) : log2_dyadic_doubling_constant(d, p.p, p.a);
    if (p.kind == PredicateKind::Shell) check_shell(static_cast<int>(p.K), p.a);
    if (p.kind == PredicateKind::Trapped) cones_ = sample_cones(d, p.m, p.alpha, p.frames, p.seed);
  }

  bool operator()(const ChainView& chain, int k) {
    switch (p_.kind) {
      case PredicateKind::DyadicDoubling: {
        const double lq = chain.log2_mass(k);
        if (!std::isfinite(lq)) throw ZeroMassError("zero-mass cube on chain");
        return chain.log2_mass(k + p_.a) >= log2_c_ + lq;
      }
      case PredicateKind::Shell:
        return in_shell(axis_positions(chain.relative_key(k, p_.a), p_.a, d_), static_cast<int>(p_.K), p_.a);
      case PredicateKind::Trapped:
        chain.descendant_weights(k, p_.a, w_);
        return is_trapped(d_, p_.a, w_, chain.relative_key(k, p_.a), p_.eps, p_.alpha, cones_);
      case PredicateKind::DyadicHomogeneity:
        return dyadic_homogeneity(chain, k, p_.a, p_.eps) > homogeneity_threshold(p_);
      default:
        throw PreconditionError("predicate " + predicate_name(p_.kind) + " needs a mass tree");
    }
  }

 private:
  PredicateSpec p_;
  int d_;
  double log2_c_ = 0.0;
  std::vector<ConeSpec> cones_;
  std::vector<double> w_;
};

}  // namespace

std::string predicate_name(PredicateKind kind) { return kPredicateNames[static_cast<int>(kind)]; }

PredicateKind predicate_from_name(const std::string& name) {
  for (int i = 0; i < 7; ++i)
    if (name == kPredicateNames[i]) return static_cast<PredicateKind>(i);
  throw ConfigError("unknown predicate '" + name + "'");
}

double log2_dyadic_doubling_constant(int d, double p, int a) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("doubling constant: p must lie in (0,1)");
  return -2.0 * a * d / (1.0 - p);
}

DoublingConstant doubling_constant(int d, double p, double K) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("doubling constant: p must lie in (0,1)");
  if (!(K > 0.0)) throw DomainError("doubling constant: K must be positive");
  DoublingConstant out;
  int a = 1;
  auto shell = [&](int a) { return std::pow(1.0 - K * std::ldexp(1.0, 1 - a), d); };
  while (!(std::ldexp(1.0, a - 1) > K && shell(a) > p)) {
    if (++a > 60) throw DomainError("doubling constant: no admissible a");
  }
  const double pa = 0.5 * (shell(a) + p);
  out.a = a;
  out.p_prime = 1.0 + p - pa;
  out.log2_c = log2_dyadic_doubling_constant(d, out.p_prime, a);
  return out;
}

ScaleRow scale_fraction(const ChainView& chain, int N, const PredicateSpec& pred) {
  if (N < 1) throw DomainError("scale_fraction: N must be >= 1");
  if (N + pred.a > chain.length()) throw PreconditionError("scale_fraction: N + a exceeds the chain length");
  ChainPredicate eval(pred, chain.dim());
  ScaleRow row;
  row.name = predicate_name(pred.kind);
  for (int k = 1; k <= N; ++k) {
    try {
      row.values.push_back(eval(chain, k));
    } catch (const ZeroMassError&) {
      row.truncated = true;
      break;
    }
  }
  finish(row, N);
  return row;
}

ScaleRow scale_fraction(const DyadicMassTree& tree, std::span<const double> x, int N, const PredicateSpec& pred) {
  if (N < 1) throw DomainError("scale_fraction: N must be >= 1");
  const int need = needs_refinement(pred.kind) ? N + pred.a : N;
  if (need > tree.depth()) throw PreconditionError("scale_fraction: horizon exceeds tree depth");
  switch (pred.kind) {
    case PredicateKind::DyadicDoubling:
    case PredicateKind::Shell:
    case PredicateKind::Trapped:
    case PredicateKind::DyadicHomogeneity:
      return scale_fraction(TreeChain(tree, x), N, pred);
    default:
      break;
  }
  ScaleRow row;
  row.name = predicate_name(pred.kind);
  double log2_c = 0.0;
  if (pred.kind == PredicateKind::Doubling)
    log2_c = pred.c > 0.0 ? std::log2(pred.c) : doubling_constant(tree.dim(), pred.p, pred.K).log2_c;
  PorousLabelParams pp{pred.alpha, pred.eps, pred.ell, pred.frames, pred.seed};
  for (int k = 1; k <= N; ++k) {
    try {
      bool v = false;
      if (pred.kind == PredicateKind::Doubling) {
        const DyadicCube q = cube_of_point(x, k);
        const double mq = tree.mass(q);
        if (mq == 0.0) throw ZeroMassError("zero-mass cube on chain");
        v = std::log2(mq) >= log2_c + std::log2(enlarged_cube_mass(tree, q, pred.K));
      } else if (pred.kind == PredicateKind::Porous) {
        v = is_porous_cube(tree, cube_of_point(x, k + pred.a), k, pp);
      } else {
        v = euclidean_homogeneity(tree, x, k, pred.delta, pred.eps) >= homogeneity_threshold(pred);
      }
      row.values.push_back(v);
    } catch (const ZeroMassError&) {
      row.truncated = true;
      break;
    }
  }
  finish(row, N);
  return row;
}

MeanPorosity mean_porosity(const DyadicMassTree& tree, std::span<const double> x, int N, int a,
                           const PorousLabelParams& params, double beta) {
  if (N < 1 || a < 1) throw DomainError("mean_porosity: need N >= 1 and a >= 1");
  if (N + a > tree.depth()) throw PreconditionError("mean_porosity: N + a exceeds tree depth");
  MeanPorosity out;
  double sum = 0.0;
  for (int k = 1; k <= N; ++k) {
    const DyadicCube q = cube_of_point(x, k);
    const double mq = tree.mass(q);
    if (mq == 0.0) {
      out.truncated = true;
      break;
    }
    const CubeLabeling lab = label_porous(tree, q, a, params);
    double m = 0.0;
    for (const DyadicCube& c : lab.labeled) m += tree.mass(c);
    out.porous_mass.push_back(m / mq);
    sum += m / mq;
    if (mq >= beta * enlarged_cube_mass(tree, q, 3.0)) out.doubling_scales.push_back(k);
  }
  out.p_N = sum / N;
  out.q_N = static_cast<double>(out.doubling_scales.size()) / N;
  return out;
}

ScaleReport scale_report(const DyadicMassTree& tree, std::span<const double> x, int N,
                         const std::vector<PredicateSpec>& preds) {
  ScaleReport r;
  r.x.assign(x.begin(), x.end());
  r.N = N;
  for (const PredicateSpec& p : preds) r.rows.push_back(scale_fraction(tree, x, N, p));
  return r;
}

double shell_theory(int K, int a, int d) {
  check_shell(K, a);
  return std::pow(1.0 - K * std::ldexp(1.0, 1 - a), d);
}

namespace {

ShellFrequency summarize(std::vector<double> fr, double theory) {
  ShellFrequency out;
  out.theory = theory;
  double s = 0.0;
  for (double f : fr) s += f;
  out.mean = fr.empty() ? 0.0 : s / fr.size();
  out.fractions = std::move(fr);
  return out;
}

}  // namespace

ShellFrequency shell_frequency_check(const DyadicMassTree& tree, int samples, int K, int a, int N,
                                     std::uint64_t seed) {
  const int d = tree.dim();
  const double theory = shell_theory(K, a, d);
  if (samples < 1) throw DomainError("shell_frequency_check: need at least one sample");
  if (N + a > tree.depth()) throw PreconditionError("shell_frequency_check: N + a exceeds tree depth");
  PredicateSpec pred;
  pred.kind = PredicateKind::Shell;
  pred.K = K;
  pred.a = a;
  std::vector<double> fr(samples);
  parallel_for(samples, [&](std::size_t i) {
    Rng rng(substream(seed, i));
    Point omega(d);
    for (double& w : omega) w = 0.5 * rng.uniform();
    const DyadicMassTree moved = translate(tree, snap_to_grid(omega, tree.depth()));
    const Point x = sample_points(moved, 1, rng.bits()).front();
    fr[i] = scale_fraction(moved, x, N, pred).fraction;
  });
  return summarize(std::move(fr), theory);
}

ShellFrequency shell_frequency_check(std::shared_ptr<const DigitLaw> law, int samples, int K, int a, int N,
                                     std::uint64_t seed) {
  const int d = law->dim();
  const double theory = shell_theory(K, a, d);
  if (samples < 1 || N < 1) throw DomainError("shell_frequency_check: need samples >= 1 and N >= 1");
  const int L = N + a;       // digits of x that are inspected
  const int guard = 64;      // extra digits so that carries into position L are resolved
  std::vector<double> fr(samples);
  parallel_for(samples, [&](std::size_t i) {
    Rng rng(substream(seed, i));
    SymbolicChain chain(law, L + guard, rng);
    // bits[c][j] is binary digit j (1-based) of coordinate c of x.
    std::vector<std::vector<std::uint8_t>> bits(d, std::vector<std::uint8_t>(L + guard + 1, 0));
    for (int c = 0; c < d; ++c) {
      unsigned carry = 0;
      for (int j = L + guard; j >= 1; --j) {
        const unsigned yb = j >= 2 ? (chain.digit(j - 1) >> c) & 1u : 0u;
        const unsigned wb = j >= 2 ? static_cast<unsigned>(rng.bits() & 1u) : 0u;
        const unsigned s = yb + wb + carry;
        bits[c][j] = static_cast<std::uint8_t>(s & 1u);
        carry = s >> 1;
      }
    }
    int hits = 0;
    std::vector<std::uint32_t> pos(d);
    for (int k = 1; k <= N; ++k) {
      for (int c = 0; c < d; ++c) {
        std::uint32_t v = 0;
        for (int j = k + 1; j <= k + a; ++j) v = (v << 1) | bits[c][j];
        pos[c] = v;
      }
      hits += in_shell(pos, K, a);
    }
    fr[i] = static_cast<double>(hits) / N;
  });
  return summarize(std::move(fr), theory);
}

double dyadic_upper_dim(const ChainView& chain, int N) {
  if (N < 1 || N > chain.length()) throw PreconditionError("dyadic_upper_dim: N outside the chain");
  const double l = chain.log2_mass(N) - chain.log2_mass(0);
  if (!std::isfinite(l)) throw ZeroMassError("dyadic_upper_dim: µ(Q^{N,x}) = 0");
  return -l / N;
}

double dyadic_upper_dim(const DyadicMassTree& tree, std::span<const double> x, int N) {
  if (N < 1 || N > tree.depth()) throw PreconditionError("dyadic_upper_dim: N outside [1, depth]");
  const double m = tree.mass(cube_of_point(x, N));
  if (m == 0.0) throw ZeroMassError("dyadic_upper_dim: µ(Q^{N,x}) = 0");
  return -std::log2(m / tree.total()) / N;
}

namespace {

/// Slope of y against k, negated so that y ~ -s k gives s.
double slope_of(const std::vector<double>& y, int from, int to) {
  const int n = to - from;
  if (n < 2) return 0.0;
  double mk = 0.0, my = 0.0;
  for (int i = from; i < to; ++i) {
    mk += i + 1;
    my += y[i];
  }
  mk /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (int i = from; i < to; ++i) {
    sxy += (i + 1 - mk) * (y[i] - my);
    sxx += (i + 1 - mk) * (i + 1 - mk);
  }
  return -sxy / sxx;
}

}  // namespace

DimensionEstimate local_dim_estimate(const DyadicMassTree& tree, std::span<const double> x, int N,
                                     const EstimateParams& params) {
  if (N < 1 || N > tree.depth()) throw PreconditionError("local_dim_estimate: N outside [1, depth]");
  DimensionEstimate e;
  std::vector<double> y;
  for (int k = 1; k <= N; ++k) {
    const BallMassEstimate b = ball_mass(tree, x, std::ldexp(1.0, -k));
    const double mid = b.midpoint();
    if (!(mid > 0.0)) {
      e.truncated = true;
      break;
    }
    y.push_back(std::log2(mid / tree.total()));
    e.bracket = std::max(e.bracket, b.width() / mid);
  }
  const int n = static_cast<int>(y.size());
  e.scales_used = n;
  if (n == 0) return e;
  const int tail = std::clamp(static_cast<int>(std::ceil(n * params.tail_fraction)), std::min(n, 2), n);
  const int win = std::clamp(static_cast<int>(std::ceil(n * params.window_fraction)), std::min(tail, 2), tail);
  e.slope = slope_of(y, n - tail, n);
  e.upper = -std::numeric_limits<double>::infinity();
  e.lower = std::numeric_limits<double>::infinity();
  for (int s = n - tail; s + win <= n; ++s) {
    const double v = slope_of(y, s, s + win);
    e.upper = std::max(e.upper, v);
    e.lower = std::min(e.lower, v);
  }
  e.dyadic = dyadic_upper_dim(tree, x, n);
  return e;
}

std::string omega_name(OmegaClass c) {
  switch (c) {
    case OmegaClass::Lower:
      return "lower";
    case OmegaClass::UpperOnly:
      return "upper_only";
    default:
      return "neither";
  }
}

std::vector<OmegaClass> classify_omega(const std::vector<DimensionEstimate>& estimates, double s, double margin) {
  std::vector<OmegaClass> out;
  for (const DimensionEstimate& e : estimates) {
    if (e.lower >= s - margin) out.push_back(OmegaClass::Lower);
    else if (e.upper >= s - margin) out.push_back(OmegaClass::UpperOnly);
    else out.push_back(OmegaClass::Neither);
  }
  return out;
}

std::vector<OmegaClass> classify_omega(const DyadicMassTree& tree, double s, const std::vector<Point>& points,
                                       double margin) {
  std::vector<DimensionEstimate> est(points.size());
  parallel_for(points.size(), [&](std::size_t i) { est[i] = local_dim_estimate(tree, points[i], tree.depth()); });
  return classify_omega(est, s, margin);
}

Labeling random_labeling(std::uint64_t seed, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("random_labeling: p must lie in [0,1]");
  return [seed, p](int level, std::uint64_t hash) {
    const std::uint64_t h = mix64(hash ^ mix64(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(level + 1)));
    return static_cast<double>(h >> 11) * 0x1.0p-53 < p;
  };
}

Labeling all_black() {
  return [](int, std::uint64_t) { return true; };
}

Labeling all_white() {
  return [](int, std::uint64_t) { return false; };
}

std::vector<double> label_gap(const ChainView& chain, int a, int N, const Labeling& labels) {
  if (a < 1 || N < 1) throw DomainError("label_gap: need a >= 1 and N >= 1");
  if (N + a > chain.length()) throw PreconditionError("label_gap: N + a exceeds the chain length");
  const int d = chain.dim();
  std::vector<double> w, out;
  double sum = 0.0;
  for (int k = 1; k <= N; ++k) {
    try {
      chain.descendant_weights(k, a, w);
    } catch (const ZeroMassError&) {
      break;
    }
    const std::uint64_t h = chain.cube_hash(k);
    double black = 0.0;
    for (std::size_t rel = 0; rel < w.size(); ++rel)
      if (w[rel] > 0.0 && labels(k + a, descendant_hash(h, rel, a, d))) black += w[rel];
    sum += black - (labels(k + a, chain.cube_hash(k + a)) ? 1.0 : 0.0);
    out.push_back(sum / k);
  }
  return out;
}

std::vector<double> label_gap(const DyadicMassTree& tree, std::span<const double> x, int a, int N,
                              const Labeling& labels) {
  return label_gap(TreeChain(tree, x), a, N, labels);
}

}  // namespace dimens
