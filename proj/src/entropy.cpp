#include "dimens/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dimens/error.hpp"
#include "dimens/rng.hpp"

namespace dimens {

double phi(double t) {
  if (!(t >= 0.0 && t <= 1.0 + 1e-12)) throw DomainError("phi: argument outside [0,1]");
  if (t == 0.0) return 0.0;
  return -t * std::log2(t);
}

double tuple_entropy(std::span<const double> p) {
  double s = 0.0, h = 0.0;
  for (double v : p) {
    h += phi(v);
    s += v;
  }
  if (s > 1.0 + 1e-12) throw DomainError("tuple entropy: entries sum to more than 1");
  return h;
}

double cell_entropy(const DyadicMassTree& tree, const DyadicCube& q, int a) {
  if (a < 1) throw DomainError("cell_entropy: a must be >= 1");
  if (q.level + a > tree.depth()) throw PreconditionError("cell_entropy: Q.level + a exceeds tree depth");
  const double mq = tree.mass(q);
  if (mq == 0.0) throw ZeroMassError("cell_entropy: cube has zero mass");
  const int shift = tree.dim() * a;
  const CellKey k = key_of(q);
  double h = 0.0;
  tree.for_each_in_range(q.level + a, k << shift, (k + 1) << shift, [&](CellKey, double m) { h += phi(m / mq); });
  return h;
}

EntropyProfile entropy_average(const ChainView& chain, int a, int N) {
  if (a < 1 || N < 1) throw DomainError("entropy_average: need a >= 1 and N >= 1");
  if (N + a > chain.resolution() || N > chain.length())
    throw PreconditionError("entropy_average: N + a exceeds the resolvable depth");
  EntropyProfile prof;
  prof.a = a;
  std::vector<double> w;
  double sum = 0.0;
  for (int k = 1; k <= N; ++k) {
    try {
      chain.descendant_weights(k, a, w);
    } catch (const ZeroMassError&) {
      prof.truncated = true;
      break;
    }
    double h = 0.0;
    for (double v : w) h += phi(v);
    prof.terms.push_back(h);
    sum += h;
    prof.averages.push_back(sum / (static_cast<double>(k) * a));
  }
  return prof;
}

EntropyProfile entropy_average(const DyadicMassTree& tree, std::span<const double> x, int a, int N) {
  TreeChain chain(tree, x);
  EntropyProfile prof = entropy_average(chain, a, N);
  prof.x.assign(x.begin(), x.end());
  return prof;
}

double fixed_sum_max(int K, double c) {
  if (K < 1) throw DomainError("fixed_sum_max: K must be >= 1");
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("fixed_sum_max: c must lie in (0,1]");
  return c * std::log2(K / c);
}

double brute_force_fixed_sum(int K, double c, std::size_t samples, std::uint64_t seed) {
  if (K < 1 || !(c > 0.0 && c <= 1.0)) throw DomainError("brute_force_fixed_sum: bad K or c");
  Rng rng(seed);
  std::vector<double> p(K);
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double tot = 0.0;
    for (double& v : p) {
      v = -std::log1p(-rng.uniform());
      tot += v;
    }
    double h = 0.0;
    for (double v : p) h += phi(c * v / tot);
    best = std::max(best, h);
  }
  return best;
}

ConstrainedMax constrained_max(int M, int n, double eps) {
  if (M < 1) throw PreconditionError("constrained_max: M must be >= 1");
  if (n < 0 || n > M - 1) throw PreconditionError("constrained_max: n must lie in {0,...,M-1}");
  if (!(eps > 0.0 && eps < 1.0 / (2.0 * M))) throw PreconditionError("constrained_max: eps must lie in (0, 1/(2M))");
  ConstrainedMax r;
  const double rest = 1.0 - n * eps;
  r.value = rest * std::log2((M - n) / rest) + n * eps * std::log2(1.0 / eps);
  r.q.assign(M - n, rest / (M - n));
  r.p.assign(n, eps);
  return r;
}

namespace {

/// Maximises phi(u) + phi(s - u) over [lo, hi] by golden-section search (the objective is concave).
double best_split(double s, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double u) { return phi(std::clamp(u, 0.0, 1.0)) + phi(std::clamp(s - u, 0.0, 1.0)); };
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 90 && b - a > 1e-16; ++it) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    }
  }
  const double mid = 0.5 * (a + b);
  double best = mid, fb = f(mid);
  for (double u : {lo, hi})
    if (f(u) > fb) {
      fb = f(u);
      best = u;
    }
  return best;
}

}  // namespace

double brute_force_max(int M, int n, double eps, std::uint64_t seed, int starts) {
  if (M < 1 || M > 16) throw PreconditionError("brute_force_max: M must lie in [1, 16]");
  if (n < 0 || n > M - 1) throw PreconditionError("brute_force_max: n must lie in {0,...,M-1}");
  if (!(eps > 0.0 && n * eps < 1.0)) throw PreconditionError("brute_force_max: eps must be positive with n eps < 1");
  Rng rng(seed);
  std::vector<double> ub(M, 1.0);
  for (int i = M - n; i < M; ++i) ub[i] = eps;
  double best = 0.0;
  std::vector<double> x(M);
  for (int s = 0; s < starts; ++s) {
    double used = 0.0;
    for (int i = M - n; i < M; ++i) {
      x[i] = eps * rng.uniform();
      used += x[i];
    }
    double tot = 0.0;
    for (int i = 0; i < M - n; ++i) {
      x[i] = -std::log1p(-rng.uniform());
      tot += x[i];
    }
    for (int i = 0; i < M - n; ++i) x[i] *= (1.0 - used) / tot;
    double prev = -1.0;
    for (int round = 0; round < 200; ++round) {
      for (int i = 0; i < M; ++i)
        for (int j = i + 1; j < M; ++j) {
          const double sum = x[i] + x[j];
          const double lo = std::max(0.0, sum - ub[j]);
          const double hi = std::min(ub[i], sum);
          if (hi <= lo) continue;
          x[i] = best_split(sum, lo, hi);
          x[j] = sum - x[i];
        }
      double h = 0.0;
      for (double v : x) h += phi(std::clamp(v, 0.0, 1.0));
      if (std::abs(h - prev) < 1e-15) break;
      prev = h;
    }
    best = std::max(best, prev);
  }
  return best;
}

LogSum log_sum_bound(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("log_sum_bound: tuples must have equal length");
  LogSum r;
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] >= 0.0) || !(b[i] >= 0.0)) throw DomainError("log_sum_bound: negative entry");
    if (a[i] > 0.0 && b[i] == 0.0) throw DomainError("log_sum_bound: b_i must be positive where a_i is");
    if (a[i] > 0.0) r.lhs += a[i] * std::log2(a[i] / b[i]);
    sa += a[i];
    sb += b[i];
  }
  if (sa > 0.0) r.rhs = sa * std::log2(sa / sb);
  return r;
}

double s_prime_bound(double m, int d, double q, int a, double eps) {
  if (!(q > 0.0 && q < 1.0)) throw PreconditionError("s_prime_bound: q must lie in (0,1)");
  if (a < 1 || d < 1) throw PreconditionError("s_prime_bound: need a >= 1 and d >= 1");
  if (!(m >= 0.0 && m < d)) throw PreconditionError("s_prime_bound: m must lie in [0, d)");
  if (!(eps > 0.0 && eps < std::ldexp(1.0, -a * d - 1))) throw PreconditionError("s_prime_bound: eps must lie in (0, 2^{-ad-1})");
  const int M = 1 << (a * d);
  const int n = M - static_cast<int>(std::floor(std::exp2(a * m)));
  return q * constrained_max(M, n, eps).value / a + (1.0 - q) * d;
}

}  // namespace dimens
