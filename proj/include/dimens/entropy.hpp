#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dimens/chain.hpp"
#include "dimens/dyadic.hpp"
#include "dimens/mass_tree.hpp"

namespace dimens {

/// phi(t) = t log2(1/t) with phi(0) = 0. Throws DomainError outside [0,1].
double phi(double t);

/// H(p_1..p_K) = sum phi(p_i); entries in [0,1], sum at most 1 + 1e-12.
double tuple_entropy(std::span<const double> p);

/// H^a(µ,Q) = sum over Q' ≺_a Q of phi(µ(Q')/µ(Q)). Throws ZeroMassError if µ(Q) = 0.
double cell_entropy(const DyadicMassTree& tree, const DyadicCube& q, int a);

struct EntropyProfile {
  Point x;
  int a = 1;
  std::vector<double> terms;     // H^a(µ,Q^{k,x}) for k = 1..N
  std::vector<double> averages;  // (1/(n a)) sum_{k<=n} terms, n = 1..N
  bool truncated = false;        // chain hit a zero-mass cube before N
  double last() const { return averages.empty() ? 0.0 : averages.back(); }
};

EntropyProfile entropy_average(const ChainView& chain, int a, int N);
EntropyProfile entropy_average(const DyadicMassTree& tree, std::span<const double> x, int a, int N);

/// Maximum of H over K-tuples with sum c: c log2(K/c).
double fixed_sum_max(int K, double c);

/// Largest H found over random points of {p in [0,1]^K : sum p = c}.
double brute_force_fixed_sum(int K, double c, std::size_t samples, std::uint64_t seed);

struct ConstrainedMax {
  double value = 0.0;
  std::vector<double> q;  // M - n free coordinates
  std::vector<double> p;  // n coordinates bounded by eps
};

/// h^M_{eps,n} = (1 - n eps) log2((M-n)/(1 - n eps)) + n eps log2(1/eps) together with its
/// maximiser. Requires M >= 1, 0 <= n <= M-1 and 0 < eps < 1/(2M).
ConstrainedMax constrained_max(int M, int n, double eps);

/// Numerical maximum of H over the constraint set, by seeded multistart pairwise
/// mass-transfer ascent. Requires M <= 16.
double brute_force_max(int M, int n, double eps, std::uint64_t seed = 0, int starts = 8);

struct LogSum {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = sum a_i log2(a_i/b_i), rhs = (sum a) log2(sum a / sum b), with 0 log(0/.) = 0.
LogSum log_sum_bound(std::span<const double> a, std::span<const double> b);

/// s' = q h^{2^{ad}}_{eps, 2^{ad} - floor(2^{am})} / a + (1-q) d. Requires 0<q<1, a>=1,
/// 0 < eps < 2^{-ad-1}.
double s_prime_bound(double m, int d, double q, int a, double eps);

}  // namespace dimens
