#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dimens/chain.hpp"
#include "dimens/geometry.hpp"
#include "dimens/mass_tree.hpp"
#include "dimens/measure.hpp"

namespace dimens {

enum class PredicateKind { Doubling, DyadicDoubling, Shell, Porous, Trapped, Homogeneity, DyadicHomogeneity };

std::string predicate_name(PredicateKind kind);
PredicateKind predicate_from_name(const std::string& name);  // ConfigError on unknown names

/// One scale predicate with its parameters. Unused fields are ignored by the kind.
/// c <= 0 selects the constant derived from (d, p, a) or (d, p, K).
struct PredicateSpec {
  PredicateKind kind = PredicateKind::DyadicDoubling;
  int a = 1;
  double K = 3.0;
  double c = 0.0;
  double p = 0.9;
  double eps = 0.01;
  double alpha = 0.25;
  int ell = 1;
  int m = 1;
  double delta = 0.125;
  double threshold = 0.0;  // homogeneity kinds: 0 selects delta^{-m} or 2^{am}
  int frames = 4;
  std::uint64_t seed = 0;
};

/// log2 of 2^{-2ad/(1-p)}.
double log2_dyadic_doubling_constant(int d, double p, int a);

struct DoublingConstant {
  int a = 0;
  double p_prime = 0.0;
  double log2_c = 0.0;  // the constant underflows a double for typical p, so it is kept as a log
};

/// The enlarged-cube constant c'(d,p,K): a minimal with 2^{a-1} > K and (1 - K 2^{1-a})^d > p,
/// p' = 1 + p - p_a with p_a the midpoint of p and the shell frequency, c' = c(d, p', a).
DoublingConstant doubling_constant(int d, double p, double K);

struct ScaleRow {
  std::string name;
  std::vector<bool> values;  // index k-1 for k in [N]
  int count = 0;
  double fraction = 0.0;     // count / N
  bool truncated = false;    // chain reached a zero-mass cube
};

/// Evaluates a predicate at k = 1..N along the chain of x. Scale k looks at Q^{k,x} and, for
/// the refinement kinds, at Q^{k+a,x} ≺_a Q^{k,x} (porous cubes relative to r = 2^{-k}).
ScaleRow scale_fraction(const DyadicMassTree& tree, std::span<const double> x, int N, const PredicateSpec& pred);

/// Kinds that only need descendant masses along a chain (dyadic doubling, shell, trapped,
/// dyadic homogeneity). Throws PreconditionError for the others.
ScaleRow scale_fraction(const ChainView& chain, int N, const PredicateSpec& pred);

struct MeanPorosity {
  std::vector<double> porous_mass;  // µ_{k,x}(Q^{k,x}_por), k = 1..N
  std::vector<int> doubling_scales; // D_N(x): µ(Q^{k,x}) >= beta µ(3Q^{k,x})
  double p_N = 0.0;
  double q_N = 0.0;
  bool truncated = false;
};

MeanPorosity mean_porosity(const DyadicMassTree& tree, std::span<const double> x, int N, int a,
                           const PorousLabelParams& params, double beta);

struct ScaleReport {
  Point x;
  int N = 0;
  std::vector<ScaleRow> rows;
};

ScaleReport scale_report(const DyadicMassTree& tree, std::span<const double> x, int N,
                         const std::vector<PredicateSpec>& preds);

// ---- shell frequency --------------------------------------------------------

/// (1 - K 2^{1-a})^d.
double shell_theory(int K, int a, int d);

struct ShellFrequency {
  std::vector<double> fractions;  // one per (omega, x) sample
  double mean = 0.0;
  double theory = 0.0;
};

/// Tree route: omega uniform on the 2^{-D} grid of [0,1/2)^d, x drawn from the translated tree.
ShellFrequency shell_frequency_check(const DyadicMassTree& tree, int samples, int K, int a, int N,
                                     std::uint64_t seed);

/// Symbolic route for long horizons: y drawn from the law, the measure is the image under
/// y -> y/2 (support in [0,1/2)^d) and x = y/2 + omega with omega a full-precision uniform
/// vector of [0,1/2)^d, added digit-wise with carries.
ShellFrequency shell_frequency_check(std::shared_ptr<const DigitLaw> law, int samples, int K, int a, int N,
                                     std::uint64_t seed);

// ---- dimensions ---------------------------------------------------------------

/// log2 (µ(Q^{N,x}) / µ([0,1)^d)) / (-N). Throws ZeroMassError if the cube is empty.
double dyadic_upper_dim(const DyadicMassTree& tree, std::span<const double> x, int N);
double dyadic_upper_dim(const ChainView& chain, int N);

struct DimensionEstimate {
  double slope = 0.0;    // regression over the tail window
  double upper = 0.0;    // max over sliding windows inside the tail
  double lower = 0.0;    // min over sliding windows inside the tail
  double dyadic = 0.0;   // dyadic_upper_dim at the last used scale
  double bracket = 0.0;  // max over used scales of (upper - lower) / midpoint ball mass
  int scales_used = 0;
  bool truncated = false;
};

struct EstimateParams {
  double tail_fraction = 0.5;     // last ceil(N * tail) scales
  double window_fraction = 0.25;  // sliding windows of ceil(N * window) scales
};

/// Least-squares slope of log2 µ(B(x,2^{-k})) against k over k = 1..N (N <= depth).
DimensionEstimate local_dim_estimate(const DyadicMassTree& tree, std::span<const double> x, int N,
                                     const EstimateParams& params = {});

enum class OmegaClass { Lower, UpperOnly, Neither };

std::string omega_name(OmegaClass c);

/// Lower: lower >= s - margin (evidence for x in Ω_s). UpperOnly: upper >= s - margin only
/// (evidence for Ω^s). Neither otherwise.
std::vector<OmegaClass> classify_omega(const std::vector<DimensionEstimate>& estimates, double s,
                                       double margin = 0.05);
std::vector<OmegaClass> classify_omega(const DyadicMassTree& tree, double s, const std::vector<Point>& points,
                                       double margin = 0.05);

// ---- labeling gap -------------------------------------------------------------

/// Black/white labels of cubes, keyed by (level, path hash).
using Labeling = std::function<bool(int level, std::uint64_t hash)>;

Labeling random_labeling(std::uint64_t seed, double p = 0.5);
Labeling all_black();
Labeling all_white();

/// Running averages (1/n) sum_{k<=n} (µ_{k,x}(Q^{k,x}_black) - 1[Q^{k+a,x} black]), n = 1..N.
/// Stops early if the chain meets a zero-mass cube.
std::vector<double> label_gap(const ChainView& chain, int a, int N, const Labeling& labels);
std::vector<double> label_gap(const DyadicMassTree& tree, std::span<const double> x, int a, int N,
                              const Labeling& labels);

}  // namespace dimens
