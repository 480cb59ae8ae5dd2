#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dimens/chain.hpp"
#include "dimens/dyadic.hpp"
#include "dimens/mass_tree.hpp"
#include "dimens/rng.hpp"

namespace dimens {

// ---- cones ----------------------------------------------------------------

/// X(x,V,alpha) \ H(x,theta,alpha): V holds an orthonormal basis of a (d-m)-plane as columns.
struct ConeSpec {
  Eigen::MatrixXd V;
  double alpha = 0.5;
  Eigen::VectorXd theta;
};

enum class ConeMode { X, XminusH };

/// Strict cone tests; the apex y = x belongs to neither X nor H.
bool cone_membership(std::span<const double> y, std::span<const double> x, const ConeSpec& cone, ConeMode mode);

/// d x k matrix with orthonormal columns: QR of a standard Gaussian matrix, signs fixed by R.
Eigen::MatrixXd random_frame(int d, int k, Rng& rng);
Eigen::VectorXd random_direction(int d, Rng& rng);

/// Sampled (V, theta) net used by conical ratios and trapped cubes. For each i < frames a
/// random V_i paired with a random theta_i and with +-(first column of V_i). Enumeration is
/// prefix-stable in `frames` for a fixed seed.
std::vector<ConeSpec> sample_cones(int d, int m, double alpha, int frames, std::uint64_t seed);

struct ConicalRatio {
  double ratio = 0.0;
  ConeSpec worst;
  double denominator = 0.0;
  int cones = 0;
};

/// min over sampled (V,theta) of µ(X(x,r,V,alpha) \ H(x,theta,alpha)) / µ(B(x,r)), r = 2^{-k},
/// both masses taken over leaf cells whose centres satisfy the predicate.
ConicalRatio min_conical_ratio(const DyadicMassTree& tree, std::span<const double> x, int k, double alpha, int m,
                               int frames, std::uint64_t seed);
ConicalRatio min_conical_ratio(const DyadicMassTree& tree, std::span<const double> x, int k,
                               const std::vector<ConeSpec>& cones);

// ---- homogeneity ----------------------------------------------------------

/// Greedy (delta r)-packing count of B(x,r), r = 2^{-k}, by balls centred at level-(k+a')
/// cell centres with lower mass > eps * upper mass of B(x, C r).
int euclidean_homogeneity(const DyadicMassTree& tree, std::span<const double> x, int k, double delta, double eps,
                          double C = 5.0);

/// card{Q ≺_a Q^{k,x} : µ(Q) > eps µ(Q^{k,x})}.
int dyadic_homogeneity(const DyadicMassTree& tree, std::span<const double> x, int k, int a, double eps);
int dyadic_homogeneity(const ChainView& chain, int k, int a, double eps);

// ---- porosity -------------------------------------------------------------

enum class PorosityMode { Set, Measure };

struct PorosityParams {
  int ell = 1;
  PorosityMode mode = PorosityMode::Measure;
  double eps = 0.01;
  int frames = 8;               // random frames on top of the axis frames
  std::uint64_t seed = 0;
  int radial_steps = 16;
  int bisection_steps = 10;
};

struct HoleConfig {
  std::vector<Point> centers;
  double rho = 0.0;
};

struct PorosityResult {
  double rho = 0.0;
  HoleConfig holes;
};

/// All frames tried by the hole search: every axis-aligned ell-frame, then `frames` random ones.
std::vector<Eigen::MatrixXd> porosity_frames(int d, int ell, int frames, std::uint64_t seed);

/// Searches for ell orthogonal holes of relative radius rho in B(x,r); fills `found` on success.
bool holes_exist(const DyadicMassTree& tree, std::span<const double> x, double r, double rho,
                 const PorosityParams& params, const std::vector<Eigen::MatrixXd>& frames, HoleConfig* found);

/// Largest rho on the bisection grid for which a tested hole configuration passes: a lower
/// bound for por_ell(µ,x,r,eps) (measure mode) or por_ell(spt µ,x,r) (set mode).
PorosityResult porosity_search(const DyadicMassTree& tree, std::span<const double> x, double r,
                               const PorosityParams& params);

/// The unique a with 2^{-a} <= 1 - 2 alpha < 2^{1-a}. Throws DomainError unless 0 < alpha < 1/2.
int a_of_alpha(double alpha);

struct PorosityBound {
  int a = 0;
  double bound = 0.0;          // d - p ell + c / log2(1/(1-2 alpha))
  double small_p_bound = 0.0;  // d - p ell + c p log2(1/p) / log2(1/(1-2 alpha))
};

PorosityBound porosity_bounds(int d, int ell, double p, double alpha, double c);

// ---- cube labelling -------------------------------------------------------

struct CubeLabeling {
  DyadicCube parent;
  int a = 1;
  std::vector<bool> labels;             // indexed by relative Morton key
  std::vector<DyadicCube> labeled;      // the union set as a cell list
  std::vector<HoleConfig> witness_holes;  // porous kind: holes of radius alpha r per labeled child
  std::vector<Point> witnesses;           // porous kind: the witness point per labeled child
  bool zero_parent = false;
};

struct PorousLabelParams {
  double alpha = 0.25;
  double eps = 0.01;
  int ell = 1;
  int frames = 4;
  std::uint64_t seed = 0;
  int radial_steps = 16;
};

/// Witness points of a cube: its centre and its 2^d vertices moved slightly inward.
std::vector<Point> witness_points(const DyadicCube& q);

/// Whether Q' (level k+a) is (alpha,eps)-porous relative to r = 2^{-k}; on success the witness
/// point and the holes (radius alpha r) are written to the optional outputs.
bool is_porous_cube(const DyadicMassTree& tree, const DyadicCube& child, int k, const PorousLabelParams& params,
                    Point* witness = nullptr, HoleConfig* holes = nullptr);

CubeLabeling label_porous(const DyadicMassTree& tree, const DyadicCube& q, int a, const PorousLabelParams& params);

struct TrappedLabelParams {
  double alpha = 0.5;
  double eps = 0.01;
  int m = 1;
  int frames = 16;
  std::uint64_t seed = 0;
};

/// Whether the child with relative key `child` of Q (level k) is eps-trapped, given the
/// conditional masses of all 2^{ad} children. Uses the sufficient centre-margin test.
bool is_trapped(int d, int a, std::span<const double> child_weights, std::uint64_t child, double eps, double alpha,
                const std::vector<ConeSpec>& cones);

CubeLabeling label_trapped(const DyadicMassTree& tree, const DyadicCube& q, int a, const TrappedLabelParams& params);

/// Labels children by an arbitrary predicate on (child cube, conditional mass).
template <class Pred>
CubeLabeling label_custom(const DyadicMassTree& tree, const DyadicCube& q, int a, Pred&& pred);

// ---- decomposition --------------------------------------------------------

struct CellRef {
  int level = 0;
  CellKey key = 0;
};

struct Decomposition {
  std::vector<CellRef> E, P, J;
  double mass_E = 0.0;
  double mass_P = 0.0;
  double mass_J = 0.0;
  double mass_3Q = 0.0;
  double c0 = 0.0;              // ell 2^{ad}
  bool bound_holds = false;     // mass_E <= c0 eps mass_3Q
  int porous_children = 0;
  int cover_count = 0;          // children Q' ≺_a Q meeting P
  double c1 = 0.0;              // cover_count / 2^{a(d-ell)}
  bool partition_exact = false;
};

Decomposition decompose_EPJ(const DyadicMassTree& tree, const DyadicCube& q, int a, const PorousLabelParams& params);

/// True iff the cells tile Q exactly (no overlap, no gap) at leaf resolution.
bool cells_partition(const DyadicCube& q, int depth, const std::vector<std::vector<CellRef>>& parts);

/// Greedy cover by balls of radius (1 - 2 alpha) r; returns the number of balls.
int covering_count(const std::vector<Point>& points, double alpha, double r);

template <class Pred>
CubeLabeling label_custom(const DyadicMassTree& tree, const DyadicCube& q, int a, Pred&& pred) {
  CubeLabeling out;
  out.parent = q;
  out.a = a;
  const double mq = tree.mass(q);
  const std::size_t n = std::size_t{1} << (a * q.dim());
  out.labels.assign(n, false);
  if (mq == 0.0) {
    out.zero_parent = true;
    return out;
  }
  const CellKey base = key_of(q) << (a * q.dim());
  for (std::size_t c = 0; c < n; ++c) {
    const DyadicCube child = cube_of_key(q.dim(), q.level + a, base + c);
    if (pred(child, tree.mass(q.level + a, base + c) / mq)) {
      out.labels[c] = true;
      out.labeled.push_back(child);
    }
  }
  return out;
}

}  // namespace dimens
