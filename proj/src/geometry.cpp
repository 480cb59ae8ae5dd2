#include "dimens/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "dimens/error.hpp"

namespace dimens {

namespace {

using Vec = std::array<double, kMaxDim>;

double norm(const Vec& w, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += w[i] * w[i];
  return std::sqrt(s);
}

double near_dist(const Box& b, const Vec& x) {
  double s = 0.0;
  for (int i = 0; i < b.dim; ++i) {
    double t = 0.0;
    if (x[i] < b.lo[i]) t = b.lo[i] - x[i];
    else if (x[i] > b.lo[i] + b.side) t = x[i] - b.lo[i] - b.side;
    s += t * t;
  }
  return std::sqrt(s);
}

double far_dist(const Box& b, const Vec& x) {
  double s = 0.0;
  for (int i = 0; i < b.dim; ++i) {
    const double t = std::max(std::abs(x[i] - b.lo[i]), std::abs(x[i] - b.lo[i] - b.side));
    s += t * t;
  }
  return std::sqrt(s);
}

Vec to_vec(std::span<const double> x) {
  Vec v{};
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i];
  return v;
}

/// Cone with its projector onto V^perp unrolled into fixed-size storage.
struct FastCone {
  int d = 0;
  double alpha = 0.0;
  double perp[kMaxDim][kMaxDim]{};
  Vec theta{};

  FastCone(const ConeSpec& c) : d(static_cast<int>(c.V.rows())), alpha(c.alpha) {
    const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(d, d) - c.V * c.V.transpose();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) perp[i][j] = P(i, j);
      theta[i] = c.theta(i);
    }
  }
  double dist_to_V(const Vec& w) const {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      double t = 0.0;
      for (int j = 0; j < d; ++j) t += perp[i][j] * w[j];
      s += t * t;
    }
    return std::sqrt(s);
  }
  double dot_theta(const Vec& w) const {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += w[i] * theta[i];
    return s;
  }
};

}  // namespace

bool cone_membership(std::span<const double> y, std::span<const double> x, const ConeSpec& cone, ConeMode mode) {
  const int d = static_cast<int>(x.size());
  if (static_cast<int>(y.size()) != d || cone.V.rows() != d) throw DomainError("cone_membership: dimension mismatch");
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w(i) = y[i] - x[i];
  const double n = w.norm();
  if (n == 0.0) return false;
  const double dist = (w - cone.V * (cone.V.transpose() * w)).norm();
  if (!(dist < cone.alpha * n)) return false;
  if (mode == ConeMode::XminusH) return w.dot(cone.theta) <= cone.alpha * n;
  return true;
}

Eigen::MatrixXd random_frame(int d, int k, Rng& rng) {
  if (k < 1 || k > d) throw DomainError("random_frame: need 1 <= k <= d");
  Eigen::MatrixXd g(d, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int j = 0; j < k; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

Eigen::VectorXd random_direction(int d, Rng& rng) {
  Eigen::VectorXd v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = rng.normal();
  } while (v.norm() == 0.0);
  return v / v.norm();
}

std::vector<ConeSpec> sample_cones(int d, int m, double alpha, int frames, std::uint64_t seed) {
  if (m < 0 || m >= d) throw DomainError("cones need 0 <= m < d");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("cone aperture must lie in (0,1]");
  Rng rng(seed);
  std::vector<ConeSpec> out;
  for (int i = 0; i < frames; ++i) {
    Eigen::MatrixXd V = random_frame(d, d - m, rng);
    Eigen::VectorXd theta = random_direction(d, rng);
    const Eigen::VectorXd v0 = V.col(0);
    out.push_back({V, alpha, theta});
    out.push_back({V, alpha, v0});
    out.push_back({V, alpha, -v0});
  }
  return out;
}

ConicalRatio min_conical_ratio(const DyadicMassTree& tree, std::span<const double> x, int k,
                               const std::vector<ConeSpec>& cones) {
  const int d = tree.dim();
  if (static_cast<int>(x.size()) != d) throw DomainError("min_conical_ratio: dimension mismatch");
  if (k < 0 || k > tree.depth()) throw PreconditionError("min_conical_ratio: scale below tree depth");
  const double r = std::ldexp(1.0, -k);
  const Vec xv = to_vec(x);
  ConicalRatio out;
  out.denominator = ball_center_mass(tree, x, r);
  if (out.denominator == 0.0) throw ZeroMassError("min_conical_ratio: µ(B(x,r)) = 0");
  out.ratio = std::numeric_limits<double>::infinity();
  out.cones = static_cast<int>(cones.size());
  for (const ConeSpec& cs : cones) {
    const FastCone c(cs);
    const double L = 1.0 + c.alpha;
    auto in_region = [&](const Vec& p) {
      Vec w{};
      for (int i = 0; i < d; ++i) w[i] = p[i] - xv[i];
      const double n = norm(w, d);
      if (n == 0.0 || n > r) return false;
      return c.dist_to_V(w) < c.alpha * n && c.dot_theta(w) <= c.alpha * n;
    };
    const double num = leaf_center_mass(
        tree,
        [&](const Box& b) {
          const Vec ctr = b.center();
          Vec w{};
          for (int i = 0; i < d; ++i) w[i] = ctr[i] - xv[i];
          const double h = b.half_diagonal();
          const double n = norm(w, d);
          const double f = c.alpha * n - c.dist_to_V(w);
          const double g = c.dot_theta(w) - c.alpha * n;
          if (r - n < -h || f <= -L * h || g > L * h) return Region::Outside;
          if (r - n >= h && f > L * h && g < -L * h) return Region::Inside;
          return Region::Partial;
        },
        in_region);
    const double ratio = num / out.denominator;
    if (ratio < out.ratio) {
      out.ratio = ratio;
      out.worst = cs;
    }
  }
  if (cones.empty()) out.ratio = 0.0;
  return out;
}

ConicalRatio min_conical_ratio(const DyadicMassTree& tree, std::span<const double> x, int k, double alpha, int m,
                               int frames, std::uint64_t seed) {
  return min_conical_ratio(tree, x, k, sample_cones(tree.dim(), m, alpha, frames, seed));
}

namespace {

/// Nonzero cells at `level` whose box meets the closed ball B(x, radius).
std::vector<std::pair<CellKey, double>> cells_near(const DyadicMassTree& tree, int level, const Vec& x, double radius) {
  std::vector<std::pair<CellKey, double>> out;
  const int d = tree.dim();
  auto rec = [&](auto&& self, int l, CellKey key, double m) -> void {
    const Box b = Box::of(d, l, key);
    if (near_dist(b, x) > radius) return;
    if (l == level) {
      out.emplace_back(key, m);
      return;
    }
    tree.for_each_child(l, key, [&](CellKey ck, double cm) { self(self, l + 1, ck, cm); });
  };
  rec(rec, 0, 0, tree.total());
  return out;
}

}  // namespace

int euclidean_homogeneity(const DyadicMassTree& tree, std::span<const double> x, int k, double delta, double eps,
                          double C) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("euclidean_homogeneity: delta must lie in (0,1)");
  if (!(C > 1.0)) throw DomainError("euclidean_homogeneity: enlargement constant must exceed 1");
  int ap = 0;
  while (std::ldexp(1.0, -ap) > delta) ++ap;
  if (k + ap > tree.depth()) throw PreconditionError("euclidean_homogeneity: k + a' exceeds tree depth");
  const int d = tree.dim();
  const double r = std::ldexp(1.0, -k);
  const double ref = ball_mass(tree, x, C * r).upper;
  if (ref == 0.0) throw ZeroMassError("euclidean_homogeneity: µ(B(x, C r)) = 0");
  const Vec xv = to_vec(x);
  struct Cand {
    CellKey key;
    double mass;
    Point c;
  };
  std::vector<Cand> cands;
  for (const auto& [key, m] : cells_near(tree, k + ap, xv, r)) {
    const Box b = Box::of(d, k + ap, key);
    const Vec cv = b.center();
    Point c(cv.begin(), cv.begin() + d);
    double dist = 0.0;
    for (int i = 0; i < d; ++i) dist += (c[i] - x[i]) * (c[i] - x[i]);
    if (std::sqrt(dist) > r) continue;
    if (ball_mass(tree, c, delta * r).lower > eps * ref) cands.push_back({key, m, std::move(c)});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.mass != b.mass) return a.mass > b.mass;
    return a.key < b.key;
  });
  std::vector<const Cand*> chosen;
  for (const Cand& c : cands) {
    bool ok = true;
    for (const Cand* o : chosen) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += (c.c[i] - o->c[i]) * (c.c[i] - o->c[i]);
      if (std::sqrt(s) <= 2.0 * delta * r) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(&c);
  }
  return static_cast<int>(chosen.size());
}

int dyadic_homogeneity(const DyadicMassTree& tree, std::span<const double> x, int k, int a, double eps) {
  TreeChain chain(tree, x);
  return dyadic_homogeneity(chain, k, a, eps);
}

int dyadic_homogeneity(const ChainView& chain, int k, int a, double eps) {
  std::vector<double> w;
  chain.descendant_weights(k, a, w);
  int n = 0;
  for (double v : w) n += v > eps;
  return n;
}

std::vector<Eigen::MatrixXd> porosity_frames(int d, int ell, int frames, std::uint64_t seed) {
  if (ell < 1 || ell > d) throw DomainError("porosity: ell must lie in [1, d]");
  std::vector<Eigen::MatrixXd> out;
  std::vector<int> pick(ell);
  for (int i = 0; i < ell; ++i) pick[i] = i;
  while (true) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(d, ell);
    for (int j = 0; j < ell; ++j) f(pick[j], j) = 1.0;
    out.push_back(f);
    int i = ell - 1;
    while (i >= 0 && pick[i] == d - ell + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < ell; ++j) pick[j] = pick[j - 1] + 1;
  }
  Rng rng(seed);
  for (int i = 0; i < frames; ++i) out.push_back(random_frame(d, ell, rng));
  return out;
}

namespace {

bool holes_exist_thr(const DyadicMassTree& tree, std::span<const double> x, double r, double rho, double thr,
                     int radial_steps, const std::vector<Eigen::MatrixXd>& frames, HoleConfig* found) {
  const int d = tree.dim();
  std::vector<double> ts{rho};
  for (int j = 1; j < radial_steps; ++j) {
    const double t = static_cast<double>(j) / radial_steps;
    if (t > rho && t < 1.0 - rho) ts.push_back(t);
  }
  if (1.0 - rho > rho) ts.push_back(1.0 - rho);
  Point y(d);
  for (const Eigen::MatrixXd& f : frames) {
    std::vector<Point> centers;
    bool ok = true;
    for (int i = 0; i < f.cols() && ok; ++i) {
      bool hit = false;
      for (double t : ts) {
        for (double sign : {1.0, -1.0}) {
          for (int c = 0; c < d; ++c) y[c] = x[c] + sign * t * r * f(c, i);
          if (ball_mass_until(tree, y, rho * r, thr).upper <= thr) {
            centers.push_back(y);
            hit = true;
            break;
          }
        }
        if (hit) break;
      }
      ok = hit;
    }
    if (ok) {
      if (found) *found = HoleConfig{std::move(centers), rho};
      return true;
    }
  }
  return false;
}

double hole_threshold(const DyadicMassTree& tree, std::span<const double> x, double r, const PorosityParams& p) {
  if (p.mode == PorosityMode::Set) return 0.0;
  const BallMassEstimate ref = ball_mass(tree, x, r);
  if (ref.upper == 0.0) throw ZeroMassError("porosity: µ(B(x,r)) = 0");
  return p.eps * ref.lower;
}

}  // namespace

bool holes_exist(const DyadicMassTree& tree, std::span<const double> x, double r, double rho,
                 const PorosityParams& params, const std::vector<Eigen::MatrixXd>& frames, HoleConfig* found) {
  return holes_exist_thr(tree, x, r, rho, hole_threshold(tree, x, r, params), params.radial_steps, frames, found);
}

PorosityResult porosity_search(const DyadicMassTree& tree, std::span<const double> x, double r,
                               const PorosityParams& params) {
  if (static_cast<int>(x.size()) != tree.dim()) throw DomainError("porosity: dimension mismatch");
  if (!(r > 0.0)) throw DomainError("porosity: radius must be positive");
  if (params.mode == PorosityMode::Measure && !(params.eps > 0.0)) throw DomainError("porosity: eps must be positive");
  const auto frames = porosity_frames(tree.dim(), params.ell, params.frames, params.seed);
  const double thr = hole_threshold(tree, x, r, params);
  PorosityResult out;
  HoleConfig h;
  if (holes_exist_thr(tree, x, r, 0.5, thr, params.radial_steps, frames, &h)) return {0.5, h};
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < params.bisection_steps; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (holes_exist_thr(tree, x, r, mid, thr, params.radial_steps, frames, &h)) {
      lo = mid;
      out.holes = h;
    } else {
      hi = mid;
    }
  }
  out.rho = lo;
  return out;
}

int a_of_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("alpha must lie in the open interval (0, 1/2)");
  const double v = 1.0 - 2.0 * alpha;
  int a = 1;
  while (std::ldexp(1.0, -a) > v) ++a;
  return a;
}

PorosityBound porosity_bounds(int d, int ell, double p, double alpha, double c) {
  if (ell < 1 || ell > d) throw DomainError("porosity_bounds: ell must lie in [1, d]");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("porosity_bounds: p must lie in (0, 1]");
  PorosityBound b;
  b.a = a_of_alpha(alpha);
  const double L = std::log2(1.0 / (1.0 - 2.0 * alpha));
  b.bound = d - p * ell + c / L;
  b.small_p_bound = d - p * ell + c * p * std::log2(1.0 / p) / L;
  return b;
}

std::vector<Point> witness_points(const DyadicCube& q) {
  const int d = q.dim();
  const double s = q.side();
  const double eta = 1e-6 * s;
  const Point lo = q.lower_corner();
  std::vector<Point> out{q.center()};
  for (std::uint32_t v = 0; v < (1u << d); ++v) {
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = ((v >> i) & 1u) ? lo[i] + s - eta : lo[i] + eta;
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

bool porous_with_frames(const DyadicMassTree& tree, const DyadicCube& child, int k, const PorousLabelParams& p,
                        const std::vector<Eigen::MatrixXd>& frames, Point* witness, HoleConfig* holes) {
  const double r = std::ldexp(1.0, -k);
  const double rho = p.alpha + 1e-9;
  for (const Point& w : witness_points(child)) {
    const BallMassEstimate ref = ball_mass(tree, w, r);
    const double thr = p.eps * ref.lower;
    HoleConfig h;
    if (holes_exist_thr(tree, w, r, rho, thr, p.radial_steps, frames, &h)) {
      if (witness) *witness = w;
      if (holes) *holes = HoleConfig{std::move(h.centers), p.alpha};
      return true;
    }
  }
  return false;
}

void check_porous_params(int d, const PorousLabelParams& p) {
  if (!(p.alpha > 0.0 && p.alpha < 0.5)) throw DomainError("porous cubes: alpha must lie in the open interval (0, 1/2)");
  if (!(p.eps > 0.0)) throw DomainError("porous cubes: eps must be positive");
  if (p.ell < 1 || p.ell > d) throw DomainError("porous cubes: ell must lie in [1, d]");
}

}  // namespace

bool is_porous_cube(const DyadicMassTree& tree, const DyadicCube& child, int k, const PorousLabelParams& params,
                    Point* witness, HoleConfig* holes) {
  check_porous_params(tree.dim(), params);
  const auto frames = porosity_frames(tree.dim(), params.ell, params.frames, params.seed);
  return porous_with_frames(tree, child, k, params, frames, witness, holes);
}

CubeLabeling label_porous(const DyadicMassTree& tree, const DyadicCube& q, int a, const PorousLabelParams& params) {
  check_porous_params(tree.dim(), params);
  if (q.level + a > tree.depth()) throw PreconditionError("label_porous: k + a exceeds tree depth");
  const auto frames = porosity_frames(tree.dim(), params.ell, params.frames, params.seed);
  CubeLabeling out;
  out.parent = q;
  out.a = a;
  const std::size_t n = std::size_t{1} << (a * q.dim());
  out.labels.assign(n, false);
  if (tree.mass(q) == 0.0) {
    out.zero_parent = true;
    return out;
  }
  const CellKey base = key_of(q) << (a * q.dim());
  for (std::size_t c = 0; c < n; ++c) {
    const DyadicCube child = cube_of_key(q.dim(), q.level + a, base + c);
    Point w;
    HoleConfig h;
    if (porous_with_frames(tree, child, q.level, params, frames, &w, &h)) {
      out.labels[c] = true;
      out.labeled.push_back(child);
      out.witnesses.push_back(std::move(w));
      out.witness_holes.push_back(std::move(h));
    }
  }
  return out;
}

bool is_trapped(int d, int a, std::span<const double> child_weights, std::uint64_t child, double eps, double alpha,
                const std::vector<ConeSpec>& cones) {
  if (child_weights[child] <= eps) return false;
  auto position = [&](std::uint64_t rel) {
    Vec p{};
    for (int j = 0; j < a; ++j)
      for (int i = 0; i < d; ++i) p[i] += static_cast<double>((rel >> (j * d + i)) & 1u) * std::ldexp(1.0, j);
    for (int i = 0; i < d; ++i) p[i] += 0.5;
    return p;
  };
  const Vec me = position(child);
  const double margin = (1.0 + alpha) * std::sqrt(static_cast<double>(d));
  struct Sib {
    Vec w;
    double D;
  };
  std::vector<Sib> sibs;
  for (std::uint64_t j = 0; j < child_weights.size(); ++j) {
    if (j == child || child_weights[j] <= eps) continue;
    const Vec p = position(j);
    Vec w{};
    for (int i = 0; i < d; ++i) w[i] = p[i] - me[i];
    sibs.push_back({w, norm(w, d)});
  }
  for (const ConeSpec& cs : cones) {
    const FastCone c(cs);
    bool hit = false;
    for (const Sib& s : sibs) {
      const double lim = c.alpha * s.D - margin;
      if (c.dist_to_V(s.w) < lim && c.dot_theta(s.w) <= lim) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

CubeLabeling label_trapped(const DyadicMassTree& tree, const DyadicCube& q, int a, const TrappedLabelParams& params) {
  if (q.level + a > tree.depth()) throw PreconditionError("label_trapped: k + a exceeds tree depth");
  const auto cones = sample_cones(tree.dim(), params.m, params.alpha, params.frames, params.seed);
  CubeLabeling out;
  out.parent = q;
  out.a = a;
  const int d = q.dim();
  const std::size_t n = std::size_t{1} << (a * d);
  out.labels.assign(n, false);
  const double mq = tree.mass(q);
  if (mq == 0.0) {
    out.zero_parent = true;
    return out;
  }
  std::vector<double> w(n, 0.0);
  const CellKey base = key_of(q) << (a * d);
  tree.for_each_in_range(q.level + a, base, base + n, [&](CellKey k, double m) { w[k - base] = m / mq; });
  for (std::size_t c = 0; c < n; ++c)
    if (is_trapped(d, a, w, c, params.eps, params.alpha, cones)) {
      out.labels[c] = true;
      out.labeled.push_back(cube_of_key(d, q.level + a, base + c));
    }
  return out;
}

bool cells_partition(const DyadicCube& q, int depth, const std::vector<std::vector<CellRef>>& parts) {
  const int d = q.dim();
  std::vector<std::pair<CellKey, CellKey>> ranges;
  for (const auto& part : parts)
    for (const CellRef& c : part) {
      if (c.level < q.level || c.level > depth) return false;
      const int s = d * (depth - c.level);
      ranges.emplace_back(c.key << s, (c.key + 1) << s);
    }
  std::sort(ranges.begin(), ranges.end());
  const int s = d * (depth - q.level);
  CellKey at = key_of(q) << s;
  const CellKey end = (key_of(q) + 1) << s;
  for (const auto& [lo, hi] : ranges) {
    if (lo != at) return false;
    at = hi;
  }
  return at == end;
}

Decomposition decompose_EPJ(const DyadicMassTree& tree, const DyadicCube& q, int a, const PorousLabelParams& params) {
  const int d = tree.dim();
  const CubeLabeling lab = label_porous(tree, q, a, params);
  const double r = std::ldexp(1.0, -q.level);
  struct Hole {
    Vec c;
    double R;
  };
  std::vector<Hole> holes;
  for (const HoleConfig& h : lab.witness_holes)
    for (const Point& y : h.centers) holes.push_back({to_vec(y), h.rho * r});

  Decomposition out;
  const int D = tree.depth();
  std::vector<bool> child_has_P(lab.labels.size(), false);
  const CellKey base = key_of(q) << (a * d);
  auto emit = [&](std::vector<CellRef>& part, double& acc, int level, CellKey key) {
    part.push_back({level, key});
    acc += tree.mass(level, key);
  };
  auto rec = [&](auto&& self, int level, CellKey key, bool porous, std::size_t child,
                 const std::vector<const Hole*>& live) -> void {
    const Box b = Box::of(d, level, key);
    std::vector<const Hole*> meet;
    for (const Hole* h : live) {
      if (near_dist(b, h->c) > h->R) continue;
      if (far_dist(b, h->c) <= h->R) {
        emit(out.E, out.mass_E, level, key);
        return;
      }
      meet.push_back(h);
    }
    if (meet.empty()) {
      if (porous) {
        emit(out.P, out.mass_P, level, key);
        child_has_P[child] = true;
      } else {
        emit(out.J, out.mass_J, level, key);
      }
      return;
    }
    if (level == D) {
      emit(out.E, out.mass_E, level, key);
      return;
    }
    for (CellKey c = 0; c < (CellKey{1} << d); ++c) self(self, level + 1, (key << d) | c, porous, child, meet);
  };
  std::vector<const Hole*> all;
  for (const Hole& h : holes) all.push_back(&h);
  for (std::size_t c = 0; c < lab.labels.size(); ++c) rec(rec, q.level + a, base + c, lab.labels[c], c, all);

  out.porous_children = static_cast<int>(lab.labeled.size());
  out.mass_3Q = enlarged_cube_mass(tree, q, 3.0);
  out.c0 = params.ell * std::ldexp(1.0, a * d);
  out.bound_holds = out.mass_E <= out.c0 * params.eps * out.mass_3Q * (1.0 + 1e-12);
  for (bool b : child_has_P) out.cover_count += b;
  out.c1 = out.cover_count / std::ldexp(1.0, a * (d - params.ell));
  out.partition_exact = cells_partition(q, D, {out.E, out.P, out.J});
  return out;
}

int covering_count(const std::vector<Point>& points, double alpha, double r) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("covering_count: alpha must lie in (0, 1/2)");
  const double R = (1.0 - 2.0 * alpha) * r;
  std::vector<bool> covered(points.size(), false);
  int count = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (covered[i]) continue;
    ++count;
    for (std::size_t j = i; j < points.size(); ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < points[i].size(); ++c) s += (points[i][c] - points[j][c]) * (points[i][c] - points[j][c]);
      if (std::sqrt(s) <= R) covered[j] = true;
    }
  }
  return count;
}

}  // namespace dimens
