#include <algorithm>
#include <cmath>
#include <numbers>

#include <doctest.h>

#include "dimens/error.hpp"
#include "dimens/geometry.hpp"
#include "dimens/measure.hpp"

using namespace dimens;

namespace {

DyadicMassTree make(MeasureKind kind, int d, int depth) {
  MeasureSpec s;
  s.kind = kind;
  s.dim = d;
  s.depth = depth;
  if (kind == MeasureKind::PointMass)
    for (int i = 0; i < d; ++i) s.point.push_back(0.3 + 0.3 * i);
  if (kind == MeasureKind::Bernoulli) s.weights = d == 1 ? std::vector<double>{0.25, 0.75}
                                                         : std::vector<double>{1.0 / 16, 3.0 / 16, 3.0 / 16, 9.0 / 16};
  return build(s).tree;
}

DyadicMassTree horizontal_segment(int depth) {
  MeasureSpec f1, f2, s;
  f1.kind = MeasureKind::Lebesgue;
  f2.kind = MeasureKind::PointMass;
  f2.point = {0.5};
  s.kind = MeasureKind::Product;
  s.dim = 2;
  s.depth = depth;
  s.factors = {f1, f2};
  return build(s).tree;
}

DyadicMassTree porous_cantor(int a, int depth) {
  MeasureSpec s;
  s.kind = MeasureKind::PorousCantor;
  s.levels_per_generation = a;
  s.depth = depth;
  return build(s).tree;
}

ConeSpec cone(Eigen::Vector2d v, double alpha, Eigen::Vector2d theta) {
  ConeSpec c;
  c.V = v;
  c.alpha = alpha;
  c.theta = theta;
  return c;
}

}  // namespace

TEST_CASE("cone membership") {
  const ConeSpec c = cone({1, 0}, 0.5, {1, 0});
  const double x[] = {0.0, 0.0};
  const double along[] = {1.0, 0.0}, across[] = {0.0, 1.0}, back[] = {-1.0, 0.0};
  CHECK(cone_membership(along, x, c, ConeMode::X));
  CHECK_FALSE(cone_membership(across, x, c, ConeMode::X));
  CHECK_FALSE(cone_membership(along, x, c, ConeMode::XminusH));
  CHECK(cone_membership(back, x, c, ConeMode::XminusH));
  CHECK_FALSE(cone_membership(x, x, c, ConeMode::X));
}

TEST_CASE("random frames are orthonormal and seeded") {
  Rng rng(3);
  for (int d = 1; d <= 4; ++d)
    for (int k = 1; k <= d; ++k) {
      const Eigen::MatrixXd F = random_frame(d, k, rng);
      CHECK((F.transpose() * F - Eigen::MatrixXd::Identity(k, k)).norm() < 1e-12);
    }
  const auto a = sample_cones(3, 1, 0.3, 5, 8);
  const auto b = sample_cones(3, 1, 0.3, 7, 8);
  REQUIRE(a.size() == 15);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i].V - b[i].V).norm() == 0.0);
  CHECK_THROWS_AS(sample_cones(2, 2, 0.3, 1, 0), DomainError);
  CHECK_THROWS_AS(sample_cones(2, 1, 0.0, 1, 0), DomainError);
}

TEST_CASE("conical ratios") {
  // area fraction of the double sector minus the sector around theta
  const double sector = std::asin(0.5) / std::numbers::pi;
  const DyadicMassTree leb = make(MeasureKind::Lebesgue, 2, 11);
  const Point x{0.47, 0.53};
  for (std::uint64_t seed : {0u, 1u}) CHECK(min_conical_ratio(leb, x, 2, 0.5, 1, 6, seed).ratio == doctest::Approx(sector).epsilon(0.02));

  const DyadicMassTree pm = make(MeasureKind::PointMass, 2, 10);
  const ConicalRatio z = min_conical_ratio(pm, Point{0.3, 0.6}, 3, 0.5, 1, 4, 0);
  CHECK(z.ratio == 0.0);
  CHECK(z.denominator > 0.0);

  const DyadicMassTree seg = horizontal_segment(10);
  const Point s{0.4, 0.5};
  for (double alpha : {0.5, 0.2, 0.05}) {
    const std::vector<ConeSpec> vertical = {cone({0, 1}, alpha, {0, 1})};
    CHECK(min_conical_ratio(seg, s, 2, vertical).ratio == 0.0);
  }
  const std::vector<ConeSpec> flat = {cone({1, 0}, 0.5, {1, 0})};
  CHECK(min_conical_ratio(seg, s, 2, flat).ratio == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("euclidean homogeneity") {
  const DyadicMassTree leb = make(MeasureKind::Lebesgue, 1, 8);
  const int h = euclidean_homogeneity(leb, Point{0.5}, 2, 0.25, 1e-3);
  CHECK(h >= 2);
  CHECK(h <= 5);

  const DyadicMassTree pm = make(MeasureKind::PointMass, 2, 10);
  for (int k = 1; k <= 6; ++k) CHECK(euclidean_homogeneity(pm, Point{0.3, 0.6}, k, 0.125, 0.5) == 1);
  CHECK(euclidean_homogeneity(leb, Point{0.3}, 2, 0.25, 1.0) == 0);
}

TEST_CASE("dyadic homogeneity") {
  const DyadicMassTree leb = make(MeasureKind::Lebesgue, 2, 8);
  CHECK(dyadic_homogeneity(leb, Point{0.1, 0.9}, 3, 2, 0.05) == 16);
  const DyadicMassTree pm = make(MeasureKind::PointMass, 2, 8);
  for (int a = 1; a <= 3; ++a) CHECK(dyadic_homogeneity(pm, Point{0.3, 0.6}, 2, a, 0.9) == 1);
  // children of a cube carry 1/16, 3/16, 3/16, 9/16
  const DyadicMassTree b = make(MeasureKind::Bernoulli, 1, 10);
  CHECK(dyadic_homogeneity(b, Point{0.2}, 3, 2, 0.2) == 1);
  CHECK(dyadic_homogeneity(b, Point{0.2}, 3, 2, 0.1) == 3);
}

TEST_CASE("porosity search") {
  PorosityParams set;
  set.mode = PorosityMode::Set;
  const DyadicMassTree pm = make(MeasureKind::PointMass, 1, 24);
  const Point atom = sample_points(pm, 1, 0).front();
  for (int k : {1, 4, 8}) CHECK(porosity_search(pm, atom, std::ldexp(1.0, -k), set).rho == doctest::Approx(0.5).epsilon(2e-3));

  const DyadicMassTree leb = make(MeasureKind::Lebesgue, 1, 14);
  CHECK(porosity_search(leb, Point{0.4}, 0.125, set).rho == 0.0);

  // a hole of relative radius rho holds the fraction rho of the ball
  PorosityParams meas;
  meas.eps = 0.05;
  const double rho = porosity_search(leb, Point{0.4}, 0.125, meas).rho;
  CHECK(rho == doctest::Approx(meas.eps).epsilon(0.2));

  const DyadicMassTree pc = porous_cantor(3, 18);
  const Point y = sample_points(pc, 1, 4).front();
  for (int k = 1; k <= 9; ++k) CHECK(porosity_search(pc, y, std::ldexp(1.0, -k), meas).rho >= 0.375 - 0.05);
}

TEST_CASE("alpha and the dimension bound") {
  CHECK(a_of_alpha(0.25) == 1);
  CHECK(a_of_alpha(0.3) == 2);
  CHECK(a_of_alpha(0.4) == 3);
  CHECK(a_of_alpha(0.45) == 4);
  for (int i = 1; i < 100; ++i) {
    const double alpha = 0.5 * i / 100.0;
    const int a = a_of_alpha(alpha);
    CHECK(std::ldexp(1.0, -a) <= 1 - 2 * alpha);
    CHECK(1 - 2 * alpha < std::ldexp(1.0, 1 - a));
  }
  CHECK_THROWS_AS(a_of_alpha(0.6), DomainError);
  CHECK_THROWS_AS(a_of_alpha(0.0), DomainError);

  CHECK(porosity_bounds(1, 1, 1.0, 0.49, 1.0).bound == doctest::Approx(1 / std::log2(50.0)));
  CHECK(porosity_bounds(1, 1, 1.0, 0.49, 1.0).bound == doctest::Approx(0.1772).epsilon(1e-3));
  double prev = 1e9;
  for (double alpha : {0.3, 0.4, 0.45, 0.49, 0.499}) {
    const double b = porosity_bounds(2, 1, 1.0, alpha, 1.0).bound;
    CHECK(b < prev);
    CHECK(b > 1.0);
    prev = b;
  }
}

TEST_CASE("porous and trapped labels") {
  PorousLabelParams pp;
  pp.alpha = 0.24;
  pp.eps = 0.01;
  const DyadicMassTree leb = make(MeasureKind::Lebesgue, 1, 12);
  CHECK(label_porous(leb, cube_of_point(Point{0.3}, 2), 2, pp).labeled.empty());

  const DyadicMassTree pc = porous_cantor(2, 12);
  const CubeLabeling l = label_porous(pc, unit_cube(1), 2, pp);
  for (CellKey k = 0; k < 4; ++k)
    if (pc.mass(2, k) > 0) CHECK(l.labels[k]);

  const DyadicMassTree pm = make(MeasureKind::PointMass, 2, 12);
  TrappedLabelParams tp;
  tp.eps = 1e-4;
  CHECK(label_trapped(pm, cube_of_point(Point{0.3, 0.6}, 2), 4, tp).labeled.empty());
  const CubeLabeling empty = label_trapped(pm, cube_of_point(Point{0.9, 0.1}, 2), 3, tp);
  CHECK(empty.zero_parent);

  // all siblings of a Lebesgue cube are heavy, so deep interior children are trapped
  const DyadicMassTree leb2 = make(MeasureKind::Lebesgue, 2, 10);
  const CubeLabeling t = label_trapped(leb2, cube_of_point(Point{0.4, 0.4}, 2), 5, tp);
  CHECK(t.labeled.size() > 0);
  CHECK(t.labeled.size() < t.labels.size());
  const DyadicCube corner = refine(cube_of_point(Point{0.4, 0.4}, 2), 5).front();
  CHECK(std::find(t.labeled.begin(), t.labeled.end(), corner) == t.labeled.end());
}

TEST_CASE("E/P/J decomposition") {
  PorousLabelParams pp;
  pp.alpha = 0.3;
  pp.eps = 0.01;
  const int a = a_of_alpha(pp.alpha);

  const DyadicMassTree leb = make(MeasureKind::Lebesgue, 2, 10);
  const DyadicCube q = cube_of_point(Point{0.4, 0.4}, 2);
  const Decomposition dl = decompose_EPJ(leb, q, a, pp);
  CHECK(dl.porous_children == 0);
  CHECK(dl.E.empty());
  CHECK(dl.P.empty());
  CHECK(dl.mass_J == doctest::Approx(leb.mass(q)));
  CHECK(dl.partition_exact);

  const DyadicMassTree pc = porous_cantor(2, 14);
  for (int level : {0, 2, 4}) {
    const DyadicCube c = cube_of_point(sample_points(pc, 1, level).front(), level);
    const Decomposition d = decompose_EPJ(pc, c, a, pp);
    CHECK(d.partition_exact);
    CHECK(d.mass_E == 0.0);
    CHECK(d.bound_holds);
    CHECK(d.mass_E + d.mass_P + d.mass_J == doctest::Approx(pc.mass(c)));
  }

  const DyadicMassTree b = make(MeasureKind::Bernoulli, 2, 10);
  PorousLabelParams pb = pp;
  pb.eps = 0.1;
  for (const Point& x : sample_points(b, 4, 1)) {
    const Decomposition d = decompose_EPJ(b, cube_of_point(x, 2), a, pb);
    CHECK(d.partition_exact);
    CHECK(d.c0 == std::ldexp(1.0, 2 * a));
    CHECK(d.mass_E <= d.c0 * pb.eps * d.mass_3Q + 1e-12);
  }
}

TEST_CASE("covering counts") {
  CHECK(covering_count({}, 0.3, 1.0) == 0);
  CHECK(covering_count({Point{0.2, 0.2}}, 0.3, 1.0) == 1);
  std::vector<Point> line;
  for (int i = 0; i < 200; ++i) line.push_back({i / 200.0, 0.5});
  // radius 0.4 balls along a unit segment
  const int n = covering_count(line, 0.3, 1.0);
  CHECK(n >= 2);
  CHECK(n <= 3);
}
