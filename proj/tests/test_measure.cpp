#include <cmath>

#include <doctest.h>

#include "dimens/error.hpp"
#include "dimens/mass_tree.hpp"
#include "dimens/measure.hpp"
#include "dimens/scale_stats.hpp"

using namespace dimens;
using nlohmann::json;

TEST_CASE("lebesgue cells are uniform") {
  const BuiltMeasure b = build(spec_from_json({{"type", "lebesgue"}, {"dim", 2}, {"depth", 4}}));
  CHECK(b.tree.nonzero_count(4) == 256);
  CHECK(b.tree.mass(4, 17) == std::ldexp(1.0, -8));
  CHECK(*b.dimension.value == 2.0);
}

TEST_CASE("bernoulli product rule") {
  const BuiltMeasure b = build(spec_from_json({{"type", "bernoulli"}, {"weights", {0.25, 0.75}}, {"depth", 3}}));
  CHECK(b.tree.mass(3, 0) == doctest::Approx(1.0 / 64));
  CHECK(b.tree.mass(3, 7) == doctest::Approx(27.0 / 64));
  CHECK(parent_sum_deviation(b.tree) < 1e-12);
}

TEST_CASE("porous cantor keeps the two end intervals") {
  const BuiltMeasure b = build(spec_from_json({{"type", "porous_cantor"}, {"gap", 0.5}, {"depth", 4}}));
  CHECK(b.tree.nonzero_count(4) == 4);
  for (CellKey k : {0u, 3u, 12u, 15u}) CHECK(b.tree.mass(4, k) == doctest::Approx(0.25));
  CHECK(b.tree.mass(2, 1) == 0.0);
  CHECK(*b.dimension.value == doctest::Approx(0.5));

  CHECK_THROWS_AS(spec_from_json({{"type", "porous_cantor"}, {"gap", 0.6}}), DomainError);
}

TEST_CASE("known dimensions") {
  MeasureSpec s;
  s.kind = MeasureKind::Lebesgue;
  s.dim = 3;
  CHECK(*theoretical_dimension(s).value == 3.0);

  s.kind = MeasureKind::Bernoulli;
  s.dim = 1;
  s.weights = {0.5, 0.5};
  CHECK(*theoretical_dimension(s).value == doctest::Approx(1.0));
  s.weights = {0.25, 0.75};
  const double h = 0.25 * 2 + 0.75 * std::log2(4.0 / 3);
  CHECK(*theoretical_dimension(s).value == doctest::Approx(h));
  CHECK(h == doctest::Approx(0.81128).epsilon(1e-5));

  // cross-check against log2 µ(Q^{N,x}) / (-N) at sampled points
  s.depth = 16;
  const DyadicMassTree t = build(s).tree;
  double mean = 0.0;
  const auto pts = sample_points(t, 1000, 1);
  for (const Point& x : pts) mean += dyadic_upper_dim(t, x, 16) / pts.size();
  CHECK(mean == doctest::Approx(h).epsilon(0.05));
}

TEST_CASE("ifs: cantor middle thirds") {
  const json j = {{"type", "ifs"},
                  {"depth", 10},
                  {"maps", {{{"ratio", 1.0 / 3}, {"translation", {0.0}}}, {{"ratio", 1.0 / 3}, {"translation", {2.0 / 3}}}}}};
  const MeasureSpec s = spec_from_json(j);
  CHECK(s.dim == 1);
  CHECK(ifs_separated(s));
  CHECK(*theoretical_dimension(s).value == doctest::Approx(std::log(2.0) / std::log(3.0)));
  const BuiltMeasure b = build(s);
  CHECK(b.tree.total() == doctest::Approx(1.0));
  CHECK(b.tree.mass(cube_of_point(Point{0.45}, 3)) == 0.0);  // inside the removed middle third

  MeasureSpec overlap = s;
  overlap.maps[1].translation = {0.2};
  CHECK_FALSE(ifs_separated(overlap));
  CHECK_FALSE(theoretical_dimension(overlap).value.has_value());
}

TEST_CASE("product of lebesgue and a point is a segment") {
  const json j = {{"type", "product"},
                  {"depth", 8},
                  {"factors", {{{"type", "lebesgue"}, {"dim", 1}}, {{"type", "point_mass"}, {"point", {0.3}}}}}};
  const BuiltMeasure b = build(spec_from_json(j));
  CHECK(b.tree.dim() == 2);
  CHECK(*b.dimension.value == 1.0);
  CHECK(b.tree.mass(cube_of_point(Point{0.9, 0.3}, 3)) == doctest::Approx(0.125));
  CHECK(b.tree.mass(cube_of_point(Point{0.9, 0.6}, 3)) == 0.0);
}

TEST_CASE("cascade is seeded") {
  const json j = {{"type", "cascade"}, {"dim", 1}, {"depth", 10}, {"seed", 4}, {"spread", 0.5}};
  const DyadicMassTree a = build(spec_from_json(j)).tree;
  const DyadicMassTree b = build(spec_from_json(j)).tree;
  for (CellKey k = 0; k < 1024; ++k) CHECK(a.mass(10, k) == b.mass(10, k));
  CHECK(parent_sum_deviation(a) < 1e-12);
}

TEST_CASE("spec json round trip and validation") {
  const json j = {{"type", "porous_cantor"}, {"levels_per_generation", 3}, {"pattern", {"gap", "full"}}, {"depth", 12}};
  const MeasureSpec s = spec_from_json(j);
  CHECK(spec_to_json(spec_from_json(spec_to_json(s))) == spec_to_json(s));
  CHECK(*theoretical_dimension(s).value == doctest::Approx((1.0 + 3.0) / 6.0));

  CHECK_THROWS_AS(spec_from_json({{"type", "fractal"}}), ConfigError);
  CHECK_THROWS_AS(spec_from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(spec_from_json({{"type", "bernoulli"}, {"weights", {0.5, 0.6}}}), DomainError);
  CHECK_THROWS_AS(spec_from_json({{"type", "point_mass"}, {"point", {1.2}}}), DomainError);
  CHECK_THROWS_AS(spec_from_json({{"type", "lebesgue"}, {"dim", 2}, {"depth", 40}}), DomainError);
}
