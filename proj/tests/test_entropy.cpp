#include <cmath>
#include <vector>

#include <doctest.h>

#include "dimens/chain.hpp"
#include "dimens/entropy.hpp"
#include "dimens/error.hpp"
#include "dimens/measure.hpp"
#include "dimens/rng.hpp"

using namespace dimens;

namespace {

MeasureSpec bern(double p, int depth) {
  MeasureSpec s;
  s.kind = MeasureKind::Bernoulli;
  s.dim = 1;
  s.depth = depth;
  s.weights = {p, 1 - p};
  return s;
}

// direct transcription of the closed form, kept apart from the library
double h_oracle(int M, int n, double eps) {
  const double rest = 1 - n * eps;
  return rest * std::log2((M - n) / rest) + (n ? n * eps * std::log2(1 / eps) : 0.0);
}

const double kH = 0.25 * 2 + 0.75 * std::log2(4.0 / 3);

}  // namespace

TEST_CASE("phi and tuple entropy") {
  CHECK(phi(0.5) == 0.5);
  CHECK(phi(0.0) == 0.0);
  CHECK(phi(1.0) == 0.0);
  CHECK_THROWS_AS(phi(-0.1), DomainError);
  CHECK_THROWS_AS(phi(1.5), DomainError);

  const std::vector<double> u4(4, 0.25);
  CHECK(tuple_entropy(u4) == doctest::Approx(2.0));
  for (int n : {1, 3, 7}) {
    const double eps = 0.05;
    const std::vector<double> v(n, eps);
    CHECK(tuple_entropy(v) == doctest::Approx(n * eps * std::log2(1 / eps)));
  }
}

TEST_CASE("cell entropy") {
  MeasureSpec leb;
  leb.kind = MeasureKind::Lebesgue;
  leb.depth = 8;
  const DyadicMassTree lt = build(leb).tree;
  CHECK(cell_entropy(lt, cube_of_point(Point{0.4}, 3), 2) == doctest::Approx(2.0));

  MeasureSpec pm;
  pm.kind = MeasureKind::PointMass;
  pm.point = {0.3};
  pm.depth = 8;
  const DyadicMassTree pt = build(pm).tree;
  for (int a = 1; a <= 4; ++a) CHECK(cell_entropy(pt, cube_of_point(Point{0.3}, 2), a) == 0.0);
  CHECK_THROWS_AS(cell_entropy(pt, cube_of_point(Point{0.9}, 2), 1), ZeroMassError);

  const DyadicMassTree bt = build(bern(0.25, 10)).tree;
  for (CellKey k = 0; k < 16; ++k) CHECK(cell_entropy(bt, cube_of_key(1, 4, k), 1) == doctest::Approx(kH));
}

TEST_CASE("entropy averages") {
  MeasureSpec leb;
  leb.kind = MeasureKind::Lebesgue;
  leb.dim = 2;
  leb.depth = 10;
  const EntropyProfile lp = entropy_average(build(leb).tree, Point{0.31, 0.82}, 1, 8);
  REQUIRE(lp.averages.size() == 8);
  for (double v : lp.averages) CHECK(v == doctest::Approx(2.0));

  const DyadicMassTree bt = build(bern(0.25, 16)).tree;
  for (const Point& x : sample_points(bt, 10, 2)) {
    const EntropyProfile p = entropy_average(bt, x, 1, 14);
    for (double v : p.averages) CHECK(v == doctest::Approx(kH).epsilon(1e-12));
  }

  MeasureSpec pm;
  pm.kind = MeasureKind::PointMass;
  pm.point = {0.3};
  pm.depth = 10;
  const DyadicMassTree pt = build(pm).tree;
  const Point atom = sample_points(pt, 1, 0).front();
  CHECK(entropy_average(pt, atom, 2, 8).last() == 0.0);
  CHECK(entropy_average(pt, Point{0.9}, 1, 8).truncated);
}

TEST_CASE("symbolic chains agree with trees") {
  const MeasureSpec s = bern(0.25, 0);
  std::shared_ptr<const DigitLaw> law = make_law(s);
  for (int j = 0; j < 5; ++j) {
    Rng rng(substream(9, j));
    SymbolicChain ch(law, 300, rng);
    for (int a : {1, 3}) CHECK(entropy_average(ch, a, 300 - a).last() == doctest::Approx(kH));
  }
}

TEST_CASE("fixed-sum maximum") {
  for (int ad : {1, 2, 4}) CHECK(fixed_sum_max(1 << ad, 1.0) == doctest::Approx(ad));
  for (int K : {2, 4, 8, 16})
    for (double c : {0.25, 0.5, 1.0}) {
      CHECK(fixed_sum_max(K, c) == doctest::Approx(c * std::log2(K / c)));
      CHECK(brute_force_fixed_sum(K, c, 20000, K) <= fixed_sum_max(K, c) + 1e-9);
    }
}

TEST_CASE("constrained maximum") {
  CHECK(constrained_max(4, 0, 0.1).value == doctest::Approx(2.0));
  const double v = h_oracle(4, 1, 0.1);
  CHECK(v == doctest::Approx(1.8955).epsilon(1e-4));
  CHECK(constrained_max(4, 1, 0.1).value == doctest::Approx(v).epsilon(1e-12));
  CHECK(brute_force_max(4, 1, 0.1) == doctest::Approx(v).epsilon(1e-6));
  CHECK(brute_force_max(2, 0, 0.2) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(brute_force_max(6, 3, 0.05) == doctest::Approx(h_oracle(6, 3, 0.05)).epsilon(1e-6));

  const ConstrainedMax cm = constrained_max(6, 2, 0.05);
  double sum = 0.0;
  for (double q : cm.q) sum += q;
  for (double p : cm.p) {
    CHECK(p <= 0.05 + 1e-15);
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0));
  std::vector<double> all = cm.q;
  all.insert(all.end(), cm.p.begin(), cm.p.end());
  CHECK(tuple_entropy(all) == doctest::Approx(cm.value));

  CHECK_THROWS_AS(constrained_max(4, 1, 0.2), DomainError);
  CHECK_THROWS_AS(constrained_max(4, 4, 0.01), DomainError);
}

TEST_CASE("log-sum inequality") {
  const std::vector<double> a{1, 1}, b{1, 2};
  const LogSum ls = log_sum_bound(a, b);
  CHECK(ls.lhs == doctest::Approx(-1.0));
  CHECK(ls.rhs == doctest::Approx(2 * std::log2(2.0 / 3)));
  CHECK(log_sum_bound(b, b).lhs == doctest::Approx(log_sum_bound(b, b).rhs));

  Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 6;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.uniform();
      y[i] = 0.01 + rng.uniform();
    }
    const LogSum r = log_sum_bound(x, y);
    CHECK(r.lhs >= r.rhs - 1e-12);
  }
}

TEST_CASE("s prime") {
  const double h = h_oracle(16, 12, std::ldexp(1.0, -6));
  CHECK(h == doctest::Approx(2.9934).epsilon(1e-4));
  CHECK(brute_force_max(16, 12, std::ldexp(1.0, -6)) == doctest::Approx(h).epsilon(1e-6));
  CHECK(s_prime_bound(1, 2, 0.5, 2, std::ldexp(1.0, -6)) == doctest::Approx(0.5 * h / 2 + 1.0));
  CHECK(s_prime_bound(1, 2, 0.5, 2, std::ldexp(1.0, -6)) == doctest::Approx(1.74835).epsilon(1e-4));

  CHECK(s_prime_bound(1, 2, 1e-9, 2, 0.01) == doctest::Approx(2.0).epsilon(1e-6));
  // vanishing eps leaves q m + (1 - q) d
  CHECK(s_prime_bound(1, 2, 0.5, 3, 1e-12) == doctest::Approx(0.5 * 1 + 0.5 * 2).epsilon(1e-6));
  CHECK_THROWS_AS(s_prime_bound(1, 2, 1.0, 2, 0.01), DomainError);
}
