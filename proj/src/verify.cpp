#include "dimens/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "dimens/chain.hpp"
#include "dimens/entropy.hpp"
#include "dimens/error.hpp"
#include "dimens/geometry.hpp"
#include "dimens/parallel.hpp"
#include "dimens/rng.hpp"
#include "dimens/scale_stats.hpp"
#include "dimens/version.hpp"

namespace dimens {

using nlohmann::json;

namespace {

MeasureSpec lebesgue(int d, int depth) {
  MeasureSpec s;
  s.kind = MeasureKind::Lebesgue;
  s.dim = d;
  s.depth = depth;
  return s;
}

MeasureSpec point_mass(int d, int depth) {
  MeasureSpec s;
  s.kind = MeasureKind::PointMass;
  s.dim = d;
  s.depth = depth;
  const double coords[] = {0.3, 0.6, 0.45, 0.7};
  s.point.assign(coords, coords + d);
  return s;
}

MeasureSpec bernoulli(int d, int depth) {
  MeasureSpec s;
  s.kind = MeasureKind::Bernoulli;
  s.dim = d;
  s.depth = depth;
  for (std::uint32_t digit = 0; digit < (1u << d); ++digit) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) w *= ((digit >> i) & 1u) ? 0.75 : 0.25;
    s.weights.push_back(w);
  }
  return s;
}

MeasureSpec segment(int d, int depth) {
  MeasureSpec s;
  s.kind = MeasureKind::Product;
  s.dim = d;
  s.depth = depth;
  s.factors = {lebesgue(1, 0), point_mass(d - 1, 0)};
  for (int i = 0; i < d - 1; ++i) s.factors[1].point[i] = 0.3;
  return s;
}

Fixture make_fixture(std::string name, MeasureSpec spec) {
  Fixture f{std::move(name), std::move(spec), 0.0};
  f.dimension = theoretical_dimension(f.spec).value.value_or(0.0);
  return f;
}

std::vector<Point> fixture_points(const DyadicMassTree& tree, const VerifyOptions& opts) {
  std::vector<Point> pts;
  for (int j = 0; j < opts.points; ++j) pts.push_back(sample_points(tree, 1, substream(opts.seed, j)).front());
  return pts;
}

std::vector<std::unique_ptr<SymbolicChain>> fixture_chains(const MeasureSpec& spec, int length,
                                                           const VerifyOptions& opts) {
  std::shared_ptr<const DigitLaw> law = make_law(spec);
  if (!law) throw PreconditionError("fixture has no digit law");
  std::vector<std::unique_ptr<SymbolicChain>> out;
  for (int j = 0; j < opts.points; ++j) {
    Rng rng(substream(opts.seed, j));
    out.push_back(std::make_unique<SymbolicChain>(law, length, rng));
  }
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

json base_params(const VerifyOptions& opts) {
  return {{"seed", opts.seed}, {"N", opts.N}, {"points", opts.points}};
}

VerificationCase make_case(std::string suite, const Fixture& f, std::string claim, std::string expect,
                           json params) {
  VerificationCase c;
  c.suite = std::move(suite);
  c.fixture = f.name;
  c.claim = std::move(claim);
  c.expect = std::move(expect);
  params["fixture_spec"] = spec_to_json(f.spec);
  params["fixture_dimension"] = f.dimension;
  c.params = std::move(params);
  return c;
}

/// Positive cases pass on a positive statistic, controls on a vanishing one.
Outcome judge(const std::string& expect, bool positive) {
  if (expect == "positive") return positive ? Outcome::Pass : Outcome::Fail;
  if (expect == "control") return positive ? Outcome::Fail : Outcome::Pass;
  return Outcome::Inconclusive;
}

bool non_decreasing(const std::vector<double>& v, double noise) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1] - noise) return false;
  return true;
}

}  // namespace

std::vector<Fixture> fixture_ladder(int d, int depth) {
  std::vector<Fixture> out;
  out.push_back(make_fixture("point_mass", point_mass(d, depth)));
  if (d >= 2) out.push_back(make_fixture("line_segment", segment(d, depth)));
  out.push_back(make_fixture("bernoulli", bernoulli(d, depth)));
  out.push_back(make_fixture("lebesgue", lebesgue(d, depth)));
  return out;
}

Fixture porous_fixture(int a, bool alternate, int depth) {
  MeasureSpec s;
  s.kind = MeasureKind::PorousCantor;
  s.dim = 1;
  s.depth = depth;
  s.levels_per_generation = a;
  s.gap_pattern = alternate ? std::vector<bool>{true, false} : std::vector<bool>{true};
  return make_fixture("porous_cantor_a" + std::to_string(a) + (alternate ? "_alt" : ""), s);
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

json to_json(const VerificationCase& c) {
  json j = {{"suite", c.suite},   {"fixture", c.fixture},  {"claim", c.claim},
            {"expect", c.expect}, {"params", c.params},    {"stats", c.stats},
            {"outcome", outcome_name(c.outcome)}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

std::vector<std::string> suite_names() { return {"hom", "dyhom", "cone", "poro", "trap"}; }

// ---- homogeneity ------------------------------------------------------------

std::vector<VerificationCase> verify_homogeneity(const VerifyOptions& opts) {
  const int d = 2, m = 1;
  const double delta = 0.125;
  const int ap = 3;  // 2^{-3} = delta
  const int N = std::min(opts.N, opts.depth - ap);
  if (N < 1) throw PreconditionError("hom suite: depth too small for delta = 1/8");
  const std::vector<Fixture> ladder = fixture_ladder(d, opts.depth);
  std::vector<VerificationCase> cases(ladder.size());
  std::vector<double> settled(ladder.size(), 0.0);
  parallel_for(ladder.size(), [&](std::size_t i) {
    const Fixture& f = ladder[i];
    double s = 0.0;
    std::string expect = "record";
    if (f.name == "lebesgue") s = 1.5, expect = "positive";
    if (f.name == "bernoulli") s = 1.3, expect = "positive";
    if (f.name == "line_segment") s = 1.3;
    if (f.name == "point_mass") s = 0.5, expect = "control";
    json params = base_params(opts);
    params.update({{"s", s}, {"m", m}, {"delta", delta}, {"C", 5.0}, {"scales", N}, {"depth", opts.depth}});
    VerificationCase c = make_case("hom", f, "homogeneity >= delta^{-m} at a positive fraction of scales",
                                   expect, params);
    const DyadicMassTree tree = build(f.spec).tree;
    const std::vector<Point> pts = fixture_points(tree, opts);
    PredicateSpec pred;
    pred.kind = PredicateKind::Homogeneity;
    pred.m = m;
    pred.delta = delta;
    json sweep = json::array();
    double prev = -1.0, frac = 0.0, eps = 0.0;
    for (int j = 4; j <= 14; j += 2) {
      pred.eps = std::ldexp(1.0, -j);
      std::vector<double> fr;
      for (const Point& x : pts) fr.push_back(scale_fraction(tree, x, N, pred).fraction);
      frac = mean(fr);
      eps = pred.eps;
      sweep.push_back({{"eps", eps}, {"fraction", frac}, {"per_point", fr}});
      if (prev > 0.0 && std::abs(frac - prev) <= 0.02) break;
      prev = frac;
    }
    c.stats = {{"sweep", sweep}, {"eps", eps}, {"fraction", frac}};
    c.outcome = judge(expect, frac >= 0.1);
    if (expect == "record") c.note = "fixture dimension does not exceed s; statistic recorded only";
    settled[i] = frac;
    cases[i] = std::move(c);
  });
  // point mass <= bernoulli <= lebesgue
  VerificationCase t;
  t.suite = "hom";
  t.fixture = "ladder";
  t.claim = "homogeneity fraction non-decreasing in fixture dimension";
  t.expect = "positive";
  std::vector<double> order;
  for (std::size_t i = 0; i < ladder.size(); ++i)
    if (ladder[i].name != "line_segment") order.push_back(settled[i]);
  t.params = base_params(opts);
  t.stats = {{"fractions", order}, {"fixtures", {"point_mass", "bernoulli", "lebesgue"}}};
  t.outcome = non_decreasing(order, 0.05) ? Outcome::Pass : Outcome::Fail;
  cases.push_back(std::move(t));
  return cases;
}

// ---- dyadic homogeneity -----------------------------------------------------

std::vector<VerificationCase> verify_dyadic_homogeneity(const VerifyOptions& opts) {
  const int d = 1, a = 4;
  const double m = 0.5, q = 0.5;
  const double eps_c = std::ldexp(1.0, -6);
  const int N = opts.N;
  std::vector<Fixture> fixtures = fixture_ladder(d, 0);
  fixtures.push_back(porous_fixture(4, false, 0));
  const double s_prime = s_prime_bound(m, d, q, a, eps_c);
  std::vector<VerificationCase> cases(2 * fixtures.size());
  parallel_for(fixtures.size(), [&](std::size_t i) {
    const Fixture& f = fixtures[i];
    double s = 0.0;
    std::string expect = "record";
    if (f.name == "lebesgue") s = 0.9, expect = "positive";
    if (f.name == "bernoulli") s = 0.7, expect = "positive";
    if (f.name == "point_mass") s = 0.9, expect = "control";
    if (f.name.rfind("porous", 0) == 0) s = 0.7;
    const double p0 = (s - m) / (2.0 * (d - m));
    const auto chains = fixture_chains(f.spec, N + a, opts);

    json params = base_params(opts);
    params.update({{"s", s}, {"m", m}, {"a", a}, {"p0", p0}, {"route", "symbolic"}});
    VerificationCase c = make_case("dyhom", f, "dyadic homogeneity > 2^{am} at more than p0 N scales", expect, params);
    PredicateSpec pred;
    pred.kind = PredicateKind::DyadicHomogeneity;
    pred.a = a;
    pred.m = 1;
    pred.threshold = std::exp2(a * m);
    json sweep = json::array();
    double found = 0.0, found_frac = 0.0;
    for (int j = 1; j <= 12; ++j) {
      pred.eps = std::ldexp(1.0, -j);
      double worst = 1.0;
      for (const auto& ch : chains) worst = std::min(worst, scale_fraction(*ch, N, pred).fraction);
      sweep.push_back({{"eps", pred.eps}, {"min_fraction", worst}});
      if (worst > p0) {
        found = pred.eps;
        found_frac = worst;
        break;
      }
    }
    c.stats = {{"sweep", sweep}, {"eps_found", found}, {"fraction", found_frac}};
    c.outcome = judge(expect, found > 0.0);
    if (expect == "record") c.note = "fixture dimension does not exceed s; statistic recorded only";
    cases[2 * i] = std::move(c);

    // Low homogeneity at a fraction >= q of scales forces the entropy average below s'.
    json cparams = base_params(opts);
    cparams.update({{"m", m}, {"a", a}, {"q", q}, {"eps", eps_c}, {"s_prime", s_prime}, {"route", "symbolic"}});
    VerificationCase k = make_case("dyhom", f, "low-homogeneity fraction >= q implies entropy average <= s'",
                                   "positive", cparams);
    pred.eps = eps_c;
    json per = json::array();
    bool holds = true;
    int applicable = 0;
    for (const auto& ch : chains) {
      const double high = scale_fraction(*ch, N, pred).fraction;
      const double low = 1.0 - high;
      const double avg = entropy_average(*ch, a, N).last();
      const bool hit = low >= q;
      applicable += hit;
      if (hit && avg > s_prime + 1e-9) holds = false;
      per.push_back({{"low_fraction", low}, {"entropy_average", avg}});
    }
    k.stats = {{"per_point", per}, {"applicable_points", applicable}, {"dimension_below_s_prime", f.dimension < s_prime}};
    k.outcome = holds ? Outcome::Pass : Outcome::Fail;
    cases[2 * i + 1] = std::move(k);
  });
  return cases;
}

// ---- conical densities -----------------------------------------------------

namespace {

struct ConeStats {
  std::vector<std::vector<double>> per_point;  // c*(k) for k = 1..N
  double threshold = 0.0;  // largest t with fraction(c* >= t) >= 0.1 at every point
  double fraction = 0.0;   // pooled fraction of scales with c* >= threshold (0 if threshold is 0)
};

ConeStats cone_stats(const DyadicMassTree& tree, const std::vector<Point>& pts, int N, double alpha, int m,
                     int frames, std::uint64_t seed) {
  const auto cones = sample_cones(tree.dim(), m, alpha, frames, seed);
  ConeStats st;
  st.threshold = std::numeric_limits<double>::infinity();
  const int top = static_cast<int>(std::ceil(0.1 * N));
  int above = 0, total = 0;
  for (const Point& x : pts) {
    std::vector<double> cs;
    for (int k = 1; k <= N; ++k) cs.push_back(min_conical_ratio(tree, x, k, cones).ratio);
    std::vector<double> sorted = cs;
    std::sort(sorted.rbegin(), sorted.rend());
    st.threshold = std::min(st.threshold, sorted[top - 1]);
    st.per_point.push_back(std::move(cs));
  }
  for (const auto& cs : st.per_point)
    for (double v : cs) {
      ++total;
      above += st.threshold > 0.0 && v >= st.threshold;
    }
  st.fraction = total ? static_cast<double>(above) / total : 0.0;
  return st;
}

double fraction_above(const ConeStats& st, double t) {
  int above = 0, total = 0;
  for (const auto& cs : st.per_point)
    for (double v : cs) {
      ++total;
      above += v > t;
    }
  return total ? static_cast<double>(above) / total : 0.0;
}

}  // namespace

std::vector<VerificationCase> verify_conical(const VerifyOptions& opts) {
  const int d = 2, m = 1, frames = 8;
  const int N = std::min(opts.N, opts.depth);
  const std::vector<Fixture> ladder = fixture_ladder(d, opts.depth);
  std::vector<VerificationCase> cases(ladder.size());
  std::vector<double> common(ladder.size(), 0.0);
  const double common_t = 0.05;
  parallel_for(ladder.size(), [&](std::size_t i) {
    const Fixture& f = ladder[i];
    const DyadicMassTree tree = build(f.spec).tree;
    const std::vector<Point> pts = fixture_points(tree, opts);
    double s = 0.0;
    std::string expect = "control";
    if (f.name == "lebesgue") s = 1.5, expect = "positive";
    if (f.name == "bernoulli") s = 1.3, expect = "positive";
    json params = base_params(opts);
    params.update({{"s", s}, {"m", m}, {"frames", frames}, {"cones", 3 * frames}, {"depth", opts.depth}});
    VerificationCase c = make_case("cone", f, "conical ratio above a positive threshold at >= 0.1 of scales",
                                   expect, params);
    if (f.name == "line_segment") {
      json sweep = json::array();
      ConeStats last;
      for (double alpha : {0.5, 0.25, 0.1}) {
        last = cone_stats(tree, pts, N, alpha, m, frames, opts.seed);
        sweep.push_back({{"alpha", alpha}, {"threshold", last.threshold}, {"fraction", last.fraction}});
      }
      c.params["alpha"] = {0.5, 0.25, 0.1};
      c.stats = {{"sweep", sweep}};
      c.outcome = judge(expect, last.threshold > 0.0);
      c.note = "dimension equals m; the suite must fail as alpha decreases";
      common[i] = fraction_above(cone_stats(tree, pts, N, 0.5, m, frames, opts.seed), common_t);
    } else {
      const ConeStats st = cone_stats(tree, pts, N, 0.5, m, frames, opts.seed);
      c.params["alpha"] = 0.5;
      c.stats = {{"threshold", st.threshold}, {"fraction", st.fraction}, {"per_point", st.per_point}};
      c.outcome = judge(expect, st.threshold > 0.0);
      common[i] = fraction_above(st, common_t);
    }
    cases[i] = std::move(c);
  });
  VerificationCase t;
  t.suite = "cone";
  t.fixture = "ladder";
  t.claim = "conical fraction non-decreasing in fixture dimension";
  t.expect = "positive";
  std::vector<double> order;
  for (std::size_t i = 0; i < ladder.size(); ++i)
    if (ladder[i].name != "line_segment") order.push_back(common[i]);
  t.params = base_params(opts);
  t.params["threshold"] = common_t;
  t.stats = {{"fractions", order}, {"fixtures", {"point_mass", "bernoulli", "lebesgue"}}};
  t.outcome = non_decreasing(order, 0.05) ? Outcome::Pass : Outcome::Fail;
  cases.push_back(std::move(t));
  return cases;
}

// ---- porosity ---------------------------------------------------------------

std::vector<VerificationCase> verify_porosity_bound(const VerifyOptions& opts) {
  const int d = 1, ell = 1;
  const int N = opts.N;
  const int depth = std::min(26, std::max(opts.depth, N + 12));
  struct Member {
    int a;
    bool alt;
  };
  std::vector<Member> members;
  for (bool alt : {false, true})
    for (int a : {2, 3, 4}) members.push_back({a, alt});
  std::vector<VerificationCase> cases(members.size());
  std::vector<double> cstar(members.size(), 0.0), dims(members.size(), 0.0);
  std::vector<bool> certified(members.size(), false);
  parallel_for(members.size(), [&](std::size_t i) {
    const Member& mb = members[i];
    const Fixture f = porous_fixture(mb.a, mb.alt, depth);
    const double p = mb.alt ? 0.5 : 1.0;
    const double alpha = 0.5 * porous_cantor_gap(mb.a);  // 1/2 - 2^{-a}
    json params = base_params(opts);
    params.update({{"ell", ell}, {"p", p}, {"alpha", alpha}, {"eps", 0.01}, {"depth", depth}});
    VerificationCase c = make_case("poro", f, "certified mean porosity and the dimension bound", "positive", params);
    const DyadicMassTree tree = build(f.spec).tree;
    const std::vector<Point> pts = fixture_points(tree, opts);
    PorosityParams pp;
    pp.ell = ell;
    pp.eps = 0.01;
    pp.frames = 0;
    pp.seed = opts.seed;
    int good = 0, total = 0;
    std::vector<double> dyadic;
    json rhos = json::array();
    for (const Point& x : pts) {
      std::vector<double> r;
      for (int k = 1; k <= N; ++k) {
        r.push_back(porosity_search(tree, x, std::ldexp(1.0, -k), pp).rho);
        good += r.back() >= alpha - 0.05;
        ++total;
      }
      rhos.push_back(r);
      dyadic.push_back(dyadic_upper_dim(tree, x, depth));
    }
    const double frac = static_cast<double>(good) / total;
    certified[i] = frac >= 0.95 * p;
    dims[i] = f.dimension;
    cstar[i] = (f.dimension - d + p * ell) * std::log2(1.0 / (1.0 - 2.0 * alpha));
    const PorosityBound b = porosity_bounds(d, ell, p, alpha, cstar[i]);
    c.stats = {{"certified_fraction", frac}, {"rho", rhos},         {"dimension", f.dimension},
               {"dyadic_dim", dyadic},       {"c_star", cstar[i]}, {"bound", b.bound}};
    c.outcome = certified[i] ? Outcome::Pass : Outcome::Inconclusive;
    if (!certified[i]) c.note = "porosity certification failed";
    cases[i] = std::move(c);
  });
  for (bool alt : {false, true}) {
    VerificationCase t;
    t.suite = "poro";
    t.fixture = alt ? "porous_cantor_alt_family" : "porous_cantor_family";
    t.claim = "c*(alpha) bounded across the family and dim decreasing toward d - p ell";
    t.expect = "positive";
    std::vector<double> cs, ds;
    bool all_cert = true;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i].alt == alt) {
        cs.push_back(cstar[i]);
        ds.push_back(dims[i]);
        all_cert = all_cert && certified[i];
      }
    const double p = alt ? 0.5 : 1.0;
    const double ratio = *std::max_element(cs.begin(), cs.end()) / *std::min_element(cs.begin(), cs.end());
    bool decreasing = true;
    for (std::size_t j = 1; j < ds.size(); ++j) decreasing = decreasing && ds[j] < ds[j - 1];
    t.params = base_params(opts);
    t.params.update({{"a", {2, 3, 4}}, {"p", p}, {"limit", d - p * ell}});
    t.stats = {{"c_star", cs}, {"dimensions", ds}, {"c_star_ratio", ratio}, {"decreasing", decreasing}};
    if (!all_cert) {
      t.outcome = Outcome::Inconclusive;
      t.note = "a family member failed porosity certification";
    } else {
      t.outcome = ratio <= 3.0 && decreasing ? Outcome::Pass : Outcome::Fail;
    }
    cases.push_back(std::move(t));
  }
  // Set porosity of a point mass: two holes of radius r/2 touching at x.
  {
    const Fixture f = make_fixture("point_mass", point_mass(1, depth));
    VerificationCase c = make_case("poro", f, "set porosity of a point mass is 1/2", "positive", base_params(opts));
    const DyadicMassTree tree = build(f.spec).tree;
    const Point x = sample_points(tree, 1, opts.seed).front();
    PorosityParams pp;
    pp.mode = PorosityMode::Set;
    pp.frames = 0;
    std::vector<double> r;
    bool all_half = true;
    for (int k = 1; k <= N; ++k) {
      r.push_back(porosity_search(tree, x, std::ldexp(1.0, -k), pp).rho);
      // the supremum 1/2 is not attained by closed holes, so allow one bisection step
      all_half = all_half && std::abs(r.back() - 0.5) <= std::ldexp(0.5, -pp.bisection_steps);
    }
    c.stats = {{"rho", r}};
    c.outcome = all_half ? Outcome::Pass : Outcome::Fail;
    cases.push_back(std::move(c));
  }
  return cases;
}

// ---- trapped cubes ----------------------------------------------------------

std::vector<VerificationCase> verify_trapped_fraction(const VerifyOptions& opts) {
  const int d = 2, m = 1, a = 5, frames = 16;
  const double alpha = 0.5, eps = std::ldexp(1.0, -14);
  const int N = opts.N;
  std::vector<Fixture> fixtures;
  for (Fixture& f : fixture_ladder(d, 0))
    if (f.name != "line_segment") fixtures.push_back(std::move(f));
  std::vector<VerificationCase> cases(fixtures.size());
  parallel_for(fixtures.size(), [&](std::size_t i) {
    const Fixture& f = fixtures[i];
    const std::string expect = f.name == "point_mass" ? "control" : "positive";
    json params = base_params(opts);
    params.update({{"m", m}, {"a", a}, {"alpha", alpha}, {"eps", eps}, {"frames", frames}, {"route", "symbolic"}});
    VerificationCase c = make_case("trap", f, "trapped chain cubes at a positive, N-stable fraction", expect, params);
    const auto chains = fixture_chains(f.spec, 2 * N + a, opts);
    PredicateSpec pred;
    pred.kind = PredicateKind::Trapped;
    pred.a = a;
    pred.m = m;
    pred.alpha = alpha;
    pred.eps = eps;
    pred.frames = frames;
    pred.seed = opts.seed;
    std::vector<double> fN, f2N;
    for (const auto& ch : chains) {
      const ScaleRow row = scale_fraction(*ch, 2 * N, pred);
      int first = 0;
      for (int k = 0; k < N; ++k) first += row.values[k];
      fN.push_back(static_cast<double>(first) / N);
      f2N.push_back(row.fraction);
    }
    const double a1 = mean(fN), a2 = mean(f2N);
    c.stats = {{"fraction_N", a1}, {"fraction_2N", a2}, {"per_point_N", fN}, {"per_point_2N", f2N}};
    if (expect == "positive") c.outcome = a1 > 0.0 && a2 > 0.0 && std::abs(a2 - a1) <= 0.15 ? Outcome::Pass : Outcome::Fail;
    else c.outcome = a1 == 0.0 && a2 == 0.0 ? Outcome::Pass : Outcome::Fail;
    cases[i] = std::move(c);
  });
  return cases;
}

std::vector<VerificationCase> run_suite(const std::string& suite, const VerifyOptions& opts) {
  if (opts.N < 1 || opts.points < 1) throw DomainError("verify: N and points must be positive");
  if (suite == "hom") return verify_homogeneity(opts);
  if (suite == "dyhom") return verify_dyadic_homogeneity(opts);
  if (suite == "cone") return verify_conical(opts);
  if (suite == "poro") return verify_porosity_bound(opts);
  if (suite == "trap") return verify_trapped_fraction(opts);
  if (suite == "all") {
    std::vector<VerificationCase> all;
    for (const std::string& s : suite_names()) {
      auto part = run_suite(s, opts);
      all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return all;
  }
  throw ConfigError("unknown suite '" + suite + "' (expected hom, dyhom, cone, poro, trap or all)");
}

json verify_report(const std::string& suite, const VerifyOptions& opts, const std::vector<VerificationCase>& cases) {
  json j;
  j["tool"] = "dimens";
  j["version"] = kVersion;
  j["suite"] = suite;
  j["options"] = {{"depth", opts.depth}, {"N", opts.N}, {"seed", opts.seed}, {"points", opts.points}};
  json arr = json::array();
  int counts[3] = {0, 0, 0};
  for (const VerificationCase& c : cases) {
    arr.push_back(to_json(c));
    ++counts[static_cast<int>(c.outcome)];
  }
  j["cases"] = arr;
  j["summary"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"inconclusive", counts[2]}};
  return j;
}

}  // namespace dimens
