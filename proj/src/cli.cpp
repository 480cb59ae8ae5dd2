#include "dimens/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>

#include "dimens/chain.hpp"
#include "dimens/entropy.hpp"
#include "dimens/error.hpp"
#include "dimens/geometry.hpp"
#include "dimens/measure.hpp"
#include "dimens/parallel.hpp"
#include "dimens/rng.hpp"
#include "dimens/scale_stats.hpp"
#include "dimens/verify.hpp"
#include "dimens/version.hpp"

namespace dimens::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t config_hash(const json& config) { return fnv1a(config.dump()); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string header_line(std::uint64_t seed, const json& config) {
  return std::string("# dimens ") + kVersion + " seed=" + std::to_string(seed) +
         " config_hash=" + hex64(config_hash(config));
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw ConfigError("cannot open '" + path + "' for writing");
      os << content;
      os.flush();
      if (!os) throw ConfigError("write to '" + path + "' failed");
    }
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

namespace {

/// Outputs of one command, committed together so that a failure leaves none behind.
class Outputs {
 public:
  void add(std::string path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }
  void commit(std::ostream& out) {
    std::vector<std::string> done;
    try {
      for (const auto& [path, content] : files_) {
        if (path.empty() || path == "-") {
          out << content;
          continue;
        }
        write_atomic(path, content);
        done.push_back(path);
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& p : done) fs::remove(p, ec);
      throw;
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

Point parse_point(const std::string& s) {
  Point p;
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    double v = 0.0;
    auto r = std::from_chars(s.data() + i, s.data() + j, v);
    if (r.ec != std::errc() || r.ptr != s.data() + j) throw ConfigError("bad point '" + s + "'");
    p.push_back(v);
    i = j + 1;
  }
  return p;
}

/// Measure input shared by the analysis commands: a tree file or a spec file.
struct Input {
  std::string tree_path;
  std::string spec_path;
  int depth = 0;

  void attach(CLI::App* app) {
    app->add_option("--tree", tree_path, "tree file written by gen");
    app->add_option("--spec", spec_path, "measure spec (JSON)");
    app->add_option("--depth", depth, "tree depth when building from --spec");
  }

  json config() const {
    if (!tree_path.empty()) return {{"tree_fnv1a", hex64(fnv1a(read_file(tree_path)))}};
    MeasureSpec s = spec();
    return {{"spec", spec_to_json(s)}, {"depth", effective_depth(s)}};
  }

  MeasureSpec spec() const {
    if (spec_path.empty()) throw ConfigError("a measure spec is required (--spec)");
    MeasureSpec s = spec_from_json(read_json(spec_path));
    if (depth > 0) s.depth = depth;
    return s;
  }

  DyadicMassTree tree(std::ostream& err) const {
    if (!tree_path.empty() && !spec_path.empty()) throw ConfigError("give either --tree or --spec, not both");
    if (!tree_path.empty()) {
      std::istringstream is(read_file(tree_path));
      return read_tree(is);
    }
    BuiltMeasure b = build(spec());
    for (const auto& w : b.warnings) err << "warning: " << w << '\n';
    return std::move(b.tree);
  }
};

std::vector<Point> choose_points(const DyadicMassTree& tree, const std::string& point, int n, std::uint64_t seed) {
  if (!point.empty()) {
    Point p = parse_point(point);
    if (static_cast<int>(p.size()) != tree.dim()) throw ConfigError("--point has the wrong dimension");
    return {p};
  }
  if (n < 1) throw ConfigError("--points must be positive");
  std::vector<Point> pts;
  for (int j = 0; j < n; ++j) pts.push_back(sample_points(tree, 1, substream(seed, j)).front());
  return pts;
}

PredicateSpec predicate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("each predicate needs a \"kind\"");
  PredicateSpec p;
  p.kind = predicate_from_name(j.at("kind").get<std::string>());
  p.a = j.value("a", p.a);
  p.K = j.value("K", p.K);
  p.c = j.value("c", p.c);
  p.p = j.value("p", p.p);
  p.eps = j.value("eps", p.eps);
  p.alpha = j.value("alpha", p.alpha);
  p.ell = j.value("ell", p.ell);
  p.m = j.value("m", p.m);
  p.delta = j.value("delta", p.delta);
  p.threshold = j.value("threshold", p.threshold);
  p.frames = j.value("frames", p.frames);
  p.seed = j.value("seed", p.seed);
  return p;
}

json point_json(const Point& p) { return json(p); }

std::string point_cell(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + fmt(p[i]);
  return s;
}

// ---- subcommands ----------------------------------------------------------

struct GenCmd {
  Input in;
  std::string out;
  std::uint64_t seed = 0;

  void run(Outputs& o, std::ostream& err) {
    MeasureSpec s = in.spec();
    if (s.kind == MeasureKind::Cascade && s.seed == 0) s.seed = seed;
    const json config = {{"command", "gen"}, {"spec", spec_to_json(s)}, {"depth", effective_depth(s)}, {"seed", seed}};
    BuiltMeasure b = build(s);
    for (const auto& w : b.warnings) err << "warning: " << w << '\n';
    std::ostringstream os;
    write_tree(os, b.tree,
               std::string("version=") + kVersion + " seed=" + std::to_string(seed) +
                   " config_hash=" + hex64(config_hash(config)));
    o.add(out, os.str());
  }
};

struct EntropyCmd {
  Input in;
  std::string out = "-";
  std::uint64_t seed = 0;
  int a = 1;
  int N = 0;
  int points = 10;
  bool symbolic = false;

  void run(Outputs& o, std::ostream& err) {
    json config = {{"command", "entropy"}, {"input", in.config()}, {"a", a}, {"N", N},
                   {"points", points},     {"seed", seed},        {"symbolic", symbolic}};
    std::vector<EntropyProfile> profs(points);
    if (symbolic) {
      if (N < 1) throw ConfigError("--N is required with --symbolic");
      std::shared_ptr<const DigitLaw> law = make_law(in.spec());
      if (!law) throw DomainError("this measure has no digit law; use a tree");
      parallel_for(points, [&](std::size_t j) {
        Rng rng(substream(seed, j));
        SymbolicChain ch(law, N + a, rng);
        profs[j] = entropy_average(ch, a, N);
        profs[j].x = ch.point();
      });
    } else {
      const DyadicMassTree tree = in.tree(err);
      const int n = N > 0 ? N : tree.depth() - a;
      config["N"] = n;
      const std::vector<Point> pts = choose_points(tree, "", points, seed);
      parallel_for(pts.size(), [&](std::size_t j) { profs[j] = entropy_average(tree, pts[j], a, n); });
    }
    if (out.size() >= 5 && out.substr(out.size() - 5) == ".json") {
      json j = {{"kind", "entropy_profile"}, {"version", kVersion},   {"seed", seed},
                {"config", config},          {"config_hash", hex64(config_hash(config))}};
      json arr = json::array();
      for (const auto& p : profs)
        arr.push_back({{"x", p.x}, {"a", p.a}, {"terms", p.terms}, {"averages", p.averages}, {"truncated", p.truncated}});
      j["profiles"] = arr;
      o.add(out, j.dump(2) + "\n");
      return;
    }
    std::string csv = header_line(seed, config) + "\npoint,x,k,term,average\n";
    for (std::size_t j = 0; j < profs.size(); ++j)
      for (std::size_t k = 0; k < profs[j].terms.size(); ++k)
        csv += std::to_string(j) + "," + point_cell(profs[j].x) + "," + std::to_string(k + 1) + "," +
               fmt(profs[j].terms[k]) + "," + fmt(profs[j].averages[k]) + "\n";
    o.add(out, csv);
  }
};

struct GeomCmd {
  Input in;
  std::string out = "-";
  std::uint64_t seed = 0;
  std::string what;
  std::string point;
  int points = 1;
  int k = 2;
  int a = 0;
  int m = 1;
  int ell = 1;
  int frames = 8;
  double alpha = 0.25;
  double eps = 0.01;
  double delta = 0.125;
  std::string mode = "measure";

  void run(Outputs& o, std::ostream& err) {
    json config = {{"command", "geom"}, {"input", in.config()}, {"what", what},     {"point", point},
                   {"points", points},  {"k", k},               {"a", a},           {"m", m},
                   {"ell", ell},        {"frames", frames},     {"alpha", alpha},   {"eps", eps},
                   {"delta", delta},    {"mode", mode},         {"seed", seed}};
    if (mode != "measure" && mode != "set") throw ConfigError("--mode must be 'measure' or 'set'");
    if (what == "porosity" || what == "porous" || what == "decompose") a_of_alpha(alpha);
    const DyadicMassTree tree = in.tree(err);
    const std::vector<Point> pts = choose_points(tree, point, points, seed);
    json results = json::array();
    for (const Point& x : pts) {
      json r = {{"x", point_json(x)}};
      if (what == "cone") {
        const ConicalRatio c = min_conical_ratio(tree, x, k, alpha, m, frames, seed);
        r.update({{"ratio", c.ratio}, {"denominator", c.denominator}, {"cones", c.cones}});
      } else if (what == "hom") {
        r["homogeneity"] = euclidean_homogeneity(tree, x, k, delta, eps);
      } else if (what == "dyhom") {
        r["dyadic_homogeneity"] = dyadic_homogeneity(tree, x, k, a > 0 ? a : 1, eps);
      } else if (what == "porosity") {
        PorosityParams pp;
        pp.ell = ell;
        pp.mode = mode == "set" ? PorosityMode::Set : PorosityMode::Measure;
        pp.eps = eps;
        pp.frames = frames;
        pp.seed = seed;
        const PorosityResult res = porosity_search(tree, x, std::ldexp(1.0, -k), pp);
        r.update({{"rho", res.rho}, {"holes", res.holes.centers}, {"exceeds_alpha", res.rho > alpha}});
      } else if (what == "porous" || what == "decompose" || what == "trapped") {
        const int aa = a > 0 ? a : (what == "trapped" ? 4 : a_of_alpha(alpha));
        const DyadicCube q = cube_of_point(x, k);
        r["cube"] = {{"level", q.level}, {"index", q.index}};
        r["a"] = aa;
        if (what == "decompose") {
          const Decomposition dcp = decompose_EPJ(tree, q, aa, {alpha, eps, ell, frames, seed});
          r.update({{"mass_E", dcp.mass_E}, {"mass_P", dcp.mass_P}, {"mass_J", dcp.mass_J}, {"mass_3Q", dcp.mass_3Q},
                    {"c0", dcp.c0}, {"bound_holds", dcp.bound_holds}, {"porous_children", dcp.porous_children},
                    {"cover_count", dcp.cover_count}, {"c1", dcp.c1}, {"partition_exact", dcp.partition_exact}});
        } else {
          const CubeLabeling lab = what == "porous" ? label_porous(tree, q, aa, {alpha, eps, ell, frames, seed})
                                                    : label_trapped(tree, q, aa, {alpha, eps, m, frames, seed});
          r.update({{"labeled", lab.labeled.size()}, {"children", lab.labels.size()}, {"zero_parent", lab.zero_parent}});
        }
      } else {
        throw ConfigError("unknown --what '" + what + "'");
      }
      results.push_back(r);
    }
    json j = {{"kind", "geom"}, {"version", kVersion}, {"seed", seed}, {"config", config},
              {"config_hash", hex64(config_hash(config))}, {"results", results}};
    o.add(out, j.dump(2) + "\n");
  }
};

struct ScanCmd {
  Input in;
  std::string out = "-";
  std::string predicates;
  std::uint64_t seed = 0;
  int points = 10;
  int N = 0;

  void run(Outputs& o, std::ostream& err) {
    const json pj = read_json(predicates);
    if (!pj.is_array()) throw ConfigError("--predicates must hold a JSON array");
    std::vector<PredicateSpec> preds;
    for (const json& p : pj) preds.push_back(predicate_from_json(p));
    const json config = {{"command", "scan"}, {"input", in.config()}, {"predicates", pj},
                         {"points", points},  {"N", N},               {"seed", seed}};
    const DyadicMassTree tree = in.tree(err);
    const std::vector<Point> pts = choose_points(tree, "", points, seed);
    std::vector<ScaleReport> reps(pts.size());
    parallel_for(pts.size(), [&](std::size_t j) { reps[j] = scale_report(tree, pts[j], N, preds); });
    std::string csv = header_line(seed, config) + "\npoint,x,predicate,N,count,fraction,truncated,values\n";
    for (std::size_t j = 0; j < reps.size(); ++j)
      for (const ScaleRow& r : reps[j].rows) {
        std::string bits;
        for (bool b : r.values) bits += b ? '1' : '0';
        csv += std::to_string(j) + "," + point_cell(reps[j].x) + "," + r.name + "," + std::to_string(N) + "," +
               std::to_string(r.count) + "," + fmt(r.fraction) + "," + (r.truncated ? "1" : "0") + "," + bits + "\n";
      }
    o.add(out, csv);
  }
};

struct VerifyCmd {
  std::string suite = "all";
  std::string out = "-";
  VerifyOptions opts;

  void run(Outputs& o, std::ostream&) {
    const json config = {{"command", "verify"}, {"suite", suite},  {"depth", opts.depth},
                         {"N", opts.N},         {"seed", opts.seed}, {"points", opts.points}};
    const auto cases = run_suite(suite, opts);
    json j = verify_report(suite, opts, cases);
    j["kind"] = "verify_report";
    j["seed"] = opts.seed;
    j["config"] = config;
    j["config_hash"] = hex64(config_hash(config));
    o.add(out, j.dump(2) + "\n");
  }
};

struct ExportCmd {
  std::string report;
  std::string out_dir = ".";

  void run(Outputs& o, std::ostream&) {
    const json r = read_json(report);
    const std::string head = std::string("# dimens ") + kVersion + " seed=" + std::to_string(r.value("seed", 0ull)) +
                             " config_hash=" + r.value("config_hash", std::string("none")) + "\n";
    const std::string kind = r.value("kind", std::string());
    auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };
    if (kind == "entropy_profile") {
      std::string csv = head + "point,N,average\n";
      const json& profs = r.contains("profiles") ? r.at("profiles") : json::array();
      for (std::size_t j = 0; j < profs.size(); ++j) {
        const auto& av = profs[j].at("averages");
        for (std::size_t n = 0; n < av.size(); ++n)
          csv += std::to_string(j) + "," + std::to_string(n + 1) + "," + fmt(av[n].get<double>()) + "\n";
      }
      o.add(path("entropy_average.csv"), csv);
    } else if (kind == "verify_report") {
      std::string fr = head + "suite,fixture,expect,outcome,fraction\n";
      std::string po = head + "fixture,a,alpha,p,dimension,c_star,certified_fraction\n";
      const json& cases = r.contains("cases") ? r.at("cases") : json::array();
      for (const json& c : cases) {
        const json& st = c.at("stats");
        const char* keys[] = {"fraction", "fraction_N"};
        for (const char* k : keys)
          if (st.contains(k)) {
            fr += c.at("suite").get<std::string>() + "," + c.at("fixture").get<std::string>() + "," +
                  c.at("expect").get<std::string>() + "," + c.at("outcome").get<std::string>() + "," +
                  fmt(st.at(k).get<double>()) + "\n";
            break;
          }
        if (c.at("suite") == "poro" && st.contains("certified_fraction")) {
          const json& p = c.at("params");
          po += c.at("fixture").get<std::string>() + "," +
                std::to_string(p.at("fixture_spec").value("levels_per_generation", 0)) + "," +
                fmt(p.at("alpha").get<double>()) + "," + fmt(p.at("p").get<double>()) + "," +
                fmt(st.at("dimension").get<double>()) + "," + fmt(st.at("c_star").get<double>()) + "," +
                fmt(st.at("certified_fraction").get<double>()) + "\n";
        }
      }
      o.add(path("fractions.csv"), fr);
      o.add(path("porosity_family.csv"), po);
    } else {
      throw ConfigError("report kind '" + kind + "' cannot be exported");
    }
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"dimens: dimension, entropy and porosity statistics of dyadic measures"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenCmd gen;
  auto* g = app.add_subcommand("gen", "build a measure and write its tree");
  gen.in.attach(g);
  g->add_option("--out", gen.out, "tree file")->required();
  g->add_option("--seed", gen.seed, "seed");

  EntropyCmd ent;
  auto* e = app.add_subcommand("entropy", "local entropy averages at sampled points");
  ent.in.attach(e);
  e->add_option("--a", ent.a, "refinement a");
  e->add_option("--N", ent.N, "horizon (default depth - a)");
  e->add_option("--points", ent.points, "number of sampled points");
  e->add_option("--seed", ent.seed, "seed");
  e->add_flag("--symbolic", ent.symbolic, "draw chains from the digit law instead of a tree");
  e->add_option("--out", ent.out, "CSV, or JSON when the name ends in .json");

  GeomCmd geo;
  auto* gm = app.add_subcommand("geom", "cones, homogeneity, porosity and cube labels");
  geo.in.attach(gm);
  gm->add_option("--what", geo.what, "cone | hom | dyhom | porosity | porous | trapped | decompose")->required();
  gm->add_option("--point", geo.point, "comma separated coordinates");
  gm->add_option("--points", geo.points, "sampled points when --point is absent");
  gm->add_option("--k", geo.k, "scale level, r = 2^-k");
  gm->add_option("--a", geo.a, "refinement a");
  gm->add_option("--m", geo.m, "cone codimension parameter m");
  gm->add_option("--ell", geo.ell, "number of orthogonal holes");
  gm->add_option("--frames", geo.frames, "random frames");
  gm->add_option("--alpha", geo.alpha, "aperture or porosity level");
  gm->add_option("--eps", geo.eps, "mass threshold");
  gm->add_option("--delta", geo.delta, "packing radius ratio");
  gm->add_option("--mode", geo.mode, "porosity mode: measure | set");
  gm->add_option("--seed", geo.seed, "seed");
  gm->add_option("--out", geo.out, "JSON output");

  ScanCmd scan;
  auto* sc = app.add_subcommand("scan", "scale fractions of predicates at sampled points");
  scan.in.attach(sc);
  sc->add_option("--predicates", scan.predicates, "JSON array of predicates")->required();
  sc->add_option("--points", scan.points, "number of sampled points");
  sc->add_option("--N", scan.N, "horizon")->required();
  sc->add_option("--seed", scan.seed, "seed");
  sc->add_option("--out", scan.out, "CSV output");

  VerifyCmd ver;
  auto* v = app.add_subcommand("verify", "dimension bound verification suites");
  v->add_option("--suite", ver.suite, "hom | dyhom | cone | poro | trap | all");
  v->add_option("--depth", ver.opts.depth, "tree depth");
  v->add_option("--N", ver.opts.N, "horizon");
  v->add_option("--seed", ver.opts.seed, "seed");
  v->add_option("--points", ver.opts.points, "points per fixture");
  v->add_option("--out", ver.out, "JSON report");

  ExportCmd exp;
  auto* x = app.add_subcommand("export", "plot-ready CSV files from a report");
  x->add_option("--report", exp.report, "entropy JSON or verify report")->required();
  x->add_option("--out-dir", exp.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Outputs o;
    if (*g) gen.run(o, err);
    else if (*e) ent.run(o, err);
    else if (*gm) geo.run(o, err);
    else if (*sc) scan.run(o, err);
    else if (*v) ver.run(o, err);
    else if (*x) exp.run(o, err);
    o.commit(out);
    return 0;
  } catch (const ConfigError& ex) {
    err << "configuration error: " << ex.what() << '\n';
    return 2;
  } catch (const json::exception& ex) {
    err << "configuration error: " << ex.what() << '\n';
    return 2;
  } catch (const DomainError& ex) {
    err << "domain error: " << ex.what() << '\n';
    return 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
}

}  // namespace dimens::cli
