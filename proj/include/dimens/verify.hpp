#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimens/measure.hpp"

namespace dimens {

struct Fixture {
  std::string name;
  MeasureSpec spec;
  double dimension = 0.0;
};

/// The standard ladder in dimension d: point mass, line segment (d >= 2), Bernoulli(1/4,3/4)
/// in every coordinate, Lebesgue.
std::vector<Fixture> fixture_ladder(int d, int depth);

/// Keep-2-of-2^a porous Cantor measures on [0,1); `alternate` inserts a full generation
/// after every gap generation.
Fixture porous_fixture(int a, bool alternate, int depth);

struct VerifyOptions {
  int depth = 12;
  int N = 10;
  std::uint64_t seed = 0;
  int points = 5;  // points per fixture, drawn with substreams 0..points-1 of seed
};

enum class Outcome { Pass, Fail, Inconclusive };

std::string outcome_name(Outcome o);

struct VerificationCase {
  std::string suite;
  std::string fixture;
  std::string claim;
  std::string expect;  // "positive", "control" or "record"
  nlohmann::json params;
  nlohmann::json stats;
  Outcome outcome = Outcome::Inconclusive;
  std::string note;
};

nlohmann::json to_json(const VerificationCase& c);

std::vector<std::string> suite_names();  // hom, dyhom, cone, poro, trap

/// Runs one suite, or every suite for "all". Throws ConfigError on unknown names.
std::vector<VerificationCase> run_suite(const std::string& suite, const VerifyOptions& opts);

std::vector<VerificationCase> verify_homogeneity(const VerifyOptions& opts);
std::vector<VerificationCase> verify_dyadic_homogeneity(const VerifyOptions& opts);
std::vector<VerificationCase> verify_conical(const VerifyOptions& opts);
std::vector<VerificationCase> verify_porosity_bound(const VerifyOptions& opts);
std::vector<VerificationCase> verify_trapped_fraction(const VerifyOptions& opts);

/// Report document: options, cases in suite order and pass/fail/inconclusive counts.
nlohmann::json verify_report(const std::string& suite, const VerifyOptions& opts,
                             const std::vector<VerificationCase>& cases);

}  // namespace dimens
