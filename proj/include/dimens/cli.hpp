#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <json.hpp>

namespace dimens::cli {

/// FNV-1a (64 bit) of the compact dump of `config`; nlohmann::json keeps keys sorted, so the
/// dump is canonical.
std::uint64_t config_hash(const nlohmann::json& config);
std::string hex64(std::uint64_t v);

/// "# dimens <version> seed=<seed> config_hash=<hex>" without the newline.
std::string header_line(std::uint64_t seed, const nlohmann::json& config);

/// Writes through a temporary sibling file and renames it into place; the temporary is
/// removed if anything fails.
void write_atomic(const std::string& path, const std::string& content);

/// Subcommands gen, entropy, geom, scan, verify, export. Exit codes: 0 success, 1 domain
/// error, 2 configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dimens::cli
