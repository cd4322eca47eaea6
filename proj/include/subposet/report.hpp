#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

#include "subposet/lattice.hpp"
#include "subposet/numbers.hpp"

namespace subposet {

using Json = nlohmann::ordered_json;

#ifndef SUBPOSET_VERSION
#define SUBPOSET_VERSION "0.0.0-unversioned"
#endif

/// Effective run configuration; echoed verbatim into every report header so a
/// report identifies the run that produced it.
struct RunConfig {
  std::uint64_t seed = 1;
  std::uint64_t trials = 10000;
  int workers = 1;
  std::string format = "json";  // json | csv
  std::optional<Band> band_override;
  std::uint64_t node_limit = 50'000'000;
  std::int64_t time_limit_ms = 0;
  int chain_cap = kChainEnumCap;

  Band band_for(int n) const { return band_override ? *band_override : band_bounds(n); }
};

Json config_json(const RunConfig& cfg);

Json report_skeleton(const std::string& command, const RunConfig& cfg);

/// Flatten a report's `rows` into CSV with dotted column names. JSON stays the
/// canonical format; CSV is a convenience projection.
std::string report_to_csv(const Json& report);

std::string render_report(const Json& report, const std::string& format);

Json subset_json(const Subset& s);

}  // namespace subposet
