#include "subposet/report.hpp"

#include <sstream>

namespace subposet {

Json config_json(const RunConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["workers"] = cfg.workers;
  j["format"] = cfg.format;
  if (cfg.band_override) {
    j["band"] = Json::array({cfg.band_override->lo, cfg.band_override->hi});
  } else {
    j["band"] = "default";
  }
  j["node_limit"] = cfg.node_limit;
  j["time_limit_ms"] = cfg.time_limit_ms;
  j["chain_cap"] = cfg.chain_cap;
  return j;
}

Json report_skeleton(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["tool"] = "subposet";
  j["version"] = SUBPOSET_VERSION;
  j["command"] = command;
  j["config"] = config_json(cfg);
  j["rows"] = Json::array();
  return j;
}

namespace {

void flatten(const Json& value, const std::string& prefix, Json& out) {
  if (value.is_object()) {
    for (auto it = value.begin(); it != value.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      flatten(value[i], prefix + "." + std::to_string(i), out);
    }
  } else {
    out[prefix] = value;
  }
}

std::string cell_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string report_to_csv(const Json& report) {
  std::ostringstream out;
  if (!report.contains("rows") || report["rows"].empty()) return "";
  std::vector<Json> flat;
  for (const auto& row : report["rows"]) {
    Json f;
    flatten(row, "", f);
    flat.push_back(std::move(f));
  }
  bool first = true;
  for (auto it = flat.front().begin(); it != flat.front().end(); ++it) {
    if (!first) out << ",";
    out << it.key();
    first = false;
  }
  out << "\n";
  for (const auto& row : flat) {
    first = true;
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (!first) out << ",";
      std::string cell = cell_text(it.value());
      if (cell.find(',') != std::string::npos || cell.find('"') != std::string::npos) {
        std::string quoted = "\"";
        for (char c : cell) {
          if (c == '"') quoted += '"';
          quoted += c;
        }
        quoted += "\"";
        cell = quoted;
      }
      out << cell;
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

std::string render_report(const Json& report, const std::string& format) {
  if (format == "csv") return report_to_csv(report);
  return report.dump(2) + "\n";
}

Json subset_json(const Subset& s) {
  Json arr = Json::array();
  for (int e : s.elements()) arr.push_back(e);
  return arr;
}

}  // namespace subposet
