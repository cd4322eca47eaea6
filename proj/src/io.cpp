#include "subposet/io.hpp"

#include <fstream>
#include <sstream>

#include "subposet/extremal.hpp"

namespace subposet {

Poset poset_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("covers")) {
    throw ParamError("poset file needs fields n and covers");
  }
  int n = j["n"].get<int>();
  std::vector<std::pair<int, int>> pairs;
  for (const auto& cover : j["covers"]) {
    if (!cover.is_array() || cover.size() != 2) throw ParamError("covers must be [u,v] pairs");
    pairs.emplace_back(cover[0].get<int>(), cover[1].get<int>());
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  }
  return Poset::from_relations(n, pairs, std::move(labels));
}

Json poset_to_json(const Poset& p) {
  Json j;
  j["n"] = p.size();
  j["labels"] = p.labels();
  Json covers = Json::array();
  for (auto [u, v] : hasse_covers(p)) covers.push_back(Json::array({u, v}));
  j["covers"] = std::move(covers);
  return j;
}

Poset load_poset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot open poset file: " + path);
  Json j = Json::parse(in);
  return poset_from_json(j);
}

Family family_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("sets")) {
    throw ParamError("family file needs fields n and sets");
  }
  int n = j["n"].get<int>();
  std::vector<Subset> verts;
  for (const auto& set : j["sets"]) {
    Subset s(n);
    for (const auto& e : set) s.add_element(e.get<int>());
    verts.push_back(std::move(s));
  }
  return Family::explicit_family(std::move(verts), n);
}

Json family_to_json(const Family& f) {
  Json j;
  j["n"] = f.ground_size();
  Json sets = Json::array();
  for (const auto& v : f.vertices()) sets.push_back(subset_json(v));
  j["sets"] = std::move(sets);
  return j;
}

Family load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot open family file: " + path);
  // sniff: JSON object or the compact hex form
  char first = 0;
  in >> first;
  in.seekg(0);
  if (first == '{') {
    Json j = Json::parse(in);
    return family_from_json(j);
  }
  int n;
  if (!(in >> n)) throw ParamError("compact family file must start with n");
  std::vector<Subset> verts;
  std::string line;
  std::getline(in, line);  // rest of the first line
  while (std::getline(in, line)) {
    // trim whitespace
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    verts.push_back(Subset::from_hex(n, line.substr(b, e - b + 1)));
  }
  return Family::explicit_family(std::move(verts), n);
}

Poset parse_poset_spec(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return load_poset(spec.substr(5));
  if (spec == "butterfly") return make_named_poset("butterfly");
  auto starts = [&](const char* p) { return spec.rfind(p, 0) == 0; };
  try {
    if (starts("chain")) return make_named_poset("chain", std::stoi(spec.substr(5)));
    if (starts("fork")) return make_named_poset("fork", std::stoi(spec.substr(4)));
    if (starts("v") || starts("V")) return make_named_poset("fork", std::stoi(spec.substr(1)));
    if (starts("h") || starts("H")) return make_named_poset("H_m", std::stoi(spec.substr(1)));
    if (starts("k") || starts("K")) {
      auto sep = spec.find('_');
      if (sep == std::string::npos) throw ParamError("K_rs spec looks like k2_2");
      int r = std::stoi(spec.substr(1, sep - 1));
      int s = std::stoi(spec.substr(sep + 1));
      return make_named_poset("K_rs", r, s);
    }
  } catch (const std::invalid_argument&) {
    throw ParamError("malformed poset spec: " + spec);
  }
  throw ParamError("unknown poset spec: " + spec);
}

Family parse_family_spec(const std::string& spec, int n) {
  if (spec == "all") return Family::explicit_family(all_vertices(n), n);
  if (spec.rfind("middle:", 0) == 0) return middle_levels(n, std::stoi(spec.substr(7)));
  if (spec.rfind("file:", 0) == 0) return load_family(spec.substr(5));
  throw ParamError("unknown family spec: " + spec);
}

}  // namespace subposet
