#pragma once

#include <string>

#include "subposet/poset.hpp"
#include "subposet/report.hpp"

namespace subposet {

/// Poset files: {"n": int, "labels": [string...], "covers": [[u,v]...]} with
/// 0-based element indices. Covers are closed and validated on load.
Poset poset_from_json(const Json& j);
Json poset_to_json(const Poset& p);
Poset load_poset(const std::string& path);

/// Family files. JSON form: {"n": int, "sets": [[e,...]...]} with 1-based
/// ground-set elements. Compact form: first line n, then one hex-encoded
/// vertex per line.
Family family_from_json(const Json& j);
Json family_to_json(const Family& f);
Family load_family(const std::string& path);

/// Parse CLI poset specs: chainK, forkK / vK, butterfly, kR_S, hM, file:PATH.
Poset parse_poset_spec(const std::string& spec);

/// Parse CLI family specs: "middle:t" (needs n), "all", "file:PATH".
Family parse_family_spec(const std::string& spec, int n);

}  // namespace subposet
