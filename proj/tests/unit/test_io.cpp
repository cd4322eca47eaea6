#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "subposet/io.hpp"

using namespace subposet;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "/tmp/subposet_io_test_" + std::to_string(counter++) + ".txt";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("poset json round trip") {
  Poset p = make_named_poset("fork", 2);
  Json j = poset_to_json(p);
  CHECK(j["n"] == 3);
  CHECK(j["covers"].size() == 2);
  Poset q = poset_from_json(j);
  CHECK(q == p);
  CHECK(q.label(0) == "A");
}

TEST_CASE("poset file validation") {
  TempFile bad("{\"n\": 2, \"covers\": [[0,1],[1,0]]}");
  CHECK_THROWS_AS(load_poset(bad.path), CycleError);
  TempFile incomplete("{\"n\": 2}");
  CHECK_THROWS_AS(load_poset(incomplete.path), ParamError);
  // covers get closed on load
  TempFile chain("{\"n\": 3, \"covers\": [[0,1],[1,2]]}");
  Poset p = load_poset(chain.path);
  CHECK(p.less(0, 2));
}

TEST_CASE("family json and hex forms") {
  TempFile jf("{\"n\": 4, \"sets\": [[1,2],[3],[1,2]]}");
  Family f = load_family(jf.path);
  CHECK(f.size() == 2);  // duplicates collapse
  CHECK(f.contains(Subset::of(4, {1, 2})));
  CHECK(f.contains(Subset::of(4, {3})));

  // compact form: n, then one hex mask per line ({1,2} = 0x3, {3} = 0x4)
  TempFile hex("4\n3\n4\n");
  Family g = load_family(hex.path);
  CHECK(g.size() == 2);
  CHECK(g.contains(Subset::of(4, {1, 2})));
  CHECK(g.contains(Subset::of(4, {3})));

  Json back = family_to_json(g);
  CHECK(back["sets"].size() == 2);
}

TEST_CASE("cli spec strings") {
  CHECK(parse_poset_spec("chain3").size() == 3);
  CHECK(parse_poset_spec("v2").size() == 3);
  CHECK(parse_poset_spec("fork4").size() == 5);
  CHECK(parse_poset_spec("butterfly").size() == 4);
  CHECK(parse_poset_spec("k2_2").size() == 4);
  CHECK(parse_poset_spec("h3").size() == 6);
  CHECK_THROWS_AS(parse_poset_spec("pentagon"), ParamError);

  CHECK(parse_family_spec("middle:2", 4).size() == 10);
  CHECK(parse_family_spec("all", 3).size() == 8);
  CHECK_THROWS_AS(parse_family_spec("nope", 4), ParamError);
}

TEST_CASE("csv flattening") {
  Json report;
  report["rows"] = Json::array();
  Json row;
  row["a"] = 1;
  row["nested"]["b"] = "x,y";
  report["rows"].push_back(row);
  std::string csv = report_to_csv(report);
  CHECK(csv == "a,nested.b\n1,\"x,y\"\n");
}

TEST_SUITE_END();
