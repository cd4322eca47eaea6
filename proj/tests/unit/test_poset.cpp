#include <doctest.h>

#include <algorithm>

#include "subposet/poset.hpp"
#include "test_helpers.hpp"

using namespace subposet;
using subposet::testing::random_tree_poset;

TEST_SUITE_BEGIN("poset");

TEST_CASE("from_relations closes transitively and rejects cycles") {
  Poset p2 = Poset::from_relations(2, {{0, 1}});
  CHECK(p2.less(0, 1));
  CHECK(!p2.less(1, 0));

  Poset fork = Poset::from_relations(3, {{0, 1}, {0, 2}});
  CHECK(fork.less(0, 1));
  CHECK(fork.less(0, 2));
  CHECK(!fork.comparable(1, 2));

  Poset chain = Poset::from_relations(3, {{0, 1}, {1, 2}});
  CHECK(chain.less(0, 2));  // closure

  CHECK_THROWS_AS(Poset::from_relations(2, {{0, 1}, {1, 0}}), CycleError);
  CHECK_THROWS_AS(Poset::from_relations(3, {{0, 1}, {1, 2}, {2, 0}}), CycleError);
  CHECK_THROWS_AS(Poset::from_relations(2, {{0, 2}}), IndexError);
}

TEST_CASE("named posets") {
  Poset c3 = make_named_poset("chain", 3);
  CHECK(c3.size() == 3);
  CHECK(c3.less(0, 1));
  CHECK(c3.less(1, 2));
  CHECK(c3.less(0, 2));

  Poset h2 = make_named_poset("H_m", 2);
  REQUIRE(h2.size() == 4);
  // x1<=y1, x1<=y2, x2<=y2 and nothing else
  CHECK(h2.less(0, 2));
  CHECK(h2.less(0, 3));
  CHECK(h2.less(1, 3));
  CHECK(!h2.comparable(1, 2));
  CHECK(!h2.comparable(0, 1));
  CHECK(!h2.comparable(2, 3));

  Poset bfly = make_named_poset("butterfly");
  for (int a = 0; a < 2; ++a) {
    for (int b = 2; b < 4; ++b) CHECK(bfly.less(a, b));
  }
  CHECK(!bfly.comparable(0, 1));
  CHECK(!bfly.comparable(2, 3));

  Poset k23 = make_named_poset("K_rs", 2, 3);
  CHECK(k23.size() == 5);
  CHECK(k23.less(1, 4));

  CHECK_THROWS_AS(make_named_poset("chain", 0), ParamError);
  CHECK_THROWS_AS(make_named_poset("K_rs", 1, 2), ParamError);
  CHECK_THROWS_AS(make_named_poset("H_m", 0), ParamError);
  CHECK_THROWS_AS(make_named_poset("zigzag", 1), ParamError);
}

TEST_CASE("hasse covers") {
  auto c3 = hasse_covers(make_named_poset("chain", 3));
  CHECK(c3 == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  auto fork = hasse_covers(make_named_poset("fork", 2));
  CHECK(fork == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});

  auto bfly = hasse_covers(make_named_poset("butterfly"));
  CHECK(bfly.size() == 4);  // undirected 4-cycle
}

TEST_CASE("hasse round trip on random dags") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng.bounded(6));
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.bounded(3) == 0) rel.emplace_back(i, j);  // i<j keeps it acyclic
      }
    }
    Poset p = Poset::from_relations(n, rel);
    Poset back = Poset::from_relations(n, hasse_covers(p));
    CHECK(back == p);
    // closure idempotence: feeding the full relation back changes nothing
    CHECK(Poset::from_relations(n, p.relation_pairs()) == p);
  }
}

TEST_CASE("analyze") {
  auto v2 = analyze(make_named_poset("fork", 2), 2);
  CHECK(v2.height == 2);
  CHECK(v2.tree_hasse);
  CHECK(v2.k_saturated);

  auto bfly = analyze(make_named_poset("butterfly"), 2);
  CHECK(bfly.height == 2);
  CHECK(!bfly.tree_hasse);
  CHECK(bfly.k_saturated);

  Poset p = Poset::from_relations(4, {{0, 1}, {1, 2}, {0, 3}}, {"a", "b", "c", "d"});
  auto ap = analyze(p, 3);
  CHECK(ap.height == 3);
  CHECK(ap.tree_hasse);
  CHECK(!ap.k_saturated);  // maximal chain (a,d) has 2 elements
}

TEST_CASE("saturate fixed point and example") {
  Poset v2 = make_named_poset("fork", 2);
  CHECK(saturate(v2) == v2);

  Poset p = Poset::from_relations(4, {{0, 1}, {1, 2}, {0, 3}}, {"a", "b", "c", "d"});
  Poset sat = saturate(p);
  CHECK(sat.size() == 5);  // exactly one pendant added
  CHECK(sat.less(3, 4));   // the new element sits above d
  auto a = analyze(sat, 3);
  CHECK(a.k_saturated);
  CHECK(a.tree_hasse);
  CHECK(find_poset_embedding(sat, p, true).has_value());

  CHECK_THROWS_AS(saturate(make_named_poset("butterfly")), NotTreeError);
}

TEST_CASE("saturate postconditions on random tree posets") {
  Rng rng(17);
  int done = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng.bounded(6));
    Poset p = random_tree_poset(n, rng);
    int k = analyze(p, 0).height;
    if (k < 2) continue;
    Poset sat = saturate(p);
    auto a = analyze(sat, k);
    CHECK(a.k_saturated);
    CHECK(a.tree_hasse);
    CHECK(sat.size() - p.size() <= k * p.size());
    auto emb = find_poset_embedding(sat, p, true);
    REQUIRE(emb.has_value());
    // the original sits induced at its own indices
    for (int u = 0; u < p.size(); ++u) {
      for (int v = 0; v < p.size(); ++v) {
        if (u != v) CHECK(p.less(u, v) == sat.less(u, v));
      }
    }
    ++done;
  }
  CHECK(done >= 30);
}

TEST_CASE("decompose fork") {
  auto steps = decompose(make_named_poset("fork", 2));
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].interval == std::vector<int>{0, 1});  // [A, B1]
  CHECK(steps[0].anchor == 0);
  CHECK(steps[0].leaf == 1);
  CHECK(steps[0].direction == ZoneSide::Above);
  CHECK(steps[0].remaining.size() == 2);
  CHECK(steps[0].remaining.less(0, 1));  // the chain (A, B2)
}

TEST_CASE("decompose chain is empty") {
  for (int k = 1; k <= 4; ++k) {
    CHECK(decompose(make_named_poset("chain", k)).empty());
  }
}

TEST_CASE("decompose saturated double-arm poset") {
  Poset p = Poset::from_relations(4, {{0, 1}, {1, 2}, {0, 3}}, {"a", "b", "c", "d"});
  Poset sat = saturate(p);
  auto steps = decompose(sat);
  // the first eligible removal strips a whole 2-element arm, leaving a 3-chain
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].interval.size() == 3);
  CHECK(steps[0].remaining.size() == 3);
  CHECK(analyze(steps[0].remaining, 3).k_saturated);
}

TEST_CASE("decompose errors") {
  Poset p = Poset::from_relations(4, {{0, 1}, {1, 2}, {0, 3}});
  CHECK_THROWS_AS(decompose(p), NotSaturatedError);
  CHECK_THROWS_AS(decompose(make_named_poset("butterfly")), NotTreeError);
}

TEST_CASE("decompose replay on random saturated posets") {
  Rng rng(23);
  int done = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng.bounded(6));
    Poset p = random_tree_poset(n, rng);
    int k = analyze(p, 0).height;
    if (k < 2) continue;
    Poset sat = saturate(p);
    auto steps = decompose(sat);
    Poset cur = sat;
    for (const auto& st : steps) {
      // removal really is interval minus anchor
      CHECK(st.interval.size() >= 2);
      CHECK(st.interval.size() <= static_cast<std::size_t>(k));
      CHECK(std::find(st.interval.begin(), st.interval.end(), st.anchor) != st.interval.end());
      CHECK(std::find(st.interval.begin(), st.interval.end(), st.leaf) != st.interval.end());
      CHECK(st.remaining == cur.restricted_to(st.kept));
      auto a = analyze(st.remaining, k);
      CHECK(a.k_saturated);
      CHECK(a.tree_hasse);
      cur = st.remaining;
    }
    // terminates at a k-chain
    CHECK(cur.size() == k);
    for (int u = 0; u < cur.size(); ++u) {
      for (int v = u + 1; v < cur.size(); ++v) CHECK(cur.comparable(u, v));
    }
    ++done;
  }
  CHECK(done >= 20);
}

TEST_CASE("find_poset_embedding") {
  // B_2 as a poset: 0=∅, 1={1}, 2={2}, 3={1,2}
  Poset b2 = Poset::from_relations(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  Poset v2 = make_named_poset("fork", 2);
  auto found = find_poset_embedding(b2, v2, true);
  REQUIRE(found.has_value());
  CHECK(poset_map_valid(b2, v2, found->image, true));

  CHECK(!find_poset_embedding(make_named_poset("chain", 3), v2, true).has_value());

  Poset h2 = make_named_poset("H_m", 2);
  auto ident = find_poset_embedding(h2, h2, true);
  REQUIRE(ident.has_value());
  CHECK(poset_map_valid(h2, h2, ident->image, true));
}

TEST_CASE("chains embed induced iff weak") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng.bounded(5));
    Poset host = random_tree_poset(n, rng);
    for (int k = 2; k <= 4; ++k) {
      Poset chain = make_named_poset("chain", k);
      bool ind = find_poset_embedding(host, chain, true).has_value();
      bool weak = find_poset_embedding(host, chain, false).has_value();
      CHECK(ind == weak);
    }
  }
}

TEST_SUITE_END();
