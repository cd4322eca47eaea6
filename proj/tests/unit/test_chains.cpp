#include <doctest.h>

#include "subposet/chains.hpp"
#include "subposet/verify.hpp"
#include "test_helpers.hpp"

using namespace subposet;

namespace {

Family all_of(int n) { return Family::explicit_family(all_vertices(n), n); }

}  // namespace

TEST_SUITE_BEGIN("chains");

TEST_CASE("markers") {
  FullChain m(Subset::of(2, {1, 2}), {1, 0}, Direction::Down, 2);  // {1,2} ⊃ {1} ⊃ ∅
  Family f = Family::explicit_family({Subset::empty_set(2), Subset::of(2, {1, 2})}, 2);
  auto ms = markers(m, f);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0] == Subset::of(2, {1, 2}));
  CHECK(ms[1] == Subset::empty_set(2));

  CHECK(markers(m, Family::explicit_family({}, 2)).empty());
  CHECK(markers(m, all_of(2)).size() == 3);
}

TEST_CASE("lym examples") {
  Family pair = Family::explicit_family({Subset::of(2, {1}), Subset::of(2, {2})}, 2);
  CHECK(lym_sum(pair, 2) == Rational(1));

  CHECK(lym_sum(all_of(2), 2) == Rational(3));
  // cross-check: mean marker count over both chains of B_2 is 3
  BigInt mass = 0;
  for (const auto& m : enumerate_full_chains(2)) {
    mass += static_cast<int>(markers(m, all_of(2)).size());
  }
  CHECK(Rational(mass, factorial(2)) == Rational(3));

  CHECK(lym_sum(Family::explicit_family(level_vertices(4, 2), 4), 4) == Rational(1));
}

TEST_CASE("count_marked_chains examples") {
  Family chain_family = Family::explicit_family(
      {Subset::empty_set(2), Subset::of(2, {1}), Subset::of(2, {1, 2})}, 2);
  CHECK(count_marked_chains(chain_family, 2, 2) == 4);
  CHECK(count_marked_chains_oracle(chain_family, 2, 2) == 4);

  Family antichain = Family::explicit_family(level_vertices(4, 2), 4);
  CHECK(count_marked_chains(antichain, 2, 4) == 0);

  CHECK(count_marked_chains(all_of(2), 2, 2) == 6);
  CHECK(count_marked_chains_oracle(all_of(2), 2, 2) == 6);

  CHECK(count_marked_chains_oracle(Family::explicit_family({Subset::empty_set(3)}, 3), 1, 3) ==
        6);
  CHECK(count_marked_chains_oracle(Family::explicit_family({Subset::of(3, {1})}, 3), 1, 3) ==
        2);
}

TEST_CASE("marker histogram") {
  auto h_all = marker_histogram(all_of(2), 2);
  REQUIRE(h_all.counts.size() == 1);
  CHECK(h_all.counts.at(3) == 2);

  auto h_empty = marker_histogram(Family::explicit_family({}, 3), 3);
  CHECK(h_empty.counts.at(0) == 6);

  auto h_single = marker_histogram(Family::explicit_family({Subset::of(2, {1})}, 2), 2);
  CHECK(h_single.counts.at(0) == 1);
  CHECK(h_single.counts.at(1) == 1);
}

TEST_CASE("density examples") {
  auto r = density_check(all_of(2), 2, Rational(1), 2);
  CHECK(r.hypothesis_met);
  CHECK(r.count == 6);
  CHECK(r.bound == Rational(1));
  CHECK(r.holds);

  auto r2 = density_check(Family::explicit_family(level_vertices(4, 2), 4), 2,
                          Rational(1, 10), 4);
  CHECK(!r2.hypothesis_met);  // 6 >= 1.1 * 6 fails

  auto r3 = density_check(Family::explicit_family({}, 3), 2, Rational(1, 2), 3);
  CHECK(!r3.hypothesis_met);
  CHECK(r3.count == 0);
}

TEST_CASE("counting identity on random families") {
  Rng rng(99);
  for (int n = 3; n <= 5; ++n) {
    for (int k = 2; k <= 3; ++k) {
      for (int i = 0; i < 30; ++i) {
        Family f = random_family(n, rng);
        CHECK(count_marked_chains(f, k, n) == count_marked_chains_oracle(f, k, n));
      }
    }
  }
}

TEST_CASE("lym mass identity on random families") {
  Rng rng(101);
  for (int n = 3; n <= 5; ++n) {
    for (int i = 0; i < 20; ++i) {
      Family f = random_family(n, rng);
      auto hist = marker_histogram(f, n);
      BigInt mass = 0;
      for (const auto& [x, c] : hist.counts) mass += BigInt(x) * c;
      CHECK(lym_sum(f, n) * Rational(factorial(n)) == Rational(mass));
    }
  }
}

TEST_CASE("density bound on random families") {
  Rng rng(103);
  for (int n = 3; n <= 5; ++n) {
    for (int i = 0; i < 20; ++i) {
      Family f = random_family(n, rng, 3, 4);
      auto r = density_check(f, 2, Rational(1, 2), n);
      if (r.hypothesis_met) CHECK(r.holds);
    }
  }
}

TEST_CASE("adding a vertex never lowers the count") {
  Rng rng(105);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng.bounded(3));
    Family f = random_family(n, rng);
    auto verts = all_vertices(n);
    Subset extra = verts[rng.bounded(verts.size())];
    std::vector<Subset> plus = f.vertices();
    plus.push_back(extra);
    Family g = Family::explicit_family(std::move(plus), n);
    CHECK(count_marked_chains(g, 2, n) >= count_marked_chains(f, 2, n));
  }
}

TEST_CASE("family cap raises") {
  CHECK_THROWS_AS(count_marked_chains(all_of(4), 2, 4, 5), SizeError);
}

TEST_SUITE_END();
