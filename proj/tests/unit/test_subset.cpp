#include <doctest.h>

#include "subposet/rng.hpp"
#include "subposet/subset.hpp"

using namespace subposet;

TEST_SUITE_BEGIN("subset");

TEST_CASE("construction and weight") {
  Subset s = Subset::of(6, {1, 3, 6});
  CHECK(s.weight() == 3);
  CHECK(s.has_element(1));
  CHECK(!s.has_element(2));
  CHECK(s.elements() == std::vector<int>{1, 3, 6});
  CHECK(Subset::empty_set(6).weight() == 0);
  CHECK(Subset::full_set(6).weight() == 6);
  CHECK_THROWS_AS(Subset::of(4, {5}), IndexError);
  CHECK_THROWS_AS(Subset::of(4, {0}), IndexError);
}

TEST_CASE("containment") {
  Subset a = Subset::of(5, {1, 2});
  Subset b = Subset::of(5, {1, 2, 4});
  CHECK(a.is_subset_of(b));
  CHECK(a.is_proper_subset_of(b));
  CHECK(!b.is_subset_of(a));
  CHECK(a.is_subset_of(a));
  CHECK(!a.is_proper_subset_of(a));
  CHECK(Subset::of(5, {3}).comparable_with(Subset::of(5, {3, 4})));
  CHECK(!Subset::of(5, {3}).comparable_with(Subset::of(5, {4})));
}

TEST_CASE("wide subsets span words") {
  Subset s(130);
  s.add_element(1);
  s.add_element(70);
  s.add_element(130);
  CHECK(s.weight() == 3);
  CHECK(s.has_element(70));
  Subset t = s.without_element(70);
  CHECK(t.weight() == 2);
  CHECK(t.is_proper_subset_of(s));
}

TEST_CASE("hex round trip") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng.bounded(120));
    Subset s(n);
    for (int e = 1; e <= n; ++e) {
      if (rng.bounded(2)) s.add_element(e);
    }
    CHECK(Subset::from_hex(n, s.to_hex()) == s);
  }
  CHECK(Subset::from_hex(4, "0") == Subset::empty_set(4));
  CHECK_THROWS_AS(Subset::from_hex(2, "f"), ParamError);
  CHECK_THROWS_AS(Subset::from_hex(4, "zz"), ParamError);
}

TEST_CASE("canonical order sorts by weight then bits") {
  Subset a = Subset::of(4, {4});
  Subset b = Subset::of(4, {1, 2});
  CHECK(a < b);
  CHECK(!(b < a));
  Subset c = Subset::of(4, {1});
  CHECK(c < a);
}

TEST_CASE("rng bounded is unbiased enough and shuffle is seed-stable") {
  Rng a(42), b(42);
  std::vector<int> x{1, 2, 3, 4, 5, 6, 7};
  std::vector<int> y = x;
  a.shuffle(x);
  b.shuffle(y);
  CHECK(x == y);
  Rng c(43);
  std::vector<int> z{1, 2, 3, 4, 5, 6, 7};
  c.shuffle(z);
  CHECK(x != z);  // different seed, almost surely different order
}

TEST_SUITE_END();
