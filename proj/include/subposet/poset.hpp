#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subposet/errors.hpp"

namespace subposet {

/// A finite strict partial order on elements 0..n-1, stored as a closed
/// boolean matrix. Instances are immutable after construction.
class Poset {
 public:
  Poset() = default;  // empty; fill via from_relations

  /// Transitively close `pairs` (u,v meaning u < v). Throws CycleError if the
  /// closure would relate an element to itself, IndexError on bad indices.
  static Poset from_relations(int element_count,
                              const std::vector<std::pair<int, int>>& pairs,
                              std::vector<std::string> labels = {});

  int size() const { return n_; }

  bool less(int u, int v) const { return less_[static_cast<std::size_t>(u) * n_ + v]; }
  bool leq(int u, int v) const { return u == v || less(u, v); }
  bool comparable(int u, int v) const { return less(u, v) || less(v, u); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int u) const { return labels_[static_cast<std::size_t>(u)]; }

  /// Sub-poset induced on `keep` (order preserved); element i of the result is
  /// keep[i] here.
  Poset restricted_to(const std::vector<int>& keep) const;

  /// All strict pairs (u,v) with u < v.
  std::vector<std::pair<int, int>> relation_pairs() const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.n_ == b.n_ && a.less_ == b.less_;
  }

 private:
  int n_ = 0;
  std::vector<char> less_;  // row-major strict order matrix
  std::vector<std::string> labels_;
};

/// chain(k), fork(k) = V_k, butterfly, K_rs(r,s), H_m(m). Elements are listed
/// lower level first, index order within a level.
Poset make_named_poset(const std::string& name, int p1 = -1, int p2 = -1);

/// Cover pairs (u,v): u < v with nothing strictly between.
std::vector<std::pair<int, int>> hasse_covers(const Poset& p);

struct PosetAnalysis {
  int height = 0;        // largest chain cardinality
  bool tree_hasse = false;
  bool k_saturated = false;  // every maximal chain has exactly k elements
};

PosetAnalysis analyze(const Poset& p, int k);

/// Longest chain upward from u, counting u. In a k-saturated poset this is
/// u's level from the top.
int up_height(const Poset& p, int u);
int down_height(const Poset& p, int u);

/// All maximal chains, each as an ascending element list.
std::vector<std::vector<int>> maximal_chains(const Poset& p);

/// Extend a tree-Hasse poset of height k >= 2 to a k-saturated tree-Hasse
/// poset containing it induced. Original elements keep their indices; new
/// elements are appended. Backtracking over pendant/subdivision moves, bounded
/// by k*|p| added elements (BudgetError past that, NotTreeError when the input
/// Hasse diagram is not a tree).
Poset saturate(const Poset& p);

enum class ZoneSide { Below, Above };

struct DecompositionStep {
  std::vector<int> interval;     // the chain interval, ascending, in parent indices
  int anchor = -1;               // the interval endpoint that stays
  int leaf = -1;                 // the removed Hasse leaf
  ZoneSide direction = ZoneSide::Below;  // Below: interval hangs under the anchor
  Poset remaining;
  std::vector<int> kept;         // remaining index -> parent index
  int anchor_in_remaining = -1;
};

/// Peel chain intervals off Hasse-tree leaves until a k-chain remains, keeping
/// every intermediate poset k-saturated with a tree Hasse diagram. Chooses the
/// lexicographically least eligible (leaf, anchor) pair at every step.
std::vector<DecompositionStep> decompose(const Poset& p);

struct PosetMap {
  std::vector<int> image;  // pattern element -> host element
  bool induced = false;
};

/// Exhaustive backtracking search for a copy of `pattern` inside `host`.
std::optional<PosetMap> find_poset_embedding(const Poset& host, const Poset& pattern,
                                             bool induced);

/// Check one assignment against the weak / induced containment definition.
bool poset_map_valid(const Poset& host, const Poset& pattern,
                     const std::vector<int>& image, bool induced);

}  // namespace subposet
