#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "subposet/numbers.hpp"
#include "subposet/poset.hpp"
#include "subposet/rng.hpp"
#include "subposet/subset.hpp"

namespace subposet {

inline constexpr std::size_t kZoneCap = std::size_t{1} << 20;
inline constexpr int kChainEnumCap = 10;

/// Inclusive real weight band [lo, hi].
struct Band {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(int weight) const { return lo <= weight && weight <= hi; }
};

/// Central band n/2 +- 2*sqrt(n ln n).
Band band_bounds(int n);

/// A set family: either an explicit vertex list or a membership oracle with a
/// weight-range hint.
class Family {
 public:
  static Family explicit_family(std::vector<Subset> vertices, int n);
  static Family oracle_family(std::function<bool(const Subset&)> member, int n,
                              int weight_lo, int weight_hi);

  int ground_size() const { return n_; }
  bool is_explicit() const { return explicit_; }
  bool contains(const Subset& v) const;
  std::size_t size() const;  // explicit only

  /// Canonically sorted vertex list (weight, then lex). Explicit only.
  const std::vector<Subset>& vertices() const;

  int weight_lo() const { return weight_lo_; }
  int weight_hi() const { return weight_hi_; }

 private:
  Family() = default;
  bool explicit_ = true;
  int n_ = 0;
  int weight_lo_ = 0;
  int weight_hi_ = 0;
  std::vector<Subset> vertices_;
  std::vector<std::size_t> index_;  // hash buckets would be overkill; sorted + binary search
  std::function<bool(const Subset&)> member_;
};

enum class Direction { Down, Up };

/// A full chain of B_n, of D(anchor) (down) or of U(anchor) (up), encoded as
/// the anchor plus the order in which elements are removed (down) or added
/// (up). Vertices are always reported top first.
class FullChain {
 public:
  FullChain(Subset anchor, std::vector<int> order, Direction dir, int n);

  const Subset& anchor() const { return anchor_; }
  const std::vector<int>& order() const { return order_; }  // 0-based positions
  Direction direction() const { return dir_; }
  int ground_size() const { return n_; }
  int length() const { return static_cast<int>(order_.size()) + 1; }

  /// Visit vertices top to bottom; stop early when the callback returns false.
  void for_each_top_down(const std::function<bool(const Subset&)>& cb) const;

  std::vector<Subset> vertices_top_down() const;

  bool passes_through(const Subset& v) const;

 private:
  Subset anchor_;
  std::vector<int> order_;
  Direction dir_;
  int n_;
};

/// All weight-w vertices of B_n in lexicographic position order.
void for_each_level_vertex(int n, int w, const std::function<void(const Subset&)>& emit);
std::vector<Subset> level_vertices(int n, int w);

/// Every vertex of B_n, weight-ascending. Guarded by the zone cap.
std::vector<Subset> all_vertices(int n, std::size_t cap = kZoneCap);

/// All descendants (down) or ancestors (up) of v, including v itself.
std::vector<Subset> down_up_set(const Subset& v, Direction dir, int n,
                                std::size_t cap = kZoneCap);

/// Banded forbidden neighborhood of S under/above v:
///   Below: (D(v) \ {v}) ∩ (U(S) ∪ D(S)) ∩ band
///   Above: (U(v) \ {v}) ∩ (U(S) ∪ D(S)) ∩ band
/// Requires S ∩ U(v) = ∅ (Below) resp. S ∩ D(v) = ∅ (Above).
std::vector<Subset> forbidden_zone(const Subset& v, const Family& S, ZoneSide side, int n,
                                   const Band& band, std::size_t cap = kZoneCap);

/// Membership test equivalent to the set produced by forbidden_zone.
bool in_forbidden_zone(const Subset& u, const Subset& v, const std::vector<Subset>& S,
                       ZoneSide side, const Band& band);

void check_witness_placement(const Subset& v, const std::vector<Subset>& S, ZoneSide side);

/// All n! full chains of B_n in lexicographic removal order.
void for_each_full_chain(int n, const std::function<bool(const FullChain&)>& cb,
                         int cap = kChainEnumCap);
std::vector<FullChain> enumerate_full_chains(int n, int cap = kChainEnumCap);

/// Uniform random full chain of D(anchor) or U(anchor).
FullChain sample_chain(const Subset& anchor, Direction dir, int n, Rng& rng);

/// Number of full chains of B_n containing the strictly nested chain
/// Q = (F_1 ⊃ ... ⊃ F_k):  (n-|F_1|)! * prod |F_i \ F_i+1|! * |F_k|!.
BigInt chains_through_count(const std::vector<Subset>& q, int n);

/// The J-indexed members of F on M, counted from the top (1-based). Empty when
/// M hosts fewer members than max(J). J must be strictly monotone.
std::vector<Subset> subchain(const FullChain& m, const Family& f, const std::vector<int>& j);

}  // namespace subposet
