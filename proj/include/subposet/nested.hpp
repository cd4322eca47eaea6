#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>

#include "subposet/chains.hpp"
#include "subposet/lattice.hpp"

namespace subposet {

inline constexpr int kExactChainCap = 8;  // max anchor-side size for exact chain sums

/// Decay factor 27*h*sqrt(n ln n)/n for bad-string probabilities.
double gamma_factor(int n, int h);

struct ProbEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
};

enum class ProbMode { Exact, MonteCarlo };

/// Probability that a uniform random full chain of D(v) (Below) or U(v)
/// (Above) meets the banded forbidden neighborhood of S. Exact mode enumerates
/// every chain of the sublattice; MC mode samples `trials` chains in fixed-size
/// batches with per-batch seeds, so results do not depend on `workers`.
ProbEstimate zone_hit_prob(const Subset& v, const Family& s, ZoneSide side, int n,
                           const Band& band, ProbMode mode, std::uint64_t trials,
                           std::uint64_t seed, int workers = 1,
                           int exact_cap = kExactChainCap);

/// A full chain together with the nested markers it hosts, top to bottom.
struct MarkedChain {
  FullChain host;
  std::vector<Subset> marks;
};

/// Fixed witness sets per (vertex, level, side). Explicit entries take
/// precedence; an optional rule generates witnesses for oracle-scale runs.
/// Carries its band so string predicates need no extra context.
class WitnessAssignment {
 public:
  using Rule = std::function<std::optional<std::vector<Subset>>(const Subset&, int, ZoneSide)>;

  WitnessAssignment(int n, Band band) : n_(n), band_(band) {}

  void set(const Subset& v, int d, ZoneSide side, std::vector<Subset> witness);
  void set_rule(Rule rule) { rule_ = std::move(rule); }

  std::optional<std::vector<Subset>> lookup(const Subset& v, int d, ZoneSide side) const;

  int ground_size() const { return n_; }
  const Band& band() const { return band_; }
  std::size_t fixed_count() const { return entries_.size(); }

  /// (vertex, d, side, witness) rows in canonical order, for reports.
  std::vector<std::tuple<Subset, int, ZoneSide, std::vector<Subset>>> rows() const;

 private:
  struct Key {
    Subset v;
    int d;
    ZoneSide side;
    bool operator==(const Key& o) const { return d == o.d && side == o.side && v == o.v; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.v.hash() * 31 + static_cast<std::size_t>(k.d) * 2 +
             (k.side == ZoneSide::Above ? 1 : 0);
    }
  };
  int n_;
  Band band_;
  std::unordered_map<Key, std::vector<Subset>, KeyHash> entries_;
  Rule rule_;
};

/// First witness (by size, then candidate order) from the pool certifying that
/// every marked chain in l_view meets the forbidden zone it induces at v.
/// l_view must already be restricted to pairs whose d-th marker is v.
std::optional<std::vector<Subset>> find_witness(const Subset& v, int d,
                                                std::span<const MarkedChain> l_view,
                                                const Family& pool, int h, ZoneSide side,
                                                const Band& band);

/// Does the J-indexed subchain of x_view (members counted from the top of M)
/// alternate bad vertex / zone hit at level d?
bool bad_string_test(const FullChain& m, const std::vector<Subset>& x_view,
                     const std::vector<int>& j, const WitnessAssignment& w, int d,
                     ZoneSide side);

struct BadString {
  ZoneSide side = ZoneSide::Below;
  int level = 0;
  std::vector<Subset> vertices;  // x1, y1, x2, y2, ...
};

struct GreedyProfileResult {
  BadString string;
  std::vector<int> profile;  // 1-based indices into x_view counted from the top
};

/// Greedy alternating scan: next witnessed vertex, then the first subsequent
/// member inside its zone. Throws IncompleteStringError when a witnessed
/// vertex has no zone hit before the chain ends.
GreedyProfileResult greedy_profile(const FullChain& m, const std::vector<Subset>& x_view,
                                   const WitnessAssignment& w, int d, ZoneSide side);

/// Monte Carlo probability that M[J] forms a bad string at level d over a
/// uniform chain of D(v) / U(v), markers drawn from x_oracle.
ProbEstimate bad_string_prob_mc(const Subset& v, const std::vector<int>& j,
                                const Family& x_oracle, const WitnessAssignment& w, int d,
                                ZoneSide side, int n, std::uint64_t trials, std::uint64_t seed,
                                int workers = 1);

enum class ChainClass { EmptyMarkers, LowBadShare, HighBadShare };

struct NestedChainState {
  std::vector<Subset> markers;  // X_i(M), top to bottom
  std::vector<Subset> bad_lower;
  std::vector<Subset> bad_upper;
  std::vector<Subset> bad_all;
  ChainClass chain_class = ChainClass::EmptyMarkers;
};

struct NestedFamilyState {
  int iteration = 0;
  std::vector<NestedChainState> chains;  // parallel to enumerate_full_chains(n)
  WitnessAssignment witnesses;           // fixed for this iteration's badness
  BigInt marked_count;                   // |L_i|
};

struct NestedBuild {
  int n = 0;
  int k = 0;
  int h = 0;
  int c_constant = 0;  // 4kh
  Band band;
  Rational epsilon;
  std::vector<NestedFamilyState> states;  // iterations 1..h
};

/// Construct the nested marker families X_1 ⊇ ... ⊇ X_h over all full chains
/// of B_n: start from all of F on each chain, fix pool-restricted witnesses,
/// classify chains by bad-marker share against 1/(4kh), and strip bad markers
/// on the low-share class. Exact at enumeration scale.
NestedBuild build_nested(const Family& f, int k, int h, const Rational& epsilon, int n,
                         const Band& band, const Family& pool, int cap = kChainEnumCap);

/// All marked chains of L_i (iteration is 1-based), in deterministic order.
std::vector<MarkedChain> state_marked_chains(const NestedBuild& build, int iteration);

/// The slice L_i(v, d).
std::vector<MarkedChain> state_bucket(const NestedBuild& build, int iteration, const Subset& v,
                                      int d);

}  // namespace subposet
