#pragma once

#include <map>

#include "subposet/lattice.hpp"
#include "subposet/numbers.hpp"

namespace subposet {

inline constexpr std::size_t kMarkedChainFamilyCap = 4096;

/// Members of F on M, top to bottom. Its length is x(M).
std::vector<Subset> markers(const FullChain& m, const Family& f);

/// Exact LYM sum over an explicit family: sum 1/binom(n,|F|). Equals the mean
/// marker count over all full chains.
Rational lym_sum(const Family& f, int n);

/// Number of k-marked chains with markers in F: every pair (M, Q) where Q is a
/// strictly nested k-tuple from F lying on the full chain M. Computed by
/// enumerating k-chains of F and counting their hosts; exact.
BigInt count_marked_chains(const Family& f, int k, int n,
                           std::size_t family_cap = kMarkedChainFamilyCap);

/// Same count through the definitional route: sum binom(x(M), k) over all n!
/// full chains.
BigInt count_marked_chains_oracle(const Family& f, int k, int n, int cap = kChainEnumCap);

struct MarkerHistogram {
  std::map<int, BigInt> counts;  // i -> number of full chains with x(M) = i
};

MarkerHistogram marker_histogram(const Family& f, int n, int cap = kChainEnumCap);

struct DensityResult {
  bool hypothesis_met = false;  // |F| >= (k-1+eps) * binom(n, n/2)
  BigInt count;                 // number of k-marked chains
  Rational bound;               // (eps/k) * n!
  bool holds = false;           // count >= bound
};

/// Marked-chain density check: a family of size at least
/// (k-1+eps)*binom(n,floor(n/2)) must carry at least (eps/k)*n! k-marked
/// chains. Exact rational arithmetic throughout.
DensityResult density_check(const Family& f, int k, const Rational& epsilon, int n);

}  // namespace subposet
