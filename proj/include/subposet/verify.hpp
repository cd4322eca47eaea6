#pragma once

#include "subposet/chains.hpp"
#include "subposet/nested.hpp"
#include "subposet/report.hpp"

namespace subposet {

struct VerifyOutcome {
  Json report;
  bool pass = false;
};

/// Everything the `verify` subcommand can drive. Each check regenerates its
/// instance corpus from the seed, so identical configs give identical reports.

/// Deterministic random family over B_n: each vertex kept with probability
/// num/den.
Family random_family(int n, Rng& rng, int num = 1, int den = 2);

/// Marked-chain counting identity: the k-chain enumeration route must equal
/// the per-chain binomial route on every sampled family. (verify 2.3)
VerifyOutcome verify_count_identity(int n, int k, int families, std::uint64_t seed,
                                    const RunConfig& cfg);

/// Density bound: families at least (k-1+eps) * binom(n, n/2) in size carry at
/// least (eps/k) * n! marked chains. Also reports the weaker (eps/k) * k!
/// variant for reference. (verify 2.4)
VerifyOutcome verify_density_bound(int n, int k, const Rational& epsilon, int families,
                                   std::uint64_t seed, const RunConfig& cfg);

/// LYM consistency on the same corpus as the counting identity:
/// lym_sum * n! == sum_i i * C_i. (part of verify 2.3 --lym)
VerifyOutcome verify_lym_consistency(int n, int families, std::uint64_t seed,
                                     const RunConfig& cfg);

/// Chain-into-zone probability against the 27 s sqrt(n ln n) / n ceiling;
/// exact sublattice enumeration for small anchors, Monte Carlo above.
/// (verify 3.1)
VerifyOutcome verify_zone_bound(int n, int s, int anchor_weight, std::uint64_t trials,
                                std::uint64_t seed, ProbMode mode, const RunConfig& cfg);

/// Bad-string probability against gamma^p on a constructed witness rule.
/// (verify 4.2)
VerifyOutcome verify_string_bound(int n, int h, int p, std::uint64_t trials,
                                  std::uint64_t seed, const RunConfig& cfg);

/// Structural checks of the nested construction: first layer equals the raw
/// markers, the survival ratio, and re-derived goodness; the count targets are
/// reported, not asserted. Defaults to the full lattice plus random families
/// with the witness pool F ∩ band; both can be overridden. (verify 5.1)
VerifyOutcome verify_nested_structure(int n, int k, int h, const Rational& epsilon,
                                      int extra_families, std::uint64_t seed,
                                      const RunConfig& cfg,
                                      const std::optional<Family>& family = std::nullopt,
                                      const std::optional<Family>& pool_override = std::nullopt);

}  // namespace subposet
