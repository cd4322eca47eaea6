#pragma once

#include <cstdint>
#include <optional>

#include "subposet/lattice.hpp"
#include "subposet/poset.hpp"

namespace subposet {

/// The t middle levels of B_n: weights floor((n-t)/2)+1 .. floor((n-t)/2)+t.
Family middle_levels(int n, int t);

struct SearchBudget {
  std::uint64_t node_limit = 50'000'000;
  std::int64_t time_limit_ms = 0;   // 0 = unlimited
  std::uint64_t backtrack_limit = 0;  // 0 = unlimited
};

enum class Verdict { Found, Absent, Indeterminate };

/// An injective assignment of poset elements to lattice vertices. `induced`
/// records which containment notion was certified.
struct Embedding {
  std::vector<Subset> image;
  bool induced = false;
  bool validated = false;
};

/// Pairwise check of an assignment against H (both notions).
bool embedding_valid(const Embedding& e, const Poset& h, bool induced);

struct CopyResult {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<Embedding> embedding;
  std::uint64_t nodes = 0;
};

/// Exhaustive backtracking search for a (weak or induced) copy of H inside an
/// explicit family. Forward-checks candidate sets through precomputed
/// containment bitsets; Absent only after complete exhaustion.
CopyResult find_copy_oracle(const Family& f, int n, const Poset& h, bool induced,
                            const SearchBudget& budget = {});

/// Guided embedder: saturate H if needed, peel it to a chain, embed the chain
/// in F ∩ band, then re-attach each interval through marker chains avoiding
/// the forbidden neighborhood of the already-embedded vertices. Returns the
/// induced copy of the ORIGINAL H; never claims absence.
struct GuidedResult {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<Embedding> embedding;            // copy of the input H
  std::optional<Embedding> saturated_embedding;  // copy of the saturated host
  std::uint64_t nodes = 0;
};

GuidedResult find_copy_guided(const Family& f, int n, const Poset& h,
                              const SearchBudget& budget, const Band& band,
                              std::uint64_t seed = 0);

struct LaResult {
  Verdict verdict = Verdict::Indeterminate;  // Found = proven optimal
  std::uint64_t value = 0;
  std::vector<Subset> witness;
  std::uint64_t nodes = 0;
};

/// Largest H-free family of B_n by branch-and-bound over vertices in
/// central-first order; copy detection on every tentative addition.
LaResult la_exact(int n, const Poset& h, bool induced, const SearchBudget& budget = {});

struct AvoidanceResult {
  Verdict oracle_verdict = Verdict::Indeterminate;
  bool avoided = false;  // meaningful when oracle_verdict != Indeterminate
};

/// Does middle_levels(n, t) avoid H as an induced subposet?
AvoidanceResult construction_avoidance_check(int n, const Poset& h, int t,
                                             const SearchBudget& budget = {});

struct HmCertificate {
  int spread = 0;
  bool holds = false;
};

/// Weight spread |image(y_m)| - |image(x_1)| of a certified induced copy of
/// H_m; it can never fall under m-1.
HmCertificate hm_certificate(const Embedding& e, int m);

}  // namespace subposet
