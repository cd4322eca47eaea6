#include "subposet/nested.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace subposet {

double gamma_factor(int n, int h) {
  if (n < 2 || h < 1) throw ParamError("gamma_factor requires n >= 2, h >= 1");
  double nd = static_cast<double>(n);
  return 27.0 * h * std::sqrt(nd * std::log(nd)) / nd;
}

namespace {

constexpr std::uint64_t kBatchSize = 1024;

// Runs `nbatches` independent jobs and merges hit counts in batch order, so
// the result is identical for any worker count.
std::uint64_t run_batches(std::uint64_t nbatches, int workers,
                          const std::function<std::uint64_t(std::uint64_t)>& job) {
  if (workers <= 1 || nbatches <= 1) {
    std::uint64_t hits = 0;
    for (std::uint64_t b = 0; b < nbatches; ++b) hits += job(b);
    return hits;
  }
  std::uint64_t hits = 0;
  std::uint64_t next = 0;
  while (next < nbatches) {
    std::uint64_t stop = std::min(nbatches, next + static_cast<std::uint64_t>(workers));
    std::vector<std::future<std::uint64_t>> wave;
    for (std::uint64_t b = next; b < stop; ++b) {
      wave.push_back(std::async(std::launch::async, job, b));
    }
    for (auto& f : wave) hits += f.get();
    next = stop;
  }
  return hits;
}

double binomial_std_error(double p, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
}

// Incremental zone tracker along one chain walk. For the down direction
// elements of v are removed; for up, elements of the complement are added.
struct ZoneWalk {
  const std::vector<Subset>& zone_sets;
  ZoneSide side;
  std::vector<int> missing;  // |z \ u|
  std::vector<int> extra;    // |u \ z|

  ZoneWalk(const Subset& v, const std::vector<Subset>& s, ZoneSide side_) : zone_sets(s), side(side_) {
    for (const auto& z : zone_sets) {
      missing.push_back(z.set_difference(v).weight());
      extra.push_back(v.set_difference(z).weight());
    }
  }

  void step(int pos) {
    for (std::size_t i = 0; i < zone_sets.size(); ++i) {
      bool inz = zone_sets[i].test_pos(pos);
      if (side == ZoneSide::Below) {
        if (inz) ++missing[i];
        else --extra[i];
      } else {
        if (inz) --missing[i];
        else ++extra[i];
      }
    }
  }

  bool related() const {
    for (std::size_t i = 0; i < zone_sets.size(); ++i) {
      if (missing[i] == 0 || extra[i] == 0) return true;
    }
    return false;
  }
};

}  // namespace

ProbEstimate zone_hit_prob(const Subset& v, const Family& s, ZoneSide side, int n,
                           const Band& band, ProbMode mode, std::uint64_t trials,
                           std::uint64_t seed, int workers, int exact_cap) {
  if (v.ground_size() != n) throw ParamError("anchor does not live in B_n");
  const auto& zone_sets = s.vertices();
  check_witness_placement(v, zone_sets, side);

  std::vector<int> base_positions =
      side == ZoneSide::Below ? v.positions() : v.complement().positions();
  int m = static_cast<int>(base_positions.size());

  auto walk_hits = [&](const std::vector<int>& order) -> bool {
    ZoneWalk zw(v, zone_sets, side);
    int w = v.weight();
    for (int pos : order) {
      zw.step(pos);
      w += side == ZoneSide::Below ? -1 : 1;
      if (band.contains(w) && zw.related()) return true;
    }
    return false;
  };

  ProbEstimate out;
  if (mode == ProbMode::Exact) {
    if (m > exact_cap) {
      throw SizeError("exact chain enumeration capped at sublattice order " +
                      std::to_string(exact_cap));
    }
    std::vector<int> order = base_positions;
    std::sort(order.begin(), order.end());
    std::uint64_t total = 0, hits = 0;
    do {
      ++total;
      if (walk_hits(order)) ++hits;
    } while (std::next_permutation(order.begin(), order.end()));
    out.hits = hits;
    out.trials = total;
    out.estimate = total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
    out.std_error = 0.0;
    return out;
  }

  std::uint64_t nbatches = (trials + kBatchSize - 1) / kBatchSize;
  std::uint64_t hits = run_batches(nbatches, workers, [&](std::uint64_t b) -> std::uint64_t {
    Rng rng(Rng::derive(seed, b));
    std::uint64_t lo = b * kBatchSize;
    std::uint64_t batch = std::min(kBatchSize, trials - lo);
    std::vector<int> order = base_positions;
    std::uint64_t local = 0;
    for (std::uint64_t t = 0; t < batch; ++t) {
      rng.shuffle(order);
      if (walk_hits(order)) ++local;
    }
    return local;
  });
  out.hits = hits;
  out.trials = trials;
  out.estimate = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  out.std_error = binomial_std_error(out.estimate, trials);
  return out;
}

void WitnessAssignment::set(const Subset& v, int d, ZoneSide side, std::vector<Subset> witness) {
  check_witness_placement(v, witness, side);
  entries_[Key{v, d, side}] = std::move(witness);
}

std::optional<std::vector<Subset>> WitnessAssignment::lookup(const Subset& v, int d,
                                                             ZoneSide side) const {
  auto it = entries_.find(Key{v, d, side});
  if (it != entries_.end()) return it->second;
  if (rule_) return rule_(v, d, side);
  return std::nullopt;
}

std::vector<std::tuple<Subset, int, ZoneSide, std::vector<Subset>>> WitnessAssignment::rows()
    const {
  std::vector<std::tuple<Subset, int, ZoneSide, std::vector<Subset>>> out;
  for (const auto& [key, wit] : entries_) out.emplace_back(key.v, key.d, key.side, wit);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (!(std::get<0>(a) == std::get<0>(b))) return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) == ZoneSide::Below && std::get<2>(b) == ZoneSide::Above;
  });
  return out;
}

std::optional<std::vector<Subset>> find_witness(const Subset& v, int d,
                                                std::span<const MarkedChain> l_view,
                                                const Family& pool, int h, ZoneSide side,
                                                const Band& band) {
  if (l_view.empty()) return std::nullopt;
  for (const auto& mc : l_view) {
    if (static_cast<int>(mc.marks.size()) < d || !(mc.marks[static_cast<std::size_t>(d - 1)] == v)) {
      throw ParamError("find_witness: collection entry whose d-th marker is not v");
    }
  }

  std::vector<Subset> cand;
  for (const auto& z : pool.vertices()) {
    if (!band.contains(z.weight())) continue;
    bool clash = side == ZoneSide::Below ? v.is_subset_of(z) : z.is_subset_of(v);
    if (!clash) cand.push_back(z);
  }
  if (cand.empty()) return std::nullopt;

  // cover[c] = bitmask of marked chains whose Q meets the zone of {cand[c]}
  std::size_t words = (l_view.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> cover(cand.size(),
                                                std::vector<std::uint64_t>(words, 0));
  for (std::size_t c = 0; c < cand.size(); ++c) {
    std::vector<Subset> single{cand[c]};
    for (std::size_t e = 0; e < l_view.size(); ++e) {
      for (const auto& q : l_view[e].marks) {
        if (in_forbidden_zone(q, v, single, side, band)) {
          cover[c][e >> 6] |= std::uint64_t{1} << (e & 63);
          break;
        }
      }
    }
  }
  std::vector<std::uint64_t> full(words, ~std::uint64_t{0});
  if (l_view.size() % 64 != 0) full[words - 1] = (std::uint64_t{1} << (l_view.size() % 64)) - 1;

  int max_size = std::min<int>(h, static_cast<int>(cand.size()));
  std::vector<int> idx;
  std::vector<std::uint64_t> acc(words);
  // subsets by size, then lexicographic on candidate indices
  for (int size = 1; size <= max_size; ++size) {
    idx.assign(static_cast<std::size_t>(size), 0);
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int i : idx) {
        for (std::size_t wd = 0; wd < words; ++wd) acc[wd] |= cover[static_cast<std::size_t>(i)][wd];
      }
      if (acc == full) {
        std::vector<Subset> witness;
        for (int i : idx) witness.push_back(cand[static_cast<std::size_t>(i)]);
        return witness;
      }
      // next combination
      int pos = size - 1;
      while (pos >= 0 &&
             idx[static_cast<std::size_t>(pos)] == static_cast<int>(cand.size()) - size + pos) {
        --pos;
      }
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i) {
        idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
  }
  return std::nullopt;
}

namespace {

// Members must lie on one chain; order them top (largest) first.
std::vector<Subset> sorted_top_down(std::vector<Subset> xs) {
  std::sort(xs.begin(), xs.end(), [](const Subset& a, const Subset& b) { return b < a; });
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!xs[i + 1].is_proper_subset_of(xs[i])) {
      throw ParamError("marker view is not a chain");
    }
  }
  return xs;
}

void validate_string_indices(const std::vector<int>& j, ZoneSide side, bool require_even) {
  if (require_even && j.size() % 2 != 0) throw ParamError("index sequence must have even length");
  for (std::size_t i = 0; i + 1 < j.size(); ++i) {
    bool ok = side == ZoneSide::Below ? j[i] < j[i + 1] : j[i] > j[i + 1];
    if (!ok) throw ParamError("index sequence must be strictly monotone for this direction");
  }
  for (int x : j) {
    if (x < 1) throw ParamError("string indices are 1-based");
  }
}

}  // namespace

bool bad_string_test(const FullChain& m, const std::vector<Subset>& x_view,
                     const std::vector<int>& j, const WitnessAssignment& w, int d,
                     ZoneSide side) {
  (void)m;
  validate_string_indices(j, side, true);
  if (j.empty()) return false;
  auto members = sorted_top_down(x_view);
  int need = *std::max_element(j.begin(), j.end());
  if (static_cast<int>(members.size()) < need) return false;  // empty subchain

  for (std::size_t slot = 0; slot + 1 < j.size(); slot += 2) {
    const Subset& x = members[static_cast<std::size_t>(j[slot] - 1)];
    const Subset& y = members[static_cast<std::size_t>(j[slot + 1] - 1)];
    auto witness = w.lookup(x, d, side);
    if (!witness) return false;
    if (!in_forbidden_zone(y, x, *witness, side, w.band())) return false;
  }
  return true;
}

GreedyProfileResult greedy_profile(const FullChain& m, const std::vector<Subset>& x_view,
                                   const WitnessAssignment& w, int d, ZoneSide side) {
  (void)m;
  auto members = sorted_top_down(x_view);
  GreedyProfileResult out;
  out.string.side = side;
  out.string.level = d;

  int len = static_cast<int>(members.size());
  auto scan = [&](int begin, int end, int stride) {
    for (int i = begin; i != end; i += stride) {
      auto witness = w.lookup(members[static_cast<std::size_t>(i)], d, side);
      if (!witness) continue;
      const Subset& x = members[static_cast<std::size_t>(i)];
      int hit = -1;
      for (int jj = i + stride; jj != end; jj += stride) {
        if (in_forbidden_zone(members[static_cast<std::size_t>(jj)], x, *witness, side,
                              w.band())) {
          hit = jj;
          break;
        }
      }
      if (hit < 0) {
        throw IncompleteStringError("witnessed vertex " + x.to_string() +
                                    " has no zone hit before the chain ends");
      }
      out.string.vertices.push_back(x);
      out.string.vertices.push_back(members[static_cast<std::size_t>(hit)]);
      out.profile.push_back(i + 1);
      out.profile.push_back(hit + 1);
      i = hit;  // resume after the hit
    }
  };

  if (side == ZoneSide::Below) {
    scan(0, len, 1);
  } else {
    scan(len - 1, -1, -1);
  }
  return out;
}

ProbEstimate bad_string_prob_mc(const Subset& v, const std::vector<int>& j,
                                const Family& x_oracle, const WitnessAssignment& w, int d,
                                ZoneSide side, int n, std::uint64_t trials, std::uint64_t seed,
                                int workers) {
  validate_string_indices(j, side, true);
  if (j.empty()) throw ParamError("bad_string_prob_mc needs a nonempty index sequence");
  int need = *std::max_element(j.begin(), j.end());

  std::vector<int> base_positions =
      side == ZoneSide::Below ? v.positions() : v.complement().positions();

  // For the up direction, member indices count from the chain top ([n] side),
  // so one counting pass fixes which walk steps carry the J members.
  auto trial_hits = [&](const std::vector<int>& order) -> bool {
    if (side == ZoneSide::Below) {
      Subset u = v;
      int member_idx = 0;
      std::size_t jp = 0;
      Subset pending_x(n);
      std::vector<Subset> pending_witness;
      bool have_x = false;
      auto consume = [&](const Subset& vert) -> int {  // 0 keep going, 1 hit, -1 miss
        if (!x_oracle.contains(vert)) return 0;
        ++member_idx;
        if (jp >= j.size() || member_idx != j[jp]) return 0;
        if (jp % 2 == 0) {
          auto witness = w.lookup(vert, d, side);
          if (!witness) return -1;
          pending_x = vert;
          pending_witness = *witness;
          have_x = true;
        } else {
          if (!have_x || !in_forbidden_zone(vert, pending_x, pending_witness, side, w.band())) {
            return -1;
          }
        }
        ++jp;
        return jp == j.size() ? 1 : 0;
      };
      int r = consume(u);
      if (r != 0) return r == 1;
      for (int pos : order) {
        u.clear_pos(pos);
        r = consume(u);
        if (r != 0) return r == 1;
      }
      return false;
    }

    // Up: pass 1 counts members bottom-to-top.
    std::vector<int> member_steps;  // walk step index (0 = v itself) of each member
    {
      Subset u = v;
      if (x_oracle.contains(u)) member_steps.push_back(0);
      int step = 1;
      for (int pos : order) {
        u.set_pos(pos);
        if (x_oracle.contains(u)) member_steps.push_back(step);
        ++step;
      }
    }
    int x_total = static_cast<int>(member_steps.size());
    if (x_total < need) return false;
    // j-th member from the top sits at bottom-up ordinal x_total - j.
    std::vector<int> capture_steps;
    for (int jt : j) capture_steps.push_back(member_steps[static_cast<std::size_t>(x_total - jt)]);
    // J is decreasing, so capture_steps ascends with the walk.
    Subset u = v;
    std::size_t jp = 0;
    Subset pending_x(n);
    std::vector<Subset> pending_witness;
    auto consume = [&](const Subset& vert, int step) -> int {
      if (jp >= capture_steps.size() || step != capture_steps[jp]) return 0;
      if (jp % 2 == 0) {
        auto witness = w.lookup(vert, d, side);
        if (!witness) return -1;
        pending_x = vert;
        pending_witness = *witness;
      } else {
        if (!in_forbidden_zone(vert, pending_x, pending_witness, side, w.band())) return -1;
      }
      ++jp;
      return jp == capture_steps.size() ? 1 : 0;
    };
    int r = consume(u, 0);
    if (r != 0) return r == 1;
    int step = 1;
    for (int pos : order) {
      u.set_pos(pos);
      r = consume(u, step);
      if (r != 0) return r == 1;
      ++step;
    }
    return false;
  };

  std::uint64_t nbatches = (trials + kBatchSize - 1) / kBatchSize;
  std::uint64_t hits = run_batches(nbatches, workers, [&](std::uint64_t b) -> std::uint64_t {
    Rng rng(Rng::derive(seed, b));
    std::uint64_t lo = b * kBatchSize;
    std::uint64_t batch = std::min(kBatchSize, trials - lo);
    std::vector<int> order = base_positions;
    std::uint64_t local = 0;
    for (std::uint64_t t = 0; t < batch; ++t) {
      rng.shuffle(order);
      if (trial_hits(order)) ++local;
    }
    return local;
  });

  ProbEstimate out;
  out.hits = hits;
  out.trials = trials;
  out.estimate = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  out.std_error = binomial_std_error(out.estimate, trials);
  return out;
}

namespace {

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& cb) {
  if (k > n || k <= 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    cb(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
}

}  // namespace

NestedBuild build_nested(const Family& f, int k, int h, const Rational& epsilon, int n,
                         const Band& band, const Family& pool, int cap) {
  if (k < 2 || h < 1) throw ParamError("build_nested requires k >= 2, h >= 1");
  NestedBuild build;
  build.n = n;
  build.k = k;
  build.h = h;
  build.c_constant = 4 * k * h;
  build.band = band;
  build.epsilon = epsilon;

  auto chains = enumerate_full_chains(n, cap);
  std::size_t nchains = chains.size();

  // iteration 1: X_1(M) = Y(M)
  std::vector<std::vector<Subset>> x_cur(nchains);
  for (std::size_t c = 0; c < nchains; ++c) x_cur[c] = markers(chains[c], f);

  for (int iter = 1; iter <= h; ++iter) {
    NestedFamilyState state{iter, {}, WitnessAssignment(n, band), 0};
    state.chains.resize(nchains);
    for (std::size_t c = 0; c < nchains; ++c) {
      state.chains[c].markers = x_cur[c];
      state.marked_count += binomial(static_cast<int>(x_cur[c].size()), k);
    }

    // Badness relative to L_iter, pool-restricted: bucket the marked chains by
    // (d-th marker, d), then search witnesses per bucket.
    struct BucketKey {
      Subset v;
      int d;
      bool operator==(const BucketKey& o) const { return d == o.d && v == o.v; }
    };
    struct BucketKeyHash {
      std::size_t operator()(const BucketKey& b) const { return b.v.hash() * 17 + static_cast<std::size_t>(b.d); }
    };
    std::unordered_map<BucketKey, std::vector<MarkedChain>, BucketKeyHash> buckets;
    std::unordered_map<BucketKey, std::vector<std::size_t>, BucketKeyHash> bucket_hosts;
    for (std::size_t c = 0; c < nchains; ++c) {
      const auto& xs = x_cur[c];
      for_each_combination(static_cast<int>(xs.size()), k, [&](const std::vector<int>& idx) {
        std::vector<Subset> marks;
        marks.reserve(static_cast<std::size_t>(k));
        for (int i : idx) marks.push_back(xs[static_cast<std::size_t>(i)]);
        for (int d = 1; d <= k; ++d) {
          BucketKey key{marks[static_cast<std::size_t>(d - 1)], d};
          buckets[key].push_back(MarkedChain{chains[c], marks});
          bucket_hosts[key].push_back(c);
        }
      });
    }

    // fix witnesses; remember which (v, d, side) are bad relative to L_iter
    struct BadMark {
      std::vector<char> lower_d;  // indexed by d-1
      std::vector<char> upper_d;
    };
    std::unordered_map<Subset, BadMark, SubsetHash> bad;
    for (auto& [key, view] : buckets) {
      if (!band.contains(key.v.weight())) continue;
      auto& entry = bad[key.v];
      if (entry.lower_d.empty()) {
        entry.lower_d.assign(static_cast<std::size_t>(k), 0);
        entry.upper_d.assign(static_cast<std::size_t>(k), 0);
      }
      auto lower = find_witness(key.v, key.d, view, pool, h, ZoneSide::Below, band);
      if (lower) {
        entry.lower_d[static_cast<std::size_t>(key.d - 1)] = 1;
        state.witnesses.set(key.v, key.d, ZoneSide::Below, *lower);
      }
      auto upper = find_witness(key.v, key.d, view, pool, h, ZoneSide::Above, band);
      if (upper) {
        entry.upper_d[static_cast<std::size_t>(key.d - 1)] = 1;
        state.witnesses.set(key.v, key.d, ZoneSide::Above, *upper);
      }
    }

    // per-chain bad marker sets (bad relative to M and L_iter: the bucket at
    // (v,d) must contain a pair hosted by M)
    std::unordered_map<BucketKey, std::vector<char>, BucketKeyHash> host_flags;
    for (auto& [key, hosts] : bucket_hosts) {
      auto& flags = host_flags[key];
      flags.assign(nchains, 0);
      for (std::size_t c : hosts) flags[c] = 1;
    }
    std::vector<std::vector<Subset>> x_next(nchains);
    for (std::size_t c = 0; c < nchains; ++c) {
      auto& cs = state.chains[c];
      for (const auto& vtx : x_cur[c]) {
        auto it = bad.find(vtx);
        if (it == bad.end()) continue;
        bool is_lower = false, is_upper = false;
        for (int d = 1; d <= k; ++d) {
          BucketKey key{vtx, d};
          auto hf = host_flags.find(key);
          bool hosted = hf != host_flags.end() && hf->second[c];
          if (!hosted) continue;
          if (it->second.lower_d[static_cast<std::size_t>(d - 1)]) is_lower = true;
          if (it->second.upper_d[static_cast<std::size_t>(d - 1)]) is_upper = true;
        }
        if (is_lower) cs.bad_lower.push_back(vtx);
        if (is_upper) cs.bad_upper.push_back(vtx);
        if (is_lower || is_upper) cs.bad_all.push_back(vtx);
      }

      std::size_t x = x_cur[c].size();
      std::size_t b = cs.bad_all.size();
      if (x == 0) {
        cs.chain_class = ChainClass::EmptyMarkers;
      } else if (b * static_cast<std::size_t>(build.c_constant) <= x) {
        cs.chain_class = ChainClass::LowBadShare;
      } else {
        cs.chain_class = ChainClass::HighBadShare;
      }

      if (cs.chain_class == ChainClass::LowBadShare) {
        for (const auto& vtx : x_cur[c]) {
          if (std::find(cs.bad_all.begin(), cs.bad_all.end(), vtx) == cs.bad_all.end()) {
            x_next[c].push_back(vtx);
          }
        }
      }
    }

    build.states.push_back(std::move(state));
    x_cur = std::move(x_next);
  }
  return build;
}

std::vector<MarkedChain> state_marked_chains(const NestedBuild& build, int iteration) {
  if (iteration < 1 || iteration > static_cast<int>(build.states.size())) {
    throw ParamError("iteration out of range");
  }
  auto chains = enumerate_full_chains(build.n);
  const auto& state = build.states[static_cast<std::size_t>(iteration - 1)];
  std::vector<MarkedChain> out;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& xs = state.chains[c].markers;
    for_each_combination(static_cast<int>(xs.size()), build.k, [&](const std::vector<int>& idx) {
      std::vector<Subset> marks;
      for (int i : idx) marks.push_back(xs[static_cast<std::size_t>(i)]);
      out.push_back(MarkedChain{chains[c], marks});
    });
  }
  return out;
}

std::vector<MarkedChain> state_bucket(const NestedBuild& build, int iteration, const Subset& v,
                                      int d) {
  std::vector<MarkedChain> out;
  for (auto& mc : state_marked_chains(build, iteration)) {
    if (static_cast<int>(mc.marks.size()) >= d && mc.marks[static_cast<std::size_t>(d - 1)] == v) {
      out.push_back(std::move(mc));
    }
  }
  return out;
}

}  // namespace subposet
