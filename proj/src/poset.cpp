#include "subposet/poset.hpp"

#include <algorithm>
#include <numeric>

namespace subposet {

namespace {

// In-place Warshall closure over a strict relation matrix.
void close_transitively(std::vector<char>& m, int n) {
  for (int w = 0; w < n; ++w) {
    for (int u = 0; u < n; ++u) {
      if (!m[static_cast<std::size_t>(u) * n + w]) continue;
      for (int v = 0; v < n; ++v) {
        if (m[static_cast<std::size_t>(w) * n + v]) m[static_cast<std::size_t>(u) * n + v] = 1;
      }
    }
  }
}

}  // namespace

Poset Poset::from_relations(int element_count, const std::vector<std::pair<int, int>>& pairs,
                            std::vector<std::string> labels) {
  if (element_count <= 0) throw ParamError("poset needs at least one element");
  Poset p;
  p.n_ = element_count;
  p.less_.assign(static_cast<std::size_t>(element_count) * element_count, 0);
  for (auto [u, v] : pairs) {
    if (u < 0 || u >= element_count || v < 0 || v >= element_count) {
      throw IndexError("relation index out of range: (" + std::to_string(u) + "," +
                       std::to_string(v) + ")");
    }
    if (u == v) throw CycleError("reflexive pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
    p.less_[static_cast<std::size_t>(u) * element_count + v] = 1;
  }
  close_transitively(p.less_, element_count);
  for (int u = 0; u < element_count; ++u) {
    if (p.less_[static_cast<std::size_t>(u) * element_count + u]) {
      throw CycleError("closure relates element " + std::to_string(u) + " to itself");
    }
  }
  if (labels.empty()) {
    for (int i = 0; i < element_count; ++i) labels.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != element_count) {
    throw ParamError("label count does not match element count");
  }
  p.labels_ = std::move(labels);
  return p;
}

Poset Poset::restricted_to(const std::vector<int>& keep) const {
  std::vector<std::pair<int, int>> rel;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    labels.push_back(label(keep[i]));
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (less(keep[i], keep[j])) rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return from_relations(static_cast<int>(keep.size()), rel, std::move(labels));
}

std::vector<std::pair<int, int>> Poset::relation_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      if (less(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

Poset make_named_poset(const std::string& name, int p1, int p2) {
  if (name == "chain") {
    int k = p1;
    if (k < 1) throw ParamError("chain needs k >= 1");
    std::vector<std::pair<int, int>> rel;
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) {
      labels.push_back("c" + std::to_string(i + 1));
      if (i + 1 < k) rel.emplace_back(i, i + 1);
    }
    return Poset::from_relations(k, rel, std::move(labels));
  }
  if (name == "fork") {
    int k = p1;
    if (k < 1) throw ParamError("fork needs k >= 1");
    std::vector<std::pair<int, int>> rel;
    std::vector<std::string> labels = {"A"};
    for (int i = 1; i <= k; ++i) {
      labels.push_back("B" + std::to_string(i));
      rel.emplace_back(0, i);
    }
    return Poset::from_relations(k + 1, rel, std::move(labels));
  }
  if (name == "butterfly") {
    std::vector<std::pair<int, int>> rel;
    for (int a = 0; a < 2; ++a) {
      for (int b = 2; b < 4; ++b) rel.emplace_back(a, b);
    }
    return Poset::from_relations(4, rel, {"A1", "A2", "B1", "B2"});
  }
  if (name == "K_rs") {
    int r = p1, s = p2;
    if (r < 2 || s < 2) throw ParamError("K_rs needs r,s >= 2");
    std::vector<std::pair<int, int>> rel;
    std::vector<std::string> labels;
    for (int a = 0; a < r; ++a) labels.push_back("A" + std::to_string(a + 1));
    for (int b = 0; b < s; ++b) labels.push_back("B" + std::to_string(b + 1));
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < s; ++b) rel.emplace_back(a, r + b);
    }
    return Poset::from_relations(r + s, rel, std::move(labels));
  }
  if (name == "H_m") {
    int m = p1;
    if (m < 1) throw ParamError("H_m needs m >= 1");
    std::vector<std::pair<int, int>> rel;
    std::vector<std::string> labels;
    for (int i = 0; i < m; ++i) labels.push_back("x" + std::to_string(i + 1));
    for (int j = 0; j < m; ++j) labels.push_back("y" + std::to_string(j + 1));
    // x_i below y_j exactly for j = i..m
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) rel.emplace_back(i, m + j);
    }
    return Poset::from_relations(2 * m, rel, std::move(labels));
  }
  throw ParamError("unknown poset family: " + name);
}

std::vector<std::pair<int, int>> hasse_covers(const Poset& p) {
  std::vector<std::pair<int, int>> covers;
  int n = p.size();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (!p.less(u, v)) continue;
      bool direct = true;
      for (int w = 0; w < n && direct; ++w) {
        if (p.less(u, w) && p.less(w, v)) direct = false;
      }
      if (direct) covers.emplace_back(u, v);
    }
  }
  return covers;
}

int up_height(const Poset& p, int u) {
  int best = 1;
  for (int v = 0; v < p.size(); ++v) {
    if (p.less(u, v)) best = std::max(best, 1 + up_height(p, v));
  }
  return best;
}

int down_height(const Poset& p, int u) {
  int best = 1;
  for (int v = 0; v < p.size(); ++v) {
    if (p.less(v, u)) best = std::max(best, 1 + down_height(p, v));
  }
  return best;
}

namespace {

void extend_maximal(const Poset& p, std::vector<int>& chain,
                    std::vector<std::vector<int>>& out) {
  int top = chain.back();
  bool extended = false;
  for (int v = 0; v < p.size(); ++v) {
    if (!p.less(top, v)) continue;
    // keep only covers of `top` so each maximal chain is produced once
    bool cover = true;
    for (int w = 0; w < p.size() && cover; ++w) {
      if (p.less(top, w) && p.less(w, v)) cover = false;
    }
    if (!cover) continue;
    extended = true;
    chain.push_back(v);
    extend_maximal(p, chain, out);
    chain.pop_back();
  }
  if (!extended) out.push_back(chain);
}

}  // namespace

std::vector<std::vector<int>> maximal_chains(const Poset& p) {
  std::vector<std::vector<int>> out;
  for (int u = 0; u < p.size(); ++u) {
    bool minimal = true;
    for (int v = 0; v < p.size() && minimal; ++v) {
      if (p.less(v, u)) minimal = false;
    }
    if (!minimal) continue;
    std::vector<int> chain{u};
    extend_maximal(p, chain, out);
  }
  return out;
}

PosetAnalysis analyze(const Poset& p, int k) {
  PosetAnalysis a;
  auto chains = maximal_chains(p);
  a.height = 0;
  a.k_saturated = true;
  for (const auto& c : chains) {
    a.height = std::max(a.height, static_cast<int>(c.size()));
    if (static_cast<int>(c.size()) != k) a.k_saturated = false;
  }

  auto covers = hasse_covers(p);
  if (static_cast<int>(covers.size()) != p.size() - 1) {
    a.tree_hasse = false;
  } else {
    // connectivity of the undirected cover graph
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(p.size()));
    for (auto [u, v] : covers) {
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<char> seen(static_cast<std::size_t>(p.size()), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    a.tree_hasse = reached == p.size();
  }
  return a;
}

namespace {

// Growable poset used only inside saturate(): relations as a closed matrix
// over original + appended elements.
struct GrowPoset {
  int n;
  std::vector<char> less;

  bool lt(int u, int v) const { return less[static_cast<std::size_t>(u) * n + v]; }

  static GrowPoset from(const Poset& p, int capacity) {
    GrowPoset g;
    g.n = capacity;
    g.less.assign(static_cast<std::size_t>(capacity) * capacity, 0);
    for (int u = 0; u < p.size(); ++u) {
      for (int v = 0; v < p.size(); ++v) {
        if (p.less(u, v)) g.less[static_cast<std::size_t>(u) * capacity + v] = 1;
      }
    }
    return g;
  }

  Poset materialize(int count, const std::vector<std::string>& base_labels) const {
    std::vector<std::pair<int, int>> rel;
    std::vector<std::string> labels;
    for (int u = 0; u < count; ++u) {
      labels.push_back(u < static_cast<int>(base_labels.size())
                           ? base_labels[static_cast<std::size_t>(u)]
                           : "s" + std::to_string(u));
      for (int v = 0; v < count; ++v) {
        if (lt(u, v)) rel.emplace_back(u, v);
      }
    }
    return Poset::from_relations(count, rel, std::move(labels));
  }
};

struct SaturateSearch {
  int k;
  int budget;       // max appended elements
  int base_size;
  std::vector<std::string> base_labels;
  long long nodes = 0;
  static constexpr long long kNodeCap = 2'000'000;

  // Maximal chains of the active prefix [0, count).
  std::vector<std::vector<int>> chains(const GrowPoset& g, int count) const {
    std::vector<std::vector<int>> out;
    std::vector<int> chain;
    for (int u = 0; u < count; ++u) {
      bool minimal = true;
      for (int v = 0; v < count && minimal; ++v) {
        if (g.lt(v, u)) minimal = false;
      }
      if (minimal) {
        chain = {u};
        grow(g, count, chain, out);
      }
    }
    return out;
  }

  void grow(const GrowPoset& g, int count, std::vector<int>& chain,
            std::vector<std::vector<int>>& out) const {
    int top = chain.back();
    bool extended = false;
    for (int v = 0; v < count; ++v) {
      if (!g.lt(top, v)) continue;
      bool cover = true;
      for (int w = 0; w < count && cover; ++w) {
        if (g.lt(top, w) && g.lt(w, v)) cover = false;
      }
      if (!cover) continue;
      extended = true;
      chain.push_back(v);
      grow(g, count, chain, out);
      chain.pop_back();
    }
    if (!extended) out.push_back(chain);
  }

  int up_h(const GrowPoset& g, int count, int u) const {
    int best = 1;
    for (int v = 0; v < count; ++v) {
      if (g.lt(u, v)) best = std::max(best, 1 + up_h(g, count, v));
    }
    return best;
  }

  int down_h(const GrowPoset& g, int count, int u) const {
    int best = 1;
    for (int v = 0; v < count; ++v) {
      if (g.lt(v, u)) best = std::max(best, 1 + down_h(g, count, v));
    }
    return best;
  }

  bool run(GrowPoset& g, int count, std::optional<Poset>& result) {
    if (++nodes > kNodeCap) throw BudgetError("saturation search exceeded its node cap");
    auto cs = chains(g, count);
    std::vector<int> deficient;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (static_cast<int>(cs[i].size()) > k) return false;  // overshot: dead branch
      if (static_cast<int>(cs[i].size()) < k) deficient.push_back(static_cast<int>(i));
    }
    if (deficient.empty()) {
      result = g.materialize(count, base_labels);
      return true;
    }
    if (count - base_size >= budget) return false;

    const auto& c = cs[static_cast<std::size_t>(deficient.front())];
    int fresh = count;

    // Move 1: pendant below the chain's bottom.
    if (up_h(g, count, c.front()) < k) {
      GrowPoset next = g;
      int b = c.front();
      next.less[static_cast<std::size_t>(fresh) * next.n + b] = 1;
      for (int v = 0; v < count; ++v) {
        if (g.lt(b, v)) next.less[static_cast<std::size_t>(fresh) * next.n + v] = 1;
      }
      if (run(next, count + 1, result)) return true;
    }
    // Move 2: pendant above the chain's top.
    if (down_h(g, count, c.back()) < k) {
      GrowPoset next = g;
      int t = c.back();
      next.less[static_cast<std::size_t>(t) * next.n + fresh] = 1;
      for (int v = 0; v < count; ++v) {
        if (g.lt(v, t)) next.less[static_cast<std::size_t>(v) * next.n + fresh] = 1;
      }
      if (run(next, count + 1, result)) return true;
    }
    // Move 3: subdivide a cover step of the chain.
    for (std::size_t j = 0; j + 1 < c.size(); ++j) {
      int x = c[j], y = c[j + 1];
      if (down_h(g, count, x) + up_h(g, count, y) >= k) continue;
      GrowPoset next = g;
      next.less[static_cast<std::size_t>(x) * next.n + fresh] = 1;
      next.less[static_cast<std::size_t>(fresh) * next.n + y] = 1;
      for (int v = 0; v < count; ++v) {
        if (g.lt(v, x)) next.less[static_cast<std::size_t>(v) * next.n + fresh] = 1;
        if (g.lt(y, v)) next.less[static_cast<std::size_t>(fresh) * next.n + v] = 1;
      }
      if (run(next, count + 1, result)) return true;
    }
    return false;
  }
};

}  // namespace

Poset saturate(const Poset& p) {
  int k = analyze(p, 0).height;
  auto base = analyze(p, k);
  if (!base.tree_hasse) throw NotTreeError("saturate requires a tree Hasse diagram");
  if (k < 2) throw ParamError("saturate requires height >= 2");
  if (base.k_saturated) return p;

  SaturateSearch search;
  search.k = k;
  search.budget = k * p.size();
  search.base_size = p.size();
  search.base_labels = p.labels();

  GrowPoset g = GrowPoset::from(p, p.size() + search.budget);
  std::optional<Poset> result;
  if (!search.run(g, p.size(), result)) {
    throw BudgetError("saturation not found within " + std::to_string(search.budget) +
                      " added elements");
  }
  return *result;
}

namespace {

bool is_chain_poset(const Poset& p) {
  for (int u = 0; u < p.size(); ++u) {
    for (int v = u + 1; v < p.size(); ++v) {
      if (!p.comparable(u, v)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<DecompositionStep> decompose(const Poset& input) {
  int k = analyze(input, 0).height;
  {
    auto a = analyze(input, k);
    if (!a.tree_hasse) throw NotTreeError("decompose requires a tree Hasse diagram");
    if (!a.k_saturated) throw NotSaturatedError("decompose requires a k-saturated poset");
  }

  std::vector<DecompositionStep> steps;
  Poset cur = input;
  while (!is_chain_poset(cur)) {
    auto covers = hasse_covers(cur);
    std::vector<int> degree(static_cast<std::size_t>(cur.size()), 0);
    for (auto [u, v] : covers) {
      ++degree[static_cast<std::size_t>(u)];
      ++degree[static_cast<std::size_t>(v)];
    }

    bool advanced = false;
    for (int leaf = 0; leaf < cur.size() && !advanced; ++leaf) {
      if (degree[static_cast<std::size_t>(leaf)] != 1) continue;
      for (int anchor = 0; anchor < cur.size() && !advanced; ++anchor) {
        if (anchor == leaf || !cur.comparable(leaf, anchor)) continue;
        bool below = cur.less(leaf, anchor);  // leaf at the bottom of the interval
        std::vector<int> interval;
        for (int z = 0; z < cur.size(); ++z) {
          bool inside = below ? (cur.leq(leaf, z) && cur.leq(z, anchor))
                              : (cur.leq(anchor, z) && cur.leq(z, leaf));
          if (inside) interval.push_back(z);
        }
        if (static_cast<int>(interval.size()) > k) continue;
        bool chain = true;
        for (std::size_t i = 0; i < interval.size() && chain; ++i) {
          for (std::size_t j = i + 1; j < interval.size() && chain; ++j) {
            if (!cur.comparable(interval[i], interval[j])) chain = false;
          }
        }
        if (!chain) continue;

        std::vector<int> kept;
        for (int z = 0; z < cur.size(); ++z) {
          if (z == anchor || std::find(interval.begin(), interval.end(), z) == interval.end()) {
            kept.push_back(z);
          }
        }
        Poset remaining = cur.restricted_to(kept);
        auto ra = analyze(remaining, k);
        if (!ra.k_saturated || !ra.tree_hasse) continue;

        DecompositionStep step;
        // ascending order inside the interval
        std::sort(interval.begin(), interval.end(), [&](int a, int b) { return cur.less(a, b); });
        step.interval = interval;
        step.anchor = anchor;
        step.leaf = leaf;
        step.direction = below ? ZoneSide::Below : ZoneSide::Above;
        step.remaining = remaining;
        step.kept = kept;
        step.anchor_in_remaining = static_cast<int>(
            std::find(kept.begin(), kept.end(), anchor) - kept.begin());
        steps.push_back(std::move(step));
        cur = steps.back().remaining;
        advanced = true;
      }
    }
    if (!advanced) {
      throw NotSaturatedError("no eligible leaf interval; poset is not decomposable");
    }
  }
  return steps;
}

bool poset_map_valid(const Poset& host, const Poset& pattern, const std::vector<int>& image,
                     bool induced) {
  if (static_cast<int>(image.size()) != pattern.size()) return false;
  for (std::size_t i = 0; i < image.size(); ++i) {
    for (std::size_t j = 0; j < image.size(); ++j) {
      if (i == j) continue;
      if (image[i] == image[j]) return false;
      bool pat = pattern.less(static_cast<int>(i), static_cast<int>(j));
      bool img = host.less(image[i], image[j]);
      if (pat && !img) return false;
      if (induced && !pat && !pattern.less(static_cast<int>(j), static_cast<int>(i)) && img) {
        return false;
      }
    }
  }
  return true;
}

namespace {

bool embed_rec(const Poset& host, const Poset& pattern, bool induced, std::vector<int>& image,
               std::vector<char>& used, int next) {
  if (next == pattern.size()) return true;
  for (int cand = 0; cand < host.size(); ++cand) {
    if (used[static_cast<std::size_t>(cand)]) continue;
    bool ok = true;
    for (int prev = 0; prev < next && ok; ++prev) {
      bool plt = pattern.less(prev, next);
      bool pgt = pattern.less(next, prev);
      bool hlt = host.less(image[static_cast<std::size_t>(prev)], cand);
      bool hgt = host.less(cand, image[static_cast<std::size_t>(prev)]);
      if (plt && !hlt) ok = false;
      if (pgt && !hgt) ok = false;
      if (induced && !plt && !pgt && (hlt || hgt)) ok = false;
    }
    if (!ok) continue;
    image[static_cast<std::size_t>(next)] = cand;
    used[static_cast<std::size_t>(cand)] = 1;
    if (embed_rec(host, pattern, induced, image, used, next + 1)) return true;
    used[static_cast<std::size_t>(cand)] = 0;
  }
  return false;
}

}  // namespace

std::optional<PosetMap> find_poset_embedding(const Poset& host, const Poset& pattern,
                                             bool induced) {
  std::vector<int> image(static_cast<std::size_t>(pattern.size()), -1);
  std::vector<char> used(static_cast<std::size_t>(host.size()), 0);
  if (!embed_rec(host, pattern, induced, image, used, 0)) return std::nullopt;
  return PosetMap{std::move(image), induced};
}

}  // namespace subposet
