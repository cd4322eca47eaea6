#include "subposet/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace subposet {

Band band_bounds(int n) {
  if (n < 2) throw ParamError("band_bounds requires n >= 2");
  double half = 2.0 * std::sqrt(static_cast<double>(n) * std::log(static_cast<double>(n)));
  return Band{n / 2.0 - half, n / 2.0 + half};
}

Family Family::explicit_family(std::vector<Subset> vertices, int n) {
  Family f;
  f.explicit_ = true;
  f.n_ = n;
  for (const auto& v : vertices) {
    if (v.ground_size() != n) throw ParamError("family vertex has mismatched ground size");
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  f.weight_lo_ = vertices.empty() ? 0 : vertices.front().weight();
  f.weight_hi_ = vertices.empty() ? n : vertices.back().weight();
  f.vertices_ = std::move(vertices);
  return f;
}

Family Family::oracle_family(std::function<bool(const Subset&)> member, int n, int weight_lo,
                             int weight_hi) {
  Family f;
  f.explicit_ = false;
  f.n_ = n;
  f.weight_lo_ = weight_lo;
  f.weight_hi_ = weight_hi;
  f.member_ = std::move(member);
  return f;
}

bool Family::contains(const Subset& v) const {
  if (!explicit_) {
    int w = v.weight();
    if (w < weight_lo_ || w > weight_hi_) return false;
    return member_(v);
  }
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t Family::size() const {
  if (!explicit_) throw SizeError("oracle family has no enumerable size");
  return vertices_.size();
}

const std::vector<Subset>& Family::vertices() const {
  if (!explicit_) throw SizeError("oracle family cannot be enumerated");
  return vertices_;
}

FullChain::FullChain(Subset anchor, std::vector<int> order, Direction dir, int n)
    : anchor_(std::move(anchor)), order_(std::move(order)), dir_(dir), n_(n) {
  std::size_t expect = dir_ == Direction::Down
                           ? static_cast<std::size_t>(anchor_.weight())
                           : static_cast<std::size_t>(n - anchor_.weight());
  if (order_.size() != expect) throw ParamError("chain order length does not match anchor");
  for (int pos : order_) {
    bool inside = anchor_.test_pos(pos);
    if (dir_ == Direction::Down ? !inside : inside) {
      throw ParamError("chain order uses a position outside the sublattice");
    }
  }
}

void FullChain::for_each_top_down(const std::function<bool(const Subset&)>& cb) const {
  if (dir_ == Direction::Down) {
    Subset cur = anchor_;
    if (!cb(cur)) return;
    for (int pos : order_) {
      cur.clear_pos(pos);
      if (!cb(cur)) return;
    }
  } else {
    // build bottom-up, then report top-down
    std::vector<Subset> vs;
    vs.reserve(order_.size() + 1);
    Subset cur = anchor_;
    vs.push_back(cur);
    for (int pos : order_) {
      cur.set_pos(pos);
      vs.push_back(cur);
    }
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
      if (!cb(*it)) return;
    }
  }
}

std::vector<Subset> FullChain::vertices_top_down() const {
  std::vector<Subset> out;
  out.reserve(static_cast<std::size_t>(length()));
  for_each_top_down([&](const Subset& v) {
    out.push_back(v);
    return true;
  });
  return out;
}

bool FullChain::passes_through(const Subset& v) const {
  bool found = false;
  for_each_top_down([&](const Subset& u) {
    if (u == v) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

namespace {

void enumerate_subsets_of(const Subset& v, int n, std::size_t cap,
                          const std::function<void(const Subset&)>& emit) {
  auto pos = v.positions();
  int m = static_cast<int>(pos.size());
  if (m >= 63 || (std::size_t{1} << m) > cap) {
    throw SizeError("down-set enumeration of 2^" + std::to_string(m) + " vertices exceeds cap");
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Subset s(n);
    for (int i = 0; i < m; ++i) {
      if ((mask >> i) & 1u) s.set_pos(pos[static_cast<std::size_t>(i)]);
    }
    emit(s);
  }
}

}  // namespace

void for_each_level_vertex(int n, int w, const std::function<void(const Subset&)>& emit) {
  if (w < 0 || w > n) return;
  if (w == 0) {
    emit(Subset::empty_set(n));
    return;
  }
  std::vector<int> idx(static_cast<std::size_t>(w));
  for (int i = 0; i < w; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    Subset s(n);
    for (int i : idx) s.set_pos(i);
    emit(s);
    int pos = w - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - w + pos) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < w; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
}

std::vector<Subset> level_vertices(int n, int w) {
  std::vector<Subset> out;
  for_each_level_vertex(n, w, [&](const Subset& s) { out.push_back(s); });
  return out;
}

std::vector<Subset> all_vertices(int n, std::size_t cap) {
  if (n >= 63 || (std::size_t{1} << n) > cap) {
    throw SizeError("B_n enumeration of 2^" + std::to_string(n) + " vertices exceeds cap");
  }
  std::vector<Subset> out;
  out.reserve(std::size_t{1} << n);
  for (int w = 0; w <= n; ++w) {
    for_each_level_vertex(n, w, [&](const Subset& s) { out.push_back(s); });
  }
  return out;
}

std::vector<Subset> down_up_set(const Subset& v, Direction dir, int n, std::size_t cap) {
  std::vector<Subset> out;
  if (dir == Direction::Down) {
    enumerate_subsets_of(v, n, cap, [&](const Subset& s) { out.push_back(s); });
  } else {
    Subset comp = v.complement();
    enumerate_subsets_of(comp, n, cap,
                         [&](const Subset& s) { out.push_back(v.set_union(s)); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_witness_placement(const Subset& v, const std::vector<Subset>& S, ZoneSide side) {
  for (const auto& z : S) {
    bool clash = side == ZoneSide::Below ? v.is_subset_of(z) : z.is_subset_of(v);
    if (clash) {
      throw WitnessPlacementError("witness vertex " + z.to_string() +
                                  (side == ZoneSide::Below ? " lies in U(v)" : " lies in D(v)"));
    }
  }
}

bool in_forbidden_zone(const Subset& u, const Subset& v, const std::vector<Subset>& S,
                       ZoneSide side, const Band& band) {
  if (u == v) return false;
  if (side == ZoneSide::Below ? !u.is_proper_subset_of(v) : !v.is_proper_subset_of(u)) {
    return false;
  }
  if (!band.contains(u.weight())) return false;
  for (const auto& z : S) {
    if (z.is_subset_of(u) || u.is_subset_of(z)) return true;
  }
  return false;
}

std::vector<Subset> forbidden_zone(const Subset& v, const Family& S, ZoneSide side, int n,
                                   const Band& band, std::size_t cap) {
  const auto& sv = S.vertices();
  check_witness_placement(v, sv, side);
  std::vector<Subset> out;
  auto consider = [&](const Subset& u) {
    if (in_forbidden_zone(u, v, sv, side, band)) out.push_back(u);
  };
  if (side == ZoneSide::Below) {
    enumerate_subsets_of(v, n, cap, consider);
  } else {
    Subset comp = v.complement();
    enumerate_subsets_of(comp, n, cap, [&](const Subset& s) { consider(v.set_union(s)); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

void for_each_full_chain(int n, const std::function<bool(const FullChain&)>& cb, int cap) {
  if (n > cap) {
    throw SizeError("full-chain enumeration capped at n <= " + std::to_string(cap));
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  Subset top = Subset::full_set(n);
  do {
    if (!cb(FullChain(top, order, Direction::Down, n))) return;
  } while (std::next_permutation(order.begin(), order.end()));
}

std::vector<FullChain> enumerate_full_chains(int n, int cap) {
  std::vector<FullChain> out;
  for_each_full_chain(
      n,
      [&](const FullChain& c) {
        out.push_back(c);
        return true;
      },
      cap);
  return out;
}

FullChain sample_chain(const Subset& anchor, Direction dir, int n, Rng& rng) {
  std::vector<int> order =
      dir == Direction::Down ? anchor.positions() : anchor.complement().positions();
  rng.shuffle(order);
  return FullChain(anchor, std::move(order), dir, n);
}

BigInt chains_through_count(const std::vector<Subset>& q, int n) {
  if (q.empty()) return factorial(n);
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    if (!q[i + 1].is_proper_subset_of(q[i])) {
      throw NotChainError("marker sequence is not strictly nested");
    }
  }
  BigInt total = factorial(n - q.front().weight());
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    total *= factorial(q[i].weight() - q[i + 1].weight());
  }
  total *= factorial(q.back().weight());
  return total;
}

std::vector<Subset> subchain(const FullChain& m, const Family& f, const std::vector<int>& j) {
  if (j.empty()) return {};
  bool increasing = true, decreasing = true;
  for (std::size_t i = 0; i + 1 < j.size(); ++i) {
    if (j[i] >= j[i + 1]) increasing = false;
    if (j[i] <= j[i + 1]) decreasing = false;
  }
  if (!(increasing || decreasing)) throw ParamError("index sequence must be strictly monotone");
  int need = *std::max_element(j.begin(), j.end());
  if (need < 1) throw ParamError("subchain indices are 1-based");

  std::vector<Subset> members;
  m.for_each_top_down([&](const Subset& v) {
    if (f.contains(v)) members.push_back(v);
    return true;
  });
  if (static_cast<int>(members.size()) < need) return {};
  std::vector<Subset> out;
  out.reserve(j.size());
  for (int idx : j) out.push_back(members[static_cast<std::size_t>(idx - 1)]);
  return out;
}

}  // namespace subposet
