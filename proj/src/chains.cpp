#include "subposet/chains.hpp"

#include <algorithm>

namespace subposet {

std::vector<Subset> markers(const FullChain& m, const Family& f) {
  std::vector<Subset> out;
  m.for_each_top_down([&](const Subset& v) {
    if (f.contains(v)) out.push_back(v);
    return true;
  });
  return out;
}

Rational lym_sum(const Family& f, int n) {
  Rational total = 0;
  for (const auto& v : f.vertices()) {
    total += Rational(1, binomial(n, v.weight()));
  }
  return total;
}

namespace {

void descend(const std::vector<Subset>& by_weight_desc, std::size_t from,
             std::vector<Subset>& stack, int k, int n, BigInt& total) {
  if (static_cast<int>(stack.size()) == k) {
    total += chains_through_count(stack, n);
    return;
  }
  for (std::size_t i = from; i < by_weight_desc.size(); ++i) {
    if (!stack.empty() && !by_weight_desc[i].is_proper_subset_of(stack.back())) continue;
    stack.push_back(by_weight_desc[i]);
    descend(by_weight_desc, i + 1, stack, k, n, total);
    stack.pop_back();
  }
}

}  // namespace

BigInt count_marked_chains(const Family& f, int k, int n, std::size_t family_cap) {
  if (k < 1) throw ParamError("count_marked_chains requires k >= 1");
  if (f.size() > family_cap) {
    throw SizeError("family of " + std::to_string(f.size()) +
                    " vertices exceeds the k-chain enumeration budget");
  }
  std::vector<Subset> desc = f.vertices();
  std::sort(desc.begin(), desc.end(), [](const Subset& a, const Subset& b) { return b < a; });
  BigInt total = 0;
  std::vector<Subset> stack;
  descend(desc, 0, stack, k, n, total);
  return total;
}

BigInt count_marked_chains_oracle(const Family& f, int k, int n, int cap) {
  if (k < 1) throw ParamError("count_marked_chains_oracle requires k >= 1");
  BigInt total = 0;
  for_each_full_chain(
      n,
      [&](const FullChain& m) {
        int x = 0;
        m.for_each_top_down([&](const Subset& v) {
          if (f.contains(v)) ++x;
          return true;
        });
        total += binomial(x, k);
        return true;
      },
      cap);
  return total;
}

MarkerHistogram marker_histogram(const Family& f, int n, int cap) {
  MarkerHistogram h;
  for_each_full_chain(
      n,
      [&](const FullChain& m) {
        int x = 0;
        m.for_each_top_down([&](const Subset& v) {
          if (f.contains(v)) ++x;
          return true;
        });
        h.counts[x] += 1;
        return true;
      },
      cap);
  return h;
}

DensityResult density_check(const Family& f, int k, const Rational& epsilon, int n) {
  if (k < 2) throw ParamError("density_check requires k >= 2");
  if (epsilon <= 0) throw ParamError("density_check requires epsilon > 0");
  DensityResult r;
  Rational threshold = (Rational(k - 1) + epsilon) * Rational(binomial(n, n / 2));
  r.hypothesis_met = Rational(static_cast<long long>(f.size())) >= threshold;
  r.count = count_marked_chains(f, k, n);
  r.bound = epsilon / Rational(k) * Rational(factorial(n));
  r.holds = Rational(r.count) >= r.bound;
  return r;
}

}  // namespace subposet
