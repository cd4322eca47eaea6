#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subposet/errors.hpp"

namespace subposet {

/// A subset of the ground set {1,...,n}, stored as characteristic bits.
/// Element i occupies bit position i-1. Width n is fixed per instance so the
/// same type serves B_4 and B_8192.
class Subset {
 public:
  Subset() : n_(0) {}

  explicit Subset(int n) : n_(n), words_((n + 63) / 64, 0) {
    if (n < 0) throw ParamError("Subset: negative ground-set size");
  }

  static Subset empty_set(int n) { return Subset(n); }

  static Subset full_set(int n) {
    Subset s(n);
    for (int i = 0; i < n; ++i) s.set_pos(i);
    return s;
  }

  /// Build from 1-based ground-set elements.
  static Subset of(int n, std::initializer_list<int> elements) {
    Subset s(n);
    for (int e : elements) s.add_element(e);
    return s;
  }

  static Subset of(int n, const std::vector<int>& elements) {
    Subset s(n);
    for (int e : elements) s.add_element(e);
    return s;
  }

  int ground_size() const { return n_; }

  int weight() const {
    int w = 0;
    for (std::uint64_t word : words_) w += std::popcount(word);
    return w;
  }

  bool test_pos(int pos) const { return (words_[pos >> 6] >> (pos & 63)) & 1u; }
  void set_pos(int pos) { words_[pos >> 6] |= std::uint64_t{1} << (pos & 63); }
  void clear_pos(int pos) { words_[pos >> 6] &= ~(std::uint64_t{1} << (pos & 63)); }

  bool has_element(int e) const {
    check_element(e);
    return test_pos(e - 1);
  }

  void add_element(int e) {
    check_element(e);
    set_pos(e - 1);
  }

  void remove_element(int e) {
    check_element(e);
    clear_pos(e - 1);
  }

  Subset with_element(int e) const {
    Subset s = *this;
    s.add_element(e);
    return s;
  }

  Subset without_element(int e) const {
    Subset s = *this;
    s.remove_element(e);
    return s;
  }

  bool is_empty() const {
    for (std::uint64_t word : words_) {
      if (word) return false;
    }
    return true;
  }

  bool is_subset_of(const Subset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  bool is_proper_subset_of(const Subset& other) const {
    return is_subset_of(other) && *this != other;
  }

  bool comparable_with(const Subset& other) const {
    return is_subset_of(other) || other.is_subset_of(*this);
  }

  /// 0-based bit positions, ascending.
  std::vector<int> positions() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(weight()));
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t word = words_[i];
      while (word) {
        int b = std::countr_zero(word);
        out.push_back(static_cast<int>(i * 64) + b);
        word &= word - 1;
      }
    }
    return out;
  }

  /// 1-based ground-set elements, ascending.
  std::vector<int> elements() const {
    std::vector<int> out = positions();
    for (int& p : out) ++p;
    return out;
  }

  Subset set_union(const Subset& other) const {
    Subset s = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] |= other.words_[i];
    return s;
  }

  Subset set_intersection(const Subset& other) const {
    Subset s = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] &= other.words_[i];
    return s;
  }

  Subset set_difference(const Subset& other) const {
    Subset s = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] &= ~other.words_[i];
    return s;
  }

  Subset complement() const {
    Subset s = full_set(n_);
    return s.set_difference(*this);
  }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator!=(const Subset& a, const Subset& b) { return !(a == b); }

  /// Total order for canonical sorting: by weight, then lexicographic on bits.
  friend bool operator<(const Subset& a, const Subset& b) {
    int wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(n_) * 0x9e3779b97f4a7c15ull;
    for (std::uint64_t word : words_) {
      h ^= word + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  /// Hex encoding of the bit word(s), low word last, no leading zeros beyond
  /// one digit. Matches the compact family file format.
  std::string to_hex() const;
  static Subset from_hex(int n, const std::string& hex);

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) out += ",";
      out += std::to_string(e);
      first = false;
    }
    out += "}";
    return out;
  }

 private:
  void check_element(int e) const {
    if (e < 1 || e > n_) {
      throw IndexError("Subset: element " + std::to_string(e) + " outside [1," +
                       std::to_string(n_) + "]");
    }
  }

  int n_;
  std::vector<std::uint64_t> words_;
};

struct SubsetHash {
  std::size_t operator()(const Subset& s) const { return s.hash(); }
};

}  // namespace subposet
