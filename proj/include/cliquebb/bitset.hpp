#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace cliquebb {

// Fixed-width bit vector sized at construction.  Intersection is wordwise
// AND, which is all the search hot loop needs.
class bitset {
 public:
  bitset() = default;
  explicit bitset(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  int capacity() const { return nbits_; }

  bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
  void set(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  void fill() {
    for (int v = 0; v < nbits_; ++v) set(v);
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool intersects(const bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  void intersect_with(const bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  }

  // out must already have the same capacity.
  static void intersect(const bitset& a, const bitset& b, bitset& out) {
    for (std::size_t i = 0; i < a.words_.size(); ++i)
      out.words_[i] = a.words_[i] & b.words_[i];
  }

  int first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    return -1;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t bits = words_[i];
      while (bits) {
        f(static_cast<int>(i * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const bitset&, const bitset&) = default;

 private:
  int nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cliquebb
