#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "misproc/graph.hpp"

namespace misproc {

/// Membership bitmap over 0..n-1 with a cached cardinality.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  VertexSet(std::size_t n, std::initializer_list<Vertex> members)
      : VertexSet(n) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet full(std::size_t n) {
    VertexSet s(n);
    for (std::size_t v = 0; v < n; ++v) s.insert(static_cast<Vertex>(v));
    return s;
  }

  std::size_t universe() const { return n_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Vertex v) const {
    return v < n_ && ((words_[v >> 6] >> (v & 63)) & 1u) != 0;
  }

  void insert(Vertex v) {
    auto& w = words_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if ((w & bit) == 0) {
      w |= bit;
      ++count_;
    }
  }

  void erase(Vertex v) {
    auto& w = words_[v >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if ((w & bit) != 0) {
      w &= ~bit;
      --count_;
    }
  }

  bool subset_of(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
      if ((words_[i] & ~o) != 0) return false;
    }
    return true;
  }

  bool intersects(const VertexSet& other) const {
    const std::size_t k = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < k; ++i) {
      if ((words_[i] & other.words_[i]) != 0) return true;
    }
    return false;
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        out.push_back(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const VertexSet& o) const {
    return n_ == o.n_ && words_ == o.words_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

}  // namespace misproc
