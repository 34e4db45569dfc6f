#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace jetham {

/// Unordered multiset of independent-variable indices (0-based), stored
/// sorted so that (t,x) and (x,t) are the same object.
class MultiIndex {
 public:
  static constexpr std::size_t kMaxOrder = 15;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> indices);
  explicit MultiIndex(std::span<const int> indices);

  std::size_t order() const { return size_; }
  bool empty() const { return size_ == 0; }

  /// Multiplicity I[i].
  int count(int i) const;
  int operator[](std::size_t k) const { return idx_[k]; }

  /// I with one more copy of i.
  MultiIndex with(int i) const;
  /// I with one copy of i removed; i must be present.
  MultiIndex without_one(int i) const;

  std::vector<int> indices() const { return {idx_.begin(), idx_.begin() + size_}; }
  const std::uint8_t* begin() const { return idx_.data(); }
  const std::uint8_t* end() const { return idx_.data() + size_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  /// Shorter first, then lexicographic.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kMaxOrder> idx_{};
  std::uint8_t size_ = 0;
};

/// All multiindices of length exactly k over n independents, in canonical order.
std::vector<MultiIndex> multi_indices_of_order(int n, int k);
/// All multiindices of length 0..k, in canonical order.
std::vector<MultiIndex> multi_indices_up_to(int n, int k);

}  // namespace jetham

template <>
struct std::hash<jetham::MultiIndex> {
  std::size_t operator()(const jetham::MultiIndex& m) const { return m.hash(); }
};
