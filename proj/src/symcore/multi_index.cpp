#include "jetham/multi_index.hpp"

#include <string>

#include "jetham/errors.hpp"

namespace jetham {

MultiIndex::MultiIndex(std::initializer_list<int> indices)
    : MultiIndex(std::span<const int>(indices.begin(), indices.size())) {}

MultiIndex::MultiIndex(std::span<const int> indices) {
  if (indices.size() > kMaxOrder) {
    throw OrderOverflow("multiindex longer than " + std::to_string(kMaxOrder));
  }
  for (int i : indices) {
    if (i < 0 || i > 255) throw DomainError("multiindex entry out of range: " + std::to_string(i));
    idx_[size_++] = static_cast<std::uint8_t>(i);
  }
  std::sort(idx_.begin(), idx_.begin() + size_);
}

int MultiIndex::count(int i) const {
  return static_cast<int>(std::count(begin(), end(), static_cast<std::uint8_t>(i)));
}

MultiIndex MultiIndex::with(int i) const {
  if (size_ == kMaxOrder) {
    throw OrderOverflow("multiindex longer than " + std::to_string(kMaxOrder));
  }
  if (i < 0 || i > 255) throw DomainError("multiindex entry out of range: " + std::to_string(i));
  MultiIndex r = *this;
  auto v = static_cast<std::uint8_t>(i);
  auto* pos = std::upper_bound(r.idx_.data(), r.idx_.data() + r.size_, v);
  std::copy_backward(pos, r.idx_.data() + r.size_, r.idx_.data() + r.size_ + 1);
  *pos = v;
  ++r.size_;
  return r;
}

MultiIndex MultiIndex::without_one(int i) const {
  MultiIndex r = *this;
  auto v = static_cast<std::uint8_t>(i);
  auto* pos = std::find(r.idx_.data(), r.idx_.data() + r.size_, v);
  if (pos == r.idx_.data() + r.size_) {
    throw DomainError("index " + std::to_string(i) + " not in multiindex");
  }
  std::copy(pos + 1, r.idx_.data() + r.size_, pos);
  --r.size_;
  r.idx_[r.size_] = 0;
  return r;
}

std::size_t MultiIndex::hash() const {
  std::size_t h = size_;
  for (auto v : *this) h = h * 1315423911u + v + 1;
  return h;
}

namespace {

void extend(int n, int remaining, int start, std::vector<int>& prefix,
            std::vector<MultiIndex>& out) {
  if (remaining == 0) {
    out.emplace_back(std::span<const int>(prefix));
    return;
  }
  for (int i = start; i < n; ++i) {
    prefix.push_back(i);
    extend(n, remaining - 1, i, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_order(int n, int k) {
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  extend(n, k, 0, prefix, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int k) {
  std::vector<MultiIndex> out;
  for (int j = 0; j <= k; ++j) {
    auto level = multi_indices_of_order(n, j);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace jetham
