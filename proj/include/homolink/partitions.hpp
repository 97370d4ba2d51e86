#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace homolink {

/// Ordered two-partition [rho_l, rho_r] of an index set, with the permutation
/// sign of the concatenation rho_l ++ rho_r relative to the source order.
/// Both sides keep the source's internal order.
struct OrderedPartition {
  std::vector<int> left;
  std::vector<int> right;
  int sign = +1;
};

namespace detail {

// Parity of the permutation given as a position sequence (0-based, a
// permutation of 0..n-1). O(n^2) inversion count; n <= kMaxDim - 1.
inline int permutation_sign(const std::vector<int>& positions) {
  int inversions = 0;
  const int n = static_cast<int>(positions.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (positions[i] > positions[j]) ++inversions;
  return (inversions % 2 == 0) ? +1 : -1;
}

}  // namespace detail

/// All ordered two-partitions of `a` with `w` elements on the left side,
/// enumerated in lexicographic order of the left position sets. Exactly
/// C(|a|, w) entries.
inline std::vector<OrderedPartition> partitions(const std::vector<int>& a,
                                                int w) {
  const int n = static_cast<int>(a.size());
  if (w < 0 || w > n)
    throw std::invalid_argument("partitions: left size " + std::to_string(w) +
                                " out of range for set of " +
                                std::to_string(n));

  std::vector<OrderedPartition> out;
  std::vector<int> pick(w);  // left positions, ascending
  for (int i = 0; i < w; ++i) pick[i] = i;

  std::vector<int> concat_positions(n);
  while (true) {
    OrderedPartition p;
    p.left.reserve(w);
    p.right.reserve(n - w);
    int idx = 0;
    for (int i = 0; i < w; ++i) {
      p.left.push_back(a[pick[i]]);
      concat_positions[idx++] = pick[i];
    }
    int next_pick = 0;
    for (int pos = 0; pos < n; ++pos) {
      if (next_pick < w && pick[next_pick] == pos) {
        ++next_pick;
        continue;
      }
      p.right.push_back(a[pos]);
      concat_positions[idx++] = pos;
    }
    p.sign = detail::permutation_sign(concat_positions);
    out.push_back(std::move(p));

    // next combination
    int i = w - 1;
    while (i >= 0 && pick[i] == n - w + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < w; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

/// The ordered index set [1, ..., D] with k removed (1-based axis numbers).
inline std::vector<int> index_set_without(int D, int k) {
  if (k < 1 || k > D)
    throw std::invalid_argument("index_set_without: k out of [1, D]");
  std::vector<int> out;
  out.reserve(D - 1);
  for (int i = 1; i <= D; ++i)
    if (i != k) out.push_back(i);
  return out;
}

/// Cached partitions of index_set_without(D, k) with w left elements.
/// Read-only after first use; safe to call concurrently.
inline const std::vector<OrderedPartition>& partition_table(int D, int k,
                                                            int w) {
  struct Key {
    int D, k, w;
    bool operator<(const Key& o) const {
      if (D != o.D) return D < o.D;
      if (k != o.k) return k < o.k;
      return w < o.w;
    }
  };
  static std::mutex mu;
  static std::map<Key, std::vector<OrderedPartition>>* cache =
      new std::map<Key, std::vector<OrderedPartition>>();
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache->try_emplace(Key{D, k, w});
  if (inserted) it->second = partitions(index_set_without(D, k), w);
  return it->second;
}

}  // namespace homolink
