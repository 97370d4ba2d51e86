#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "homolink/partitions.hpp"

using homolink::index_set_without;
using homolink::OrderedPartition;
using homolink::partitions;

namespace {

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Independent sign oracle: count inversions of the concatenation's positions
// relative to the source list.
int sign_by_inversions(const std::vector<int>& source,
                       const OrderedPartition& p) {
  std::vector<int> concat = p.left;
  concat.insert(concat.end(), p.right.begin(), p.right.end());
  std::vector<int> pos;
  for (int v : concat) {
    auto it = std::find(source.begin(), source.end(), v);
    pos.push_back(static_cast<int>(it - source.begin()));
  }
  int inv = 0;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j)
      if (pos[i] > pos[j]) ++inv;
  return inv % 2 == 0 ? +1 : -1;
}

}  // namespace

TEST_CASE("part^3 of [1,3,6,9,5] enumerates the documented ten") {
  const std::vector<int> a{1, 3, 6, 9, 5};
  const auto parts = partitions(a, 3);
  REQUIRE(parts.size() == 10);

  const std::vector<std::pair<std::vector<int>, std::vector<int>>> expected{
      {{1, 3, 6}, {9, 5}}, {{1, 3, 9}, {6, 5}}, {{1, 3, 5}, {6, 9}},
      {{1, 6, 9}, {3, 5}}, {{1, 6, 5}, {3, 9}}, {{1, 9, 5}, {3, 6}},
      {{3, 6, 9}, {1, 5}}, {{3, 6, 5}, {1, 9}}, {{3, 9, 5}, {1, 6}},
      {{6, 9, 5}, {1, 3}}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(parts[i].left == expected[i].first);
    CHECK(parts[i].right == expected[i].second);
    CHECK(parts[i].sign == sign_by_inversions(a, parts[i]));
  }
}

TEST_CASE("documented signs") {
  const std::vector<int> a{1, 3, 6, 9, 5};
  const auto parts = partitions(a, 3);
  // [[1,3,6],[9,5]]: identity permutation
  CHECK(parts[0].left == std::vector<int>{1, 3, 6});
  CHECK(parts[0].sign == +1);
  // [[1,3,9],[6,5]]: one inversion in (1,2,4,3,5)
  CHECK(parts[1].left == std::vector<int>{1, 3, 9});
  CHECK(parts[1].sign == -1);
}

TEST_CASE("partition counts match binomials for n <= 8") {
  for (int n = 0; n <= 8; ++n) {
    std::vector<int> a(n);
    for (int i = 0; i < n; ++i) a[i] = 10 + i;
    for (int w = 0; w <= n; ++w) {
      CAPTURE(n, w);
      CHECK(partitions(a, w).size() ==
            static_cast<std::size_t>(binomial(n, w)));
    }
  }
}

TEST_CASE("swap of sides flips sign by (-1)^(w(n-w))") {
  for (int n = 1; n <= 7; ++n) {
    std::vector<int> a(n);
    for (int i = 0; i < n; ++i) a[i] = i + 1;
    for (int w = 0; w <= n; ++w) {
      const auto forward = partitions(a, w);
      const auto backward = partitions(a, n - w);
      const int parity = ((w * (n - w)) % 2 == 0) ? +1 : -1;
      for (const auto& p : forward) {
        // locate the mirrored partition
        bool found = false;
        for (const auto& q : backward) {
          if (q.left == p.right && q.right == p.left) {
            CHECK(p.sign * q.sign == parity);
            found = true;
            break;
          }
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("every element lands on exactly one side") {
  const std::vector<int> a{4, 8, 15, 16, 23, 42};
  for (int w = 0; w <= 6; ++w) {
    for (const auto& p : partitions(a, w)) {
      for (int v : a) {
        const int on_left = static_cast<int>(
            std::count(p.left.begin(), p.left.end(), v));
        const int on_right = static_cast<int>(
            std::count(p.right.begin(), p.right.end(), v));
        CHECK(on_left + on_right == 1);
      }
    }
  }
}

TEST_CASE("index_set_without") {
  CHECK(index_set_without(2, 1) == std::vector<int>{2});
  CHECK(index_set_without(3, 2) == std::vector<int>{1, 3});
  CHECK(index_set_without(5, 5) == std::vector<int>{1, 2, 3, 4});
  CHECK_THROWS_AS(index_set_without(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(index_set_without(3, 4), std::invalid_argument);
}

TEST_CASE("w out of range is rejected") {
  CHECK_THROWS_AS(partitions({1, 2, 3}, -1), std::invalid_argument);
  CHECK_THROWS_AS(partitions({1, 2, 3}, 4), std::invalid_argument);
}
