#pragma once

// Increasing index subsets: ranking, unranking, bitmask form, and the signs
// produced when concatenations of increasing tuples are sorted. Subset ranks
// are lexicographic on the member tuples, so for n = 4, k = 2 the order is
// (0,1), (0,2), (0,3), (1,2), (1,3), (2,3). All indices here are 0-based.

#include <bit>
#include <cstdint>
#include <vector>

#include "curvcert/errors.hpp"

namespace curvcert {

inline constexpr int kMaxDimension = 16;

// Binomial coefficients up to kMaxDimension; values fit comfortably in 64 bits.
inline long long binomial(int n, int k) {
  static const auto table = [] {
    std::vector<std::vector<long long>> t(kMaxDimension + 1);
    for (int i = 0; i <= kMaxDimension; ++i) {
      t[i].assign(i + 1, 1);
      for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
  }();
  if (k < 0 || k > n) return 0;
  if (n < 0 || n > kMaxDimension) throw DimensionError("binomial: n out of range");
  return table[n][k];
}

inline std::uint32_t mask_of(const std::vector<int>& members) {
  std::uint32_t m = 0;
  for (int i : members) m |= std::uint32_t{1} << i;
  return m;
}

inline std::vector<int> members_of(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    int i = std::countr_zero(mask);
    out.push_back(i);
    mask &= mask - 1;
  }
  return out;
}

// Rank of a strictly increasing tuple among the k-subsets of {0,...,n-1}.
inline long long subset_rank(const std::vector<int>& members, int n) {
  const int k = static_cast<int>(members.size());
  if (n < 0 || n > kMaxDimension) throw DimensionError("subset_rank: n out of range");
  int prev = -1;
  long long rank = 0;
  for (int i = 0; i < k; ++i) {
    const int c = members[i];
    if (c <= prev || c >= n)
      throw PreconditionFailed("subset_rank: members must be strictly increasing within range");
    for (int j = prev + 1; j < c; ++j) rank += binomial(n - 1 - j, k - 1 - i);
    prev = c;
  }
  return rank;
}

inline std::vector<int> subset_unrank(long long rank, int k, int n) {
  if (k < 0 || k > n) throw DimensionError("subset_unrank: need 0 <= k <= n");
  if (rank < 0 || rank >= binomial(n, k))
    throw PreconditionFailed("subset_unrank: rank out of range");
  std::vector<int> members(k);
  int c = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      long long below = binomial(n - 1 - c, k - 1 - i);
      if (rank < below) break;
      rank -= below;
      ++c;
    }
    members[i] = c++;
  }
  return members;
}

// Sign of the permutation sorting the concatenation (I, J) of two disjoint
// increasing tuples, i.e. (-1)^{#{(i,j) in I x J : i > j}}. Returns 0 when the
// tuples intersect; that convention lets wedge kernels skip overlaps.
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int inversions = 0;
  std::uint32_t rest = b;
  while (rest) {
    int j = std::countr_zero(rest);
    rest &= rest - 1;
    inversions += std::popcount(a >> (j + 1));
  }
  return (inversions & 1) ? -1 : +1;
}

// Eagerly built per-dimension lookup: masks of each k-subset in rank order
// and the inverse map. Dimensions are small, so the tables stay tiny.
class SubsetTable {
 public:
  explicit SubsetTable(int n) : n_(n) {
    if (n < 1 || n > kMaxDimension)
      throw DimensionError("SubsetTable: dimension must be between 1 and 16");
    masks_.resize(n + 1);
    rank_of_mask_.assign(std::size_t{1} << n, -1);
    for (int k = 0; k <= n; ++k) {
      masks_[k].reserve(static_cast<std::size_t>(binomial(n, k)));
      std::vector<int> c(k);
      for (int i = 0; i < k; ++i) c[i] = i;
      while (true) {
        std::uint32_t m = mask_of(c);
        rank_of_mask_[m] = static_cast<std::int32_t>(masks_[k].size());
        masks_[k].push_back(m);
        // Advance to the next combination in lexicographic tuple order.
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      }
    }
  }

  int dim() const { return n_; }
  long long count(int k) const { return static_cast<long long>(masks_.at(k).size()); }
  std::uint32_t mask(int k, long long rank) const { return masks_[k][rank]; }
  long long rank(std::uint32_t mask) const { return rank_of_mask_[mask]; }
  const std::vector<std::uint32_t>& masks(int k) const { return masks_[k]; }

 private:
  int n_;
  std::vector<std::vector<std::uint32_t>> masks_;
  std::vector<std::int32_t> rank_of_mask_;
};

}  // namespace curvcert
