#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dks {

/// Saturating binomial coefficient: returns C(n, k), or UINT64_MAX if the
/// exact value does not fit in 64 bits. Returns 0 for k < 0 or k > n.
std::uint64_t binomial(int n, int k);

/// Advance `members` (a strictly increasing k-subset of 0..n-1) to its
/// lexicographic successor. Returns false when `members` was the last subset.
bool next_k_subset(std::vector<int>& members, int n);

/// Lexicographic rank/unrank of k-subsets of {0..n-1} via the combinatorial
/// number system. Rank 0 is {0,1,...,k-1}; subsets are ordered by their
/// increasing member sequences. O(k) rank, O(n) unrank after table setup.
class SubsetCodec {
 public:
  SubsetCodec(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }

  /// Total number of k-subsets, saturated at UINT64_MAX.
  std::uint64_t count() const noexcept { return count_; }

  std::uint64_t rank(std::span<const int> members) const;
  std::vector<int> unrank(std::uint64_t rank) const;

 private:
  // choose_[x][j] = C(x, j) for x in 0..n, j in 0..min(x,k)+1, saturated.
  std::uint64_t choose(int x, int j) const noexcept;

  int n_;
  int k_;
  std::uint64_t count_;
  std::vector<std::uint64_t> table_;  // (n+1) x (k+2), row-major
};

}  // namespace dks
