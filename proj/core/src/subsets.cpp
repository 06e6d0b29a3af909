#include "dks/subsets.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

namespace dks {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > kSat - b) ? kSat : a + b;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n-k+i) / i is exact at every step (it equals C(n-k+i, i));
    // widen the multiply so a value that fits after the division is not lost
    // to intermediate overflow. Partial values increase with i, so once one
    // exceeds 64 bits the final value does too and saturating is correct.
    unsigned __int128 wide = static_cast<unsigned __int128>(result) *
                             static_cast<unsigned __int128>(n - k + i);
    wide /= static_cast<unsigned __int128>(i);
    if (wide > kSat) return kSat;
    result = static_cast<std::uint64_t>(wide);
  }
  return result;
}

bool next_k_subset(std::vector<int>& members, int n) {
  const int k = static_cast<int>(members.size());
  int i = k - 1;
  while (i >= 0 && members[i] == n - k + i) --i;
  if (i < 0) return false;
  ++members[i];
  for (int j = i + 1; j < k; ++j) members[j] = members[j - 1] + 1;
  return true;
}

SubsetCodec::SubsetCodec(int n, int k) : n_(n), k_(k) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("SubsetCodec: need 0 <= k <= n, n >= 1");
  const int cols = k + 2;
  table_.assign(static_cast<std::size_t>(n + 1) * cols, 0);
  for (int x = 0; x <= n; ++x) {
    table_[static_cast<std::size_t>(x) * cols] = 1;  // C(x, 0)
    for (int j = 1; j < cols && j <= x; ++j) {
      const std::uint64_t up = table_[static_cast<std::size_t>(x - 1) * cols + j];
      const std::uint64_t diag = table_[static_cast<std::size_t>(x - 1) * cols + j - 1];
      table_[static_cast<std::size_t>(x) * cols + j] = sat_add(up, diag);
    }
  }
  count_ = choose(n, k);
}

std::uint64_t SubsetCodec::choose(int x, int j) const noexcept {
  if (j < 0 || j > x) return 0;
  if (j > k_ + 1) return kSat;  // outside the table; callers never need these exactly
  return table_[static_cast<std::size_t>(x) * (k_ + 2) + j];
}

std::uint64_t SubsetCodec::rank(std::span<const int> members) const {
  assert(static_cast<int>(members.size()) == k_);
  // Subsets that agree with `members` up to position i-1 and pick an element
  // in (prev, members[i]) at position i all precede it; hockey-stick sums
  // collapse each inner range to a difference of two binomials. When C(n,k)
  // exceeds 64 bits individual ranks can still be exact: a term is reliable
  // unless its larger binomial saturated (identical arguments cancel to an
  // exact zero even then).
  std::uint64_t r = 0;
  int prev = -1;
  for (int i = 0; i < k_; ++i) {
    const int a = members[i];
    const std::uint64_t hi = choose(n_ - prev - 1, k_ - i);
    const std::uint64_t lo = choose(n_ - a, k_ - i);
    if (a != prev + 1 && hi == kSat)
      throw std::overflow_error("SubsetCodec::rank: rank does not fit in 64 bits");
    const std::uint64_t term = hi - lo;
    if (r > kSat - term)
      throw std::overflow_error("SubsetCodec::rank: rank does not fit in 64 bits");
    r += term;
    prev = a;
  }
  return r;
}

std::vector<int> SubsetCodec::unrank(std::uint64_t rank) const {
  // With a saturated total count every representable rank is still valid:
  // the guard below only rejects rank == 2^64-1, which the saturated count
  // cannot vouch for. Saturated block sizes never mislead the digit search,
  // because a saturated block always exceeds whatever rank remains.
  if (rank >= count_)
    throw std::out_of_range("SubsetCodec::unrank: rank out of range");
  std::vector<int> members(static_cast<std::size_t>(k_));
  int c = 0;
  for (int i = 0; i < k_; ++i) {
    // Smallest feasible candidate c: skip it while all completions with
    // position i == c rank below `rank`.
    std::uint64_t block = choose(n_ - 1 - c, k_ - 1 - i);
    while (rank >= block) {
      rank -= block;
      ++c;
      block = choose(n_ - 1 - c, k_ - 1 - i);
    }
    members[static_cast<std::size_t>(i)] = c;
    ++c;
  }
  return members;
}

}  // namespace dks
