#pragma once

#include <algorithm>
#include <vector>

namespace ncs {

// idx holds k strictly increasing positions into [0, n); advances to the next
// lexicographic combination, false once exhausted. An empty idx never
// advances (the single size-0 combination).
inline bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// C(n, k), saturating at cap + 1 so callers can test "more than cap" without
// overflow concern.
inline long long binomial_capped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace ncs
