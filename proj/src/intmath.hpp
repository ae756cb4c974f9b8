#pragma once

#include <cmath>
#include <cstdint>

namespace fewdist::detail {

using u128 = unsigned __int128;
using i128 = __int128;

// floor(sqrt(v)).
inline std::uint64_t isqrt(u128 v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (static_cast<u128>(r) * r > v) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

inline bool is_square(u128 v, std::uint64_t* root) {
  const std::uint64_t r = isqrt(v);
  *root = r;
  return static_cast<u128>(r) * r == v;
}

// Floor division for signed 128-bit values, d > 0.
inline i128 floor_div(i128 n, i128 d) {
  i128 q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

}  // namespace fewdist::detail
