#include <bit>

#include "variants.hpp"

namespace fewdist::simd::detail {
namespace {

std::uint64_t popcount(const std::uint64_t* words, std::size_t count) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += std::popcount(words[i]);
  return total;
}

void mark_distances(std::int32_t x0, std::int32_t y0, const std::int32_t* xs,
                    const std::int32_t* ys, std::size_t count, std::int32_t k,
                    std::uint64_t* bits) {
  for (std::size_t j = 0; j < count; ++j) {
    const std::int32_t dx = xs[j] - x0;
    const std::int32_t dy = ys[j] - y0;
    const auto d = static_cast<std::uint32_t>(dx * dx + k * dy * dy);
    bits[d >> 6] |= std::uint64_t{1} << (d & 63);
  }
}

bool completes(std::int64_t e1, std::int64_t e2, std::int64_t e3,
               std::int64_t lo, std::int64_t hi) {
  std::int64_t other = hi;
  if (lo == hi) other = e1 != lo ? e1 : (e2 != lo ? e2 : e3);
  return (e1 == lo || e1 == other) && (e2 == lo || e2 == other) &&
         (e3 == lo || e3 == other);
}

std::size_t find_completion(const CompletionQuery& q, std::size_t begin,
                            std::size_t end) {
  for (std::size_t l = begin; l < end; ++l) {
    if (completes(q.row_a[l], q.row_b[l], q.row_c[l], q.lo, q.hi)) return l;
  }
  return end;
}

}  // namespace

const KernelTable scalar_table{Isa::scalar, &popcount, &mark_distances,
                               &find_completion};

}  // namespace fewdist::simd::detail
