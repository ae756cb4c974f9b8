// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU check.

#include <immintrin.h>

#include "variants.hpp"

namespace fewdist::simd::detail {
namespace {

// Nibble-lookup popcount (Mula): per-byte counts via pshufb, summed with sad.
std::uint64_t popcount(const std::uint64_t* words, std::size_t count) {
  const __m256i lookup =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1,
                       2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                                          _mm256_shuffle_epi8(lookup, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(bytes, _mm256_setzero_si256()));
  }
  std::uint64_t total =
      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
      static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
  for (; i < count; ++i) total += _mm_popcnt_u64(words[i]);
  return total;
}

// Most distances of a pair loop repeat, so the bit is gathered first and only
// unmarked lanes are written back.
void mark_distances(std::int32_t x0, std::int32_t y0, const std::int32_t* xs,
                    const std::int32_t* ys, std::size_t count, std::int32_t k,
                    std::uint64_t* bits) {
  const __m256i vx0 = _mm256_set1_epi32(x0);
  const __m256i vy0 = _mm256_set1_epi32(y0);
  const __m256i vk = _mm256_set1_epi32(k);
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i low5 = _mm256_set1_epi32(31);
  const int* dwords = reinterpret_cast<const int*>(bits);
  std::size_t j = 0;
  for (; j + 8 <= count; j += 8) {
    const __m256i dx = _mm256_sub_epi32(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(xs + j)), vx0);
    const __m256i dy = _mm256_sub_epi32(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ys + j)), vy0);
    const __m256i d = _mm256_add_epi32(
        _mm256_mullo_epi32(dx, dx),
        _mm256_mullo_epi32(vk, _mm256_mullo_epi32(dy, dy)));
    const __m256i word = _mm256_i32gather_epi32(dwords, _mm256_srli_epi32(d, 5), 4);
    const __m256i bit = _mm256_sllv_epi32(one, _mm256_and_si256(d, low5));
    const __m256i unset =
        _mm256_cmpeq_epi32(_mm256_and_si256(word, bit), _mm256_setzero_si256());
    unsigned mask = static_cast<unsigned>(
        _mm256_movemask_ps(_mm256_castsi256_ps(unset)));
    if (mask == 0) continue;
    alignas(32) std::uint32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), d);
    while (mask != 0) {
      const std::uint32_t v = lanes[__builtin_ctz(mask)];
      bits[v >> 6] |= std::uint64_t{1} << (v & 63);
      mask &= mask - 1;
    }
  }
  for (; j < count; ++j) {
    const std::int32_t dx = xs[j] - x0;
    const std::int32_t dy = ys[j] - y0;
    const auto v = static_cast<std::uint32_t>(dx * dx + k * dy * dy);
    bits[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
}

std::size_t find_completion(const CompletionQuery& q, std::size_t begin,
                            std::size_t end) {
  const __m256i lo = _mm256_set1_epi64x(q.lo);
  const __m256i hi = _mm256_set1_epi64x(q.hi);
  const bool equilateral = q.lo == q.hi;
  std::size_t l = begin;
  for (; l + 4 <= end; l += 4) {
    const __m256i e1 =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(q.row_a + l));
    const __m256i e2 =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(q.row_b + l));
    const __m256i e3 =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(q.row_c + l));
    const __m256i eq1 = _mm256_cmpeq_epi64(e1, lo);
    const __m256i eq2 = _mm256_cmpeq_epi64(e2, lo);
    const __m256i eq3 = _mm256_cmpeq_epi64(e3, lo);
    __m256i other = hi;
    if (equilateral) {
      // first entry that differs from lo, else e3
      other = _mm256_blendv_epi8(e2, e3, eq2);
      other = _mm256_blendv_epi8(e1, other, eq1);
    }
    const __m256i ok = _mm256_and_si256(
        _mm256_and_si256(_mm256_or_si256(eq1, _mm256_cmpeq_epi64(e1, other)),
                         _mm256_or_si256(eq2, _mm256_cmpeq_epi64(e2, other))),
        _mm256_or_si256(eq3, _mm256_cmpeq_epi64(e3, other)));
    const int mask = _mm256_movemask_pd(_mm256_castsi256_pd(ok));
    if (mask != 0) return l + static_cast<std::size_t>(__builtin_ctz(mask));
  }
  for (; l < end; ++l) {
    const std::int64_t e1 = q.row_a[l], e2 = q.row_b[l], e3 = q.row_c[l];
    std::int64_t other = q.hi;
    if (equilateral) other = e1 != q.lo ? e1 : (e2 != q.lo ? e2 : e3);
    if ((e1 == q.lo || e1 == other) && (e2 == q.lo || e2 == other) &&
        (e3 == q.lo || e3 == other)) {
      return l;
    }
  }
  return end;
}

}  // namespace

const KernelTable avx2_table{Isa::avx2, &popcount, &mark_distances,
                             &find_completion};

}  // namespace fewdist::simd::detail
