// Compiled with -mavx512f -mavx512vpopcntdq; only reached after a runtime
// CPU check.

#include <immintrin.h>

#include "variants.hpp"

namespace fewdist::simd::detail {
namespace {

std::uint64_t popcount(const std::uint64_t* words, std::size_t count) {
  __m512i acc = _mm512_setzero_si512();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    acc = _mm512_add_epi64(acc, _mm512_popcnt_epi64(_mm512_loadu_si512(words + i)));
  }
  if (i < count) {
    const __mmask8 tail = static_cast<__mmask8>((1u << (count - i)) - 1);
    acc = _mm512_add_epi64(
        acc, _mm512_popcnt_epi64(_mm512_maskz_loadu_epi64(tail, words + i)));
  }
  return static_cast<std::uint64_t>(_mm512_reduce_add_epi64(acc));
}

void mark_distances(std::int32_t x0, std::int32_t y0, const std::int32_t* xs,
                    const std::int32_t* ys, std::size_t count, std::int32_t k,
                    std::uint64_t* bits) {
  const __m512i vx0 = _mm512_set1_epi32(x0);
  const __m512i vy0 = _mm512_set1_epi32(y0);
  const __m512i vk = _mm512_set1_epi32(k);
  const __m512i one = _mm512_set1_epi32(1);
  const __m512i low5 = _mm512_set1_epi32(31);
  const void* dwords = bits;
  std::size_t j = 0;
  for (; j < count; j += 16) {
    const std::size_t left = count - j;
    const __mmask16 live =
        left >= 16 ? __mmask16{0xffff} : static_cast<__mmask16>((1u << left) - 1);
    const __m512i dx = _mm512_sub_epi32(_mm512_maskz_loadu_epi32(live, xs + j), vx0);
    const __m512i dy = _mm512_sub_epi32(_mm512_maskz_loadu_epi32(live, ys + j), vy0);
    const __m512i d = _mm512_add_epi32(
        _mm512_mullo_epi32(dx, dx),
        _mm512_mullo_epi32(vk, _mm512_mullo_epi32(dy, dy)));
    const __m512i word = _mm512_mask_i32gather_epi32(
        _mm512_setzero_si512(), live, _mm512_srli_epi32(d, 5), dwords, 4);
    const __m512i bit = _mm512_sllv_epi32(one, _mm512_and_si512(d, low5));
    unsigned mask = _mm512_mask_testn_epi32_mask(live, word, bit);
    if (mask == 0) continue;
    alignas(64) std::uint32_t lanes[16];
    _mm512_store_si512(lanes, d);
    while (mask != 0) {
      const std::uint32_t v = lanes[__builtin_ctz(mask)];
      bits[v >> 6] |= std::uint64_t{1} << (v & 63);
      mask &= mask - 1;
    }
  }
}

std::size_t find_completion(const CompletionQuery& q, std::size_t begin,
                            std::size_t end) {
  const __m512i lo = _mm512_set1_epi64(q.lo);
  const __m512i hi = _mm512_set1_epi64(q.hi);
  const bool equilateral = q.lo == q.hi;
  for (std::size_t l = begin; l < end; l += 8) {
    const std::size_t left = end - l;
    const __mmask8 live =
        left >= 8 ? __mmask8{0xff} : static_cast<__mmask8>((1u << left) - 1);
    const __m512i e1 = _mm512_maskz_loadu_epi64(live, q.row_a + l);
    const __m512i e2 = _mm512_maskz_loadu_epi64(live, q.row_b + l);
    const __m512i e3 = _mm512_maskz_loadu_epi64(live, q.row_c + l);
    const __mmask8 eq1 = _mm512_cmpeq_epi64_mask(e1, lo);
    const __mmask8 eq2 = _mm512_cmpeq_epi64_mask(e2, lo);
    const __mmask8 eq3 = _mm512_cmpeq_epi64_mask(e3, lo);
    __m512i other = hi;
    if (equilateral) {
      other = _mm512_mask_blend_epi64(eq2, e2, e3);
      other = _mm512_mask_blend_epi64(eq1, e1, other);
    }
    const __mmask8 ok = live & (eq1 | _mm512_cmpeq_epi64_mask(e1, other)) &
                        (eq2 | _mm512_cmpeq_epi64_mask(e2, other)) &
                        (eq3 | _mm512_cmpeq_epi64_mask(e3, other));
    if (ok != 0) return l + static_cast<std::size_t>(__builtin_ctz(ok));
  }
  return end;
}

}  // namespace

const KernelTable avx512_table{Isa::avx512, &popcount, &mark_distances,
                               &find_completion};

}  // namespace fewdist::simd::detail
