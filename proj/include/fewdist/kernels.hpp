#pragma once

// Data-parallel inner loops with a portable scalar reference and x86 SIMD
// variants. The variant is chosen once at startup from the running CPU and
// can be overridden (FEWDIST_KERNEL=scalar|avx2|avx512, or select_isa()).
// Every variant must produce results identical to the scalar reference.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace fewdist::simd {

enum class Isa { scalar, avx2, avx512 };

// Three rows of a squared-distance matrix, one per fixed point of a triple,
// together with the distinct values {lo, hi} the triple already uses
// (lo == hi when the triple is equilateral). A candidate fourth point l
// completes a two-distance quad iff the row entries at l add at most the
// values {lo, hi}, or one new value when lo == hi.
struct CompletionQuery {
  const std::int64_t* row_a;
  const std::int64_t* row_b;
  const std::int64_t* row_c;
  std::int64_t lo;
  std::int64_t hi;
};

struct KernelTable {
  Isa isa;

  // Number of set bits in words[0, count).
  std::uint64_t (*popcount)(const std::uint64_t* words, std::size_t count);

  // Sets bit (xs[j]-x0)^2 + k*(ys[j]-y0)^2 of `bits` for every j < count.
  // Caller guarantees every such value is below 2^31 and inside `bits`.
  void (*mark_distances)(std::int32_t x0, std::int32_t y0,
                         const std::int32_t* xs, const std::int32_t* ys,
                         std::size_t count, std::int32_t k,
                         std::uint64_t* bits);

  // First index l in [begin, end) completing the query, or `end`.
  std::size_t (*find_completion)(const CompletionQuery& query,
                                 std::size_t begin, std::size_t end);
};

// nullptr when the variant is not compiled in or the CPU lacks it.
const KernelTable* kernel_table(Isa isa);

std::vector<Isa> supported_isas();
Isa best_supported_isa();

// Table used by the library. Thread-safe to read; select_isa() is meant for
// startup and tests.
const KernelTable& active_kernels();
void select_isa(Isa isa);

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

}  // namespace fewdist::simd
