#include <random>
#include <set>

#include "doctest.h"
#include "fewdist/kernels.hpp"

using namespace fewdist::simd;

namespace {

std::vector<const KernelTable*> variants() {
  std::vector<const KernelTable*> out;
  for (Isa isa : supported_isas()) out.push_back(kernel_table(isa));
  return out;
}

// Reference: do the six distances of the quad take at most two values?
bool two_distance(std::int64_t ab, std::int64_t ac, std::int64_t bc, std::int64_t e1,
                  std::int64_t e2, std::int64_t e3) {
  return std::set<std::int64_t>{ab, ac, bc, e1, e2, e3}.size() <= 2;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar variant is always available and dispatch names round-trip") {
  REQUIRE(kernel_table(Isa::scalar) != nullptr);
  CHECK(supported_isas().front() == Isa::scalar);
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::avx512}) CHECK(parse_isa(isa_name(isa)) == isa);
  CHECK_FALSE(parse_isa("sse9").has_value());
  MESSAGE("active kernel: " << isa_name(active_kernels().isa));
}

TEST_CASE("popcount variants match the scalar reference") {
  std::mt19937_64 rng(1);
  const KernelTable& ref = *kernel_table(Isa::scalar);
  for (std::size_t len = 0; len < 70; ++len) {
    std::vector<std::uint64_t> words(len);
    for (auto& w : words) w = rng() & rng();  // uneven bit density
    if (len > 3) words[len / 2] = ~std::uint64_t{0};
    const std::uint64_t expected = ref.popcount(words.data(), len);
    for (const KernelTable* t : variants()) {
      CAPTURE(isa_name(t->isa));
      CHECK(t->popcount(words.data(), len) == expected);
    }
  }
}

TEST_CASE("mark_distances variants match the scalar reference") {
  std::mt19937_64 rng(2);
  const KernelTable& ref = *kernel_table(Isa::scalar);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int32_t k = 1 + static_cast<std::int32_t>(rng() % 5);
    const std::size_t count = rng() % 45;
    std::uniform_int_distribution<std::int32_t> coord(-60, 60);
    std::vector<std::int32_t> xs(count), ys(count);
    for (std::size_t j = 0; j < count; ++j) {
      xs[j] = coord(rng);
      ys[j] = coord(rng);
    }
    const std::int32_t x0 = coord(rng), y0 = coord(rng);
    const std::size_t words = (120 * 120 * 6) / 64 + 2;
    std::vector<std::uint64_t> expected(words, 0);
    // Pre-seed a few bits so the gather-then-set path sees both states.
    for (int s = 0; s < 20; ++s) expected[rng() % words] |= std::uint64_t{1} << (rng() % 64);
    const std::vector<std::uint64_t> seed = expected;
    ref.mark_distances(x0, y0, xs.data(), ys.data(), count, k, expected.data());
    for (const KernelTable* t : variants()) {
      CAPTURE(isa_name(t->isa));
      std::vector<std::uint64_t> got = seed;
      t->mark_distances(x0, y0, xs.data(), ys.data(), count, k, got.data());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("find_completion variants match the set-based reference") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    std::uniform_int_distribution<std::int64_t> value(1, 3);  // small alphabet => many hits
    std::int64_t ab = value(rng), ac = value(rng), bc = value(rng);
    if (std::set<std::int64_t>{ab, ac, bc}.size() == 3) bc = ab;
    const std::int64_t lo = std::min({ab, ac, bc}), hi = std::max({ab, ac, bc});
    std::vector<std::int64_t> ra(n), rb(n), rc(n);
    for (std::size_t l = 0; l < n; ++l) {
      ra[l] = value(rng);
      rb[l] = value(rng);
      rc[l] = value(rng);
    }
    const std::size_t begin = rng() % n, end = begin + rng() % (n - begin + 1);
    std::size_t expected = end;
    for (std::size_t l = begin; l < end; ++l) {
      if (two_distance(ab, ac, bc, ra[l], rb[l], rc[l])) {
        expected = l;
        break;
      }
    }
    const CompletionQuery q{ra.data(), rb.data(), rc.data(), lo, hi};
    for (const KernelTable* t : variants()) {
      CAPTURE(isa_name(t->isa));
      CHECK(t->find_completion(q, begin, end) == expected);
    }
  }
}

TEST_CASE("select_isa switches the active table") {
  const Isa original = active_kernels().isa;
  for (Isa isa : supported_isas()) {
    select_isa(isa);
    CHECK(active_kernels().isa == isa);
  }
  select_isa(original);
}

}  // TEST_SUITE
