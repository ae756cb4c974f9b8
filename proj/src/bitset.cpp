#include "fewdist/bitset.hpp"

#include <bit>

#include "fewdist/kernels.hpp"

namespace fewdist {

std::uint64_t DenseBitset::count_below(std::uint64_t end) const {
  if (end > size_) end = size_;
  const std::size_t full = static_cast<std::size_t>(end >> 6);
  std::uint64_t total = simd::active_kernels().popcount(words_.data(), full);
  if (const unsigned rest = end & 63; rest != 0) {
    total += std::popcount(words_[full] & ((std::uint64_t{1} << rest) - 1));
  }
  return total;
}

void DenseBitset::merge(const DenseBitset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

std::vector<std::uint64_t> DenseBitset::set_positions() const {
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1) {
      out.push_back(w * 64 + static_cast<unsigned>(std::countr_zero(bits)));
    }
  }
  return out;
}

}  // namespace fewdist
