#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fewdist {

// Dense bit-per-integer membership table over [0, size).
class DenseBitset {
 public:
  DenseBitset() = default;
  explicit DenseBitset(std::uint64_t size)
      : size_(size), words_(static_cast<std::size_t>((size + 63) / 64), 0) {}

  std::uint64_t size() const noexcept { return size_; }

  bool test(std::uint64_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::uint64_t i) noexcept {
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  // Number of set bits in [0, end).
  std::uint64_t count_below(std::uint64_t end) const;
  std::uint64_t count() const { return count_below(size_); }

  // Word-wise OR; both tables must have the same size.
  void merge(const DenseBitset& other);

  std::vector<std::uint64_t> set_positions() const;

  std::span<std::uint64_t> words() noexcept { return words_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  static std::uint64_t bytes_for(std::uint64_t size) { return (size + 63) / 64 * 8; }

 private:
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace fewdist
