#pragma once

// Positive integers represented by a primitive positive-definite binary
// quadratic form f(X, Y) = aX^2 + bXY + cY^2, and empirical density ratios
// count * sqrt(ln x) / x for them.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fewdist/bitset.hpp"
#include "fewdist/limits.hpp"

namespace fewdist {

struct QuadraticForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

// Coefficients are limited to |.| <= 2^20 and represented integers to < 2^62
// so that the root solving in the sieve and the oracle stays inside 128 bits.
inline constexpr std::int64_t kMaxFormCoefficient = std::int64_t{1} << 20;

enum class FormVerdict {
  valid,
  not_primitive,
  not_positive_definite,
  square_discriminant,
};

std::string_view to_string(FormVerdict verdict);

// b^2 - 4ac.
std::int64_t discriminant(const QuadraticForm& form);

// Checks primitivity, then positive definiteness, then that the
// discriminant is not a perfect square; reports the first failure.
// Coefficients beyond kMaxFormCoefficient throw ErrorKind::overflow.
FormVerdict validate_form(const QuadraticForm& form);

class RepresentedSet {
 public:
  RepresentedSet(QuadraticForm form, std::uint64_t limit, DenseBitset table);

  const QuadraticForm& form() const noexcept { return form_; }
  std::uint64_t limit() const noexcept { return limit_; }

  // n in [1, limit].
  bool contains(std::uint64_t n) const;

  // Number of represented integers in [1, x]; x <= limit.
  std::uint64_t count_represented(std::uint64_t x) const;

  std::vector<std::uint64_t> members() const;

 private:
  QuadraticForm form_;
  std::uint64_t limit_;
  DenseBitset table_;  // bit n set iff n is represented; bit 0 unused
};

// Marks f(X, Y) for every integer pair with f(X, Y) <= limit.
RepresentedSet sieve_represented(const QuadraticForm& form, std::uint64_t limit,
                                 const Limits& limits = {});

// Direct bounded search for X, Y with f(X, Y) = n, independent of any sieve.
bool is_represented(const QuadraticForm& form, std::uint64_t n);

struct RatioSample {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  double ratio = 0.0;  // count * sqrt(ln x) / x
};

// One sample per x from a single sieve up to max(xs). xs must be strictly
// ascending with every x >= 2.
std::vector<RatioSample> bernays_ratio_table(const QuadraticForm& form,
                                             std::span<const std::uint64_t> xs,
                                             const Limits& limits = {});

double density_ratio(std::uint64_t count, std::uint64_t x);

}  // namespace fewdist
