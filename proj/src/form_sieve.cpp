#include "fewdist/form_sieve.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fewdist/error.hpp"
#include "intmath.hpp"
#include "marking.hpp"

namespace fewdist {
namespace {

using detail::i128;
using detail::u128;

void check_coefficients(const QuadraticForm& f) {
  for (std::int64_t v : {f.a, f.b, f.c}) {
    if (v > kMaxFormCoefficient || v < -kMaxFormCoefficient) {
      fail(ErrorKind::overflow, "form coefficient " + std::to_string(v) +
                                    " exceeds the supported magnitude 2^20");
    }
  }
}

void require_valid(const QuadraticForm& f) {
  const FormVerdict verdict = validate_form(f);
  if (verdict != FormVerdict::valid) {
    fail(ErrorKind::invalid_argument,
         "form (" + std::to_string(f.a) + "," + std::to_string(f.b) + "," +
             std::to_string(f.c) + ") is " + std::string(to_string(verdict)));
  }
}

i128 evaluate(const QuadraticForm& f, i128 x, i128 y) {
  return f.a * x * x + f.b * x * y + f.c * y * y;
}

// Integer roots X of p*X^2 + q*X + r = 0 with p > 0, q and r given, probed
// for existence only.
bool has_integer_root(i128 p, i128 q, i128 r) {
  const i128 disc = q * q - 4 * p * r;
  if (disc < 0) return false;
  std::uint64_t s = 0;
  if (!detail::is_square(static_cast<u128>(disc), &s)) return false;
  const i128 two_p = 2 * p;
  return (-q + static_cast<i128>(s)) % two_p == 0 ||
         (-q - static_cast<i128>(s)) % two_p == 0;
}

}  // namespace

std::string_view to_string(FormVerdict verdict) {
  switch (verdict) {
    case FormVerdict::valid:
      return "valid";
    case FormVerdict::not_primitive:
      return "not-primitive";
    case FormVerdict::not_positive_definite:
      return "not-positive-definite";
    case FormVerdict::square_discriminant:
      return "square-discriminant";
  }
  return "unknown";
}

std::int64_t discriminant(const QuadraticForm& form) {
  check_coefficients(form);
  return form.b * form.b - 4 * form.a * form.c;
}

FormVerdict validate_form(const QuadraticForm& form) {
  const std::int64_t delta = discriminant(form);
  if (std::gcd(std::gcd(form.a, form.b), form.c) != 1) return FormVerdict::not_primitive;
  if (form.a <= 0 || delta >= 0) return FormVerdict::not_positive_definite;
  std::uint64_t root = 0;
  if (delta >= 0 && detail::is_square(static_cast<u128>(delta), &root)) {
    return FormVerdict::square_discriminant;
  }
  return FormVerdict::valid;
}

RepresentedSet::RepresentedSet(QuadraticForm form, std::uint64_t limit, DenseBitset table)
    : form_(form), limit_(limit), table_(std::move(table)) {}

bool RepresentedSet::contains(std::uint64_t n) const {
  require(n >= 1 && n <= limit_, "n=" + std::to_string(n) + " is outside [1, " +
                                     std::to_string(limit_) + "]");
  return table_.test(n);
}

std::uint64_t RepresentedSet::count_represented(std::uint64_t x) const {
  require(x <= limit_, "x=" + std::to_string(x) + " exceeds the sieve limit " +
                           std::to_string(limit_));
  return table_.count_below(x + 1);
}

std::vector<std::uint64_t> RepresentedSet::members() const { return table_.set_positions(); }

RepresentedSet sieve_represented(const QuadraticForm& form, std::uint64_t limit,
                                 const Limits& limits) {
  require_valid(form);
  require(limit >= 1, "sieve limit must be >= 1");
  require(limit < (std::uint64_t{1} << 62), "sieve limit must be below 2^62");
  const std::uint64_t bits = limit + 1;
  detail::check_table_budget(bits, limits, "represented-integer sieve");

  const i128 n = static_cast<i128>(limit);
  const i128 a = form.a, b = form.b, c = form.c;
  const i128 neg_delta = -static_cast<i128>(discriminant(form));

  DenseBitset table;
  if (b == 0) {
    // Only the quadrant X, Y >= 0 matters for a diagonal form.
    const std::uint64_t x_max = detail::isqrt(static_cast<u128>(n / a));
    table = detail::mark_partitioned(
        bits, static_cast<std::size_t>(x_max + 1), limits,
        [&](DenseBitset& t, std::size_t task) {
          const i128 ax2 = a * static_cast<i128>(task) * static_cast<i128>(task);
          const std::uint64_t y_max = detail::isqrt(static_cast<u128>((n - ax2) / c));
          for (std::uint64_t y = 0; y <= y_max; ++y) {
            const i128 v = ax2 + c * static_cast<i128>(y) * static_cast<i128>(y);
            if (v >= 1) t.set(static_cast<std::uint64_t>(v));
          }
        });
  } else {
    // f(X, Y) <= N forces X^2 <= 4cN / |disc|; f(-X, -Y) = f(X, Y) lets X >= 0.
    const std::uint64_t x_max =
        detail::isqrt(static_cast<u128>((4 * c * n) / neg_delta)) + 1;
    table = detail::mark_partitioned(
        bits, static_cast<std::size_t>(x_max + 1), limits,
        [&](DenseBitset& t, std::size_t task) {
          const i128 x = static_cast<i128>(task);
          // c*Y^2 + (b*X)*Y + (a*X^2 - N) <= 0
          const i128 disc = -neg_delta * x * x + 4 * c * n;
          if (disc < 0) return;
          const i128 s = static_cast<i128>(detail::isqrt(static_cast<u128>(disc)));
          const i128 y_lo = detail::floor_div(-b * x - s, 2 * c) - 1;
          const i128 y_hi = detail::floor_div(-b * x + s, 2 * c) + 1;
          for (i128 y = y_lo; y <= y_hi; ++y) {
            const i128 v = evaluate(form, x, y);
            if (v >= 1 && v <= n) t.set(static_cast<std::uint64_t>(v));
          }
        });
  }
  return RepresentedSet(form, limit, std::move(table));
}

bool is_represented(const QuadraticForm& form, std::uint64_t n) {
  require_valid(form);
  require(n >= 1, "n must be >= 1");
  require(n < (std::uint64_t{1} << 62), "n must be below 2^62");
  // Enumerate the variable with the shorter range: with the outer variable T
  // fixed, solve p*S^2 + (b*T)*S + (q*T^2 - n) = 0 for S. The bound
  // T^2 <= 4pn / |disc| follows from completing the square. T >= 0 suffices
  // since f(-X, -Y) = f(X, Y).
  const bool outer_is_y = form.a <= form.c;
  const i128 p = outer_is_y ? form.a : form.c;
  const i128 q = outer_is_y ? form.c : form.a;
  const i128 b = form.b;
  const i128 neg_delta = -static_cast<i128>(discriminant(form));
  const i128 value = static_cast<i128>(n);
  const std::uint64_t t_max = detail::isqrt(static_cast<u128>((4 * p * value) / neg_delta));
  for (std::uint64_t t = 0; t <= t_max; ++t) {
    const i128 ti = static_cast<i128>(t);
    if (has_integer_root(p, b * ti, q * ti * ti - value)) return true;
  }
  return false;
}

double density_ratio(std::uint64_t count, std::uint64_t x) {
  require(x >= 2, "ratio needs x >= 2 (ln x must be positive)");
  const double xd = static_cast<double>(x);
  return static_cast<double>(count) * std::sqrt(std::log(xd)) / xd;
}

std::vector<RatioSample> bernays_ratio_table(const QuadraticForm& form,
                                             std::span<const std::uint64_t> xs,
                                             const Limits& limits) {
  require(!xs.empty(), "ratio table needs at least one sample point");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require(xs[i] >= 2, "sample point x=" + std::to_string(xs[i]) +
                            " is below 2 (ln x must be positive)");
    if (i > 0) require(xs[i] > xs[i - 1], "sample points must be strictly ascending");
  }
  const RepresentedSet set = sieve_represented(form, xs.back(), limits);
  std::vector<RatioSample> out;
  out.reserve(xs.size());
  for (std::uint64_t x : xs) {
    const std::uint64_t count = set.count_represented(x);
    out.push_back({x, count, density_ratio(count, x)});
  }
  return out;
}

}  // namespace fewdist
