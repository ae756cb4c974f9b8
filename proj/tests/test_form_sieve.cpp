#include <cmath>

#include "doctest.h"
#include "fewdist/error.hpp"
#include "fewdist/form_sieve.hpp"
#include "fewdist/lattice.hpp"
#include "oracles.hpp"

using namespace fewdist;

namespace {

const QuadraticForm kQ{1, 0, 2};
const QuadraticForm kSumOfSquares{1, 0, 1};

std::vector<std::uint64_t> oracle_members(const QuadraticForm& f, long long limit) {
  // Completing the square: X^2 <= 4cn/|disc| and Y^2 <= 4an/|disc|.
  const double neg_disc = static_cast<double>(4 * f.a * f.c - f.b * f.b);
  const auto bound = static_cast<long long>(
                         std::sqrt(4.0 * std::max(f.a, f.c) * limit / neg_disc)) + 2;
  std::vector<std::uint64_t> out;
  for (long long n = 1; n <= limit; ++n) {
    if (oracle::represented(f.a, f.b, f.c, n, bound)) out.push_back(static_cast<std::uint64_t>(n));
  }
  return out;
}

}  // namespace

TEST_SUITE("form_sieve") {

TEST_CASE("discriminant examples") {
  CHECK(discriminant(kQ) == -8);
  CHECK(discriminant(kSumOfSquares) == -4);
  CHECK(discriminant({1, 1, 1}) == -3);
}

TEST_CASE("validate_form reports the violated hypothesis") {
  CHECK(validate_form(kQ) == FormVerdict::valid);
  CHECK(validate_form({2, 0, 4}) == FormVerdict::not_primitive);
  CHECK(validate_form({1, 0, -2}) == FormVerdict::not_positive_definite);
  CHECK(validate_form({-1, 0, -2}) == FormVerdict::not_positive_definite);
  CHECK(validate_form({0, 0, 0}) == FormVerdict::not_primitive);
  CHECK(validate_form({1, 2, 1}) == FormVerdict::not_positive_definite);  // (X+Y)^2, disc 0
  CHECK(validate_form({2, 1, 3}) == FormVerdict::valid);
  CHECK(to_string(FormVerdict::square_discriminant) == "square-discriminant");
  CHECK_THROWS_AS(validate_form({kMaxFormCoefficient + 1, 0, 1}), Error);
}

TEST_CASE("sieve examples") {
  CHECK(sieve_represented(kQ, 10).members() == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9});
  CHECK(sieve_represented(kQ, 1).members() == std::vector<std::uint64_t>{1});
  CHECK(sieve_represented(kSumOfSquares, 10).members() ==
        std::vector<std::uint64_t>{1, 2, 4, 5, 8, 9, 10});
}

TEST_CASE("sieve rejects invalid forms and oversized tables") {
  CHECK_THROWS_AS(sieve_represented({2, 0, 4}, 10), Error);
  CHECK_THROWS_AS(sieve_represented(kQ, 0), Error);
  Limits tiny;
  tiny.max_table_bytes = 1024;
  CHECK(sieve_represented(kQ, 8191, tiny).limit() == 8191);
  try {
    sieve_represented(kQ, 8192, tiny);
    FAIL("expected budget refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::budget);
    CHECK(std::string(e.what()).find("--max-sieve-bytes") != std::string::npos);
  }
}

TEST_CASE("count_represented examples") {
  const RepresentedSet set = sieve_represented(kQ, 12);
  CHECK(set.count_represented(10) == 7);
  CHECK(set.count_represented(1) == 1);
  CHECK(set.count_represented(12) == 9);
  CHECK(set.count_represented(0) == 0);
  CHECK_THROWS_AS(set.count_represented(13), Error);
  CHECK_THROWS_AS(set.contains(0), Error);
}

TEST_CASE("is_represented examples") {
  CHECK(is_represented(kQ, 3));
  CHECK_FALSE(is_represented(kQ, 5));
  CHECK_FALSE(is_represented(kQ, 10));
  CHECK(is_represented(kQ, 11));
  CHECK_THROWS_AS(is_represented({1, 0, -2}, 3), Error);
}

TEST_CASE("sieve and per-integer search agree with the brute-force oracle on several forms") {
  const std::vector<QuadraticForm> forms{kQ, kSumOfSquares, {1, 1, 1}, {2, 1, 3}, {1, 0, 5},
                                         {2, 2, 3}, {3, -2, 5}, {1, 1, 6}, {5, 4, 1}};
  for (const QuadraticForm& f : forms) {
    CAPTURE(f.a);
    CAPTURE(f.b);
    CAPTURE(f.c);
    REQUIRE(validate_form(f) == FormVerdict::valid);
    const auto expected = oracle_members(f, 400);
    CHECK(sieve_represented(f, 400).members() == expected);
    std::vector<std::uint64_t> searched;
    for (std::uint64_t n = 1; n <= 400; ++n) {
      if (is_represented(f, n)) searched.push_back(n);
    }
    CHECK(searched == expected);
  }
}

TEST_CASE("sieve is independent of the worker count") {
  for (const QuadraticForm& f : {kQ, QuadraticForm{3, -2, 5}}) {
    const auto reference = sieve_represented(f, 200000).members();
    for (unsigned workers : {2u, 5u, 16u}) {
      Limits limits;
      limits.workers = workers;
      CHECK(sieve_represented(f, 200000, limits).members() == reference);
    }
  }
}

TEST_CASE("count_represented is monotone and bounded by x") {
  const RepresentedSet set = sieve_represented(kQ, 5000);
  std::uint64_t prev = 0;
  for (std::uint64_t x = 0; x <= 5000; ++x) {
    const std::uint64_t c = set.count_represented(x);
    CHECK(c >= prev);
    CHECK(c <= x);
    prev = c;
  }
}

TEST_CASE("values of u^2 + 2v^2 are closed under multiplication") {
  const RepresentedSet set = sieve_represented(kQ, 40000);
  const auto members = sieve_represented(kQ, 200).members();
  for (std::uint64_t a : members) {
    for (std::uint64_t b : members) {
      CHECK(set.contains(a * b));
    }
  }
}

TEST_CASE("box distances never outnumber represented integers below 3m^2") {
  const RepresentedSet set = sieve_represented(kQ, 3 * 80 * 80);
  for (std::int64_t m = 2; m <= 80; ++m) {
    const auto distinct = distinct_count_via_value_grid(LatticeModel(2), m);
    CHECK(distinct <= set.count_represented(static_cast<std::uint64_t>(3 * m * m)));
  }
}

TEST_CASE("ratio table examples") {
  const std::vector<std::uint64_t> ten{10};
  const auto one = bernays_ratio_table(kQ, ten);
  REQUIRE(one.size() == 1);
  CHECK(one[0].count == 7);
  CHECK(one[0].ratio == doctest::Approx(7.0 * std::sqrt(std::log(10.0)) / 10.0));
  CHECK(one[0].ratio == doctest::Approx(1.062).epsilon(1e-3));

  const std::vector<std::uint64_t> degenerate{1};
  CHECK_THROWS_AS(bernays_ratio_table(kQ, degenerate), Error);
  CHECK_THROWS_AS(bernays_ratio_table(kQ, std::vector<std::uint64_t>{}), Error);
  const std::vector<std::uint64_t> unsorted{100, 10};
  CHECK_THROWS_AS(bernays_ratio_table(kQ, unsorted), Error);
}

TEST_CASE("ratio table regression through 10^6") {
  // Frozen from an independent numpy enumeration of u^2 + 2v^2.
  const std::vector<std::uint64_t> xs{1000, 10000, 100000, 1000000};
  const std::vector<std::uint64_t> counts{377, 3147, 27512, 247611};
  const auto table = bernays_ratio_table(kQ, xs);
  REQUIRE(table.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(table[i].x == xs[i]);
    CHECK(table[i].count == counts[i]);
    if (i > 0) {
      CHECK(static_cast<double>(table[i].count) / table[i].x <
            static_cast<double>(table[i - 1].count) / table[i - 1].x);
    }
  }
}

}  // TEST_SUITE
