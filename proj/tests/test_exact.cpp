#include <doctest.h>

#include <cmath>
#include <random>

#include "certisqrt/exact.hpp"
#include "helpers.hpp"

using namespace certisqrt;
using testing_support::R;

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("12/8") == R(3, 2));
  CHECK(Rational::parse("1.25") == R(5, 4));
  CHECK(Rational::parse("-3e2") == R(-300));
  CHECK(Rational::parse("1.5e-1") == R(3, 20));
  CHECK(Rational::parse(" 7 ") == R(7));
  CHECK(Rational::parse("3.00") == R(3));
  for (const char* bad : {"", "abc", "1/0", "1..2", "1/", "e5", "--1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), Error);
  }
}

TEST_CASE("rational canonical form and printing") {
  Rational q(BigInt(6), BigInt(-4));
  CHECK(q.num() == -3);
  CHECK(q.den() == 2);
  CHECK(q.str() == "-3/2");
  CHECK(R(4).str() == "4/1");
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), Error);
}

TEST_CASE("rounding helpers") {
  CHECK(divide_rounded(5, 2, Rounding::NearestEven) == 2);
  CHECK(divide_rounded(7, 2, Rounding::NearestEven) == 4);
  CHECK(divide_rounded(-5, 2, Rounding::NearestEven) == -2);
  CHECK(divide_rounded(7, 3, Rounding::Up) == 3);
  CHECK(divide_rounded(-7, 3, Rounding::Down) == -3);
  CHECK(floor_of(R(-1, 2)) == -1);
  CHECK(ceil_of(R(-1, 2)) == 0);
  CHECK(to_decimal(R(1, 3), 5) == "0.33333");
  CHECK(to_decimal(R(5, 2), 0) == "2");
  CHECK(to_decimal(R(7, 2), 0) == "4");
  CHECK(to_decimal(R(-1, 8), 2) == "-0.12");
  CHECK(pow_int(R(2), -3) == R(1, 8));
}

TEST_CASE("integer square roots") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(15) == 3);
  CHECK(isqrt(16) == 4);
  CHECK(ceil_sqrt(15) == 4);
  CHECK(ceil_sqrt(16) == 4);
  CHECK(ceil_sqrt(17) == 5);
  CHECK_THROWS_AS(isqrt(-1), Error);
  CHECK(is_perfect_square(R(9, 4)));
  CHECK_FALSE(is_perfect_square(R(2)));
  CHECK_FALSE(is_perfect_square(R(9, 8)));
}

TEST_CASE("integer square root property") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    BigInt n(std::to_string(rng()));
    n = n * n + BigInt(std::to_string(rng() % 1000));
    BigInt r = isqrt(n);
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
    BigInt c = ceil_sqrt(n);
    CHECK(c * c >= n);
    CHECK((c - 1) * (c - 1) < n);
  }
}

TEST_CASE("comparison with a square root") {
  CHECK(cmp_sqrt(R(141, 100), R(2)) == Ordering::Less);
  CHECK(cmp_sqrt(R(142, 100), R(2)) == Ordering::Greater);
  CHECK(cmp_sqrt(R(3, 2), R(9, 4)) == Ordering::Equal);
  CHECK(cmp_sqrt(R(-1), R(1)) == Ordering::Less);
  CHECK_THROWS_AS(cmp_sqrt(R(1), R(-1)), Error);
  CHECK(within_of_sqrt(R(17, 12), R(2), R(1, 100)));
  CHECK_FALSE(within_of_sqrt(R(17, 12), R(2), R(1, 1000)));
  CHECK(within_of_sqrt(R(2), R(4), R(0)));
  CHECK_FALSE(within_of_sqrt(R(2), R(4), R(0), Strictness::Strict));
  CHECK(within_of_sqrt(R(21, 10), R(4), R(1, 10)));
  CHECK_FALSE(within_of_sqrt(R(21, 10), R(4), R(1, 10), Strictness::Strict));
}

TEST_CASE("square root enclosure") {
  SqrtEnclosure e = sqrt_enclosure(R(2), 64);
  CHECK(cmp_sqrt(e.lo, R(2)) != Ordering::Greater);
  CHECK(cmp_sqrt(e.hi, R(2)) != Ordering::Less);
  CHECK(e.hi - e.lo <= pow_int(R(2), -64));
  SqrtEnclosure exact = sqrt_enclosure(R(9, 16), 8);
  CHECK(exact.lo == R(3, 4));
  CHECK(exact.hi == R(3, 4));
}

TEST_CASE("signs of radical expressions") {
  CHECK(radical_sign(R(1), R(-1), R(2)) == -1);
  CHECK(radical_sign(R(3), R(-2), R(2)) == 1);
  CHECK(radical_sign(R(-3), R(2), R(2)) == -1);
  CHECK(radical_sign(R(0), R(0), R(5)) == 0);
  CHECK(radical_sign(R(-1), R(1), R(1)) == 0);
  CHECK(radical_sign(R(-2), R(1), R(4)) == 0);
  CHECK(radical_sign(R(5), R(7), R(0)) == 1);
  CHECK(decide_radical_lt(R(0), R(1, 4), R(-1, 400), R(2)));
  CHECK_FALSE(decide_radical_lt(R(1), R(0), R(1), R(1)));
  CHECK_THROWS_AS(decide_radical_lt(R(0), R(1), R(1), R(0)), Error);
  // sqrt(12) against 3.46 +- bound pieces
  CHECK(cmp_sqrt_radical(R(12), R(346, 100), R(0), R(2)) == Ordering::Greater);
  CHECK(cmp_sqrt_radical(R(8), R(0), R(2), R(2)) == Ordering::Equal);
  CHECK(cmp_sqrt_radical(R(8), R(1), R(1), R(2)) == Ordering::Greater);
  CHECK(cmp_sqrt_radical(R(8), R(1, 2), R(2), R(2)) == Ordering::Less);
}

TEST_CASE("radical sign property against double evaluation") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-50, 50), m(0, 40);
  for (int i = 0; i < 5000; ++i) {
    int c1 = d(rng), c2 = d(rng), mm = m(rng);
    double v = c1 + c2 * std::sqrt(static_cast<double>(mm));
    int got = radical_sign(R(c1), R(c2), R(mm));
    if (std::abs(v) > 1e-9) {
      CAPTURE(c1);
      CAPTURE(c2);
      CAPTURE(mm);
      CHECK(got == (v > 0 ? 1 : -1));
    }
  }
}

TEST_CASE("distance comparison and gap logarithm") {
  CHECK(compare_sqrt_distance(R(141, 100), R(142, 100), R(2)) == Ordering::Less);
  CHECK(compare_sqrt_distance(R(1), R(3), R(4)) == Ordering::Equal);
  CHECK(compare_sqrt_distance(R(100, 100), R(101, 100), R(102, 100)) == Ordering::Greater);
  CHECK(ceil_log2_sqrt_gap(R(2), R(2), R(1, 100)) == oracle::kLog2Gap_2_2_centi);
  CHECK(ceil_log2_sqrt_gap(R(1000), R(10), R(1)) == oracle::kLog2Gap_1000_10_1);
  CHECK(ceil_log2_sqrt_gap(R(3, 2), R(2), R(1, 8)) == oracle::kLog2Gap_3over2_2_1over8);
  CHECK(ceil_log2_sqrt_gap(R(2), R(2), R(1000)) < 0);
  CHECK_THROWS_AS(ceil_log2_sqrt_gap(R(2), R(4), R(1)), Error);
  Rational shown = display_sqrt_distance(R(17, 12), R(2));
  CHECK(std::abs(shown.approx() - 0.0024531) < 1e-6);
}

TEST_CASE("witness strings stay short for huge fractions") {
  CHECK(witness_str(R(3, 7)) == "3/7");
  Rational big = pow_int(R(3, 7), 400);
  std::string s = witness_str(big);
  CHECK(s.size() < 60);
  CHECK(s.find("-bit fraction") != std::string::npos);
}
