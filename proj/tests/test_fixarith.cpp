#include <doctest.h>

#include <random>

#include "certisqrt/fixarith.hpp"
#include "helpers.hpp"

using namespace certisqrt;
using testing_support::dv;
using testing_support::R;
using testing_support::demo_fix;

namespace {

ProfileRef tenths() {
  static ProfileRef p = make_fix_profile(10, 40, 40);
  return p;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InternalInvariant;
}

}  // namespace

TEST_CASE("profile validation") {
  CHECK_NOTHROW(make_fix_profile(100, 1600, 1600));
  CHECK_THROWS_AS(make_fix_profile(2, 100, 100), Error);
  CHECK_THROWS_AS(make_fix_profile(100, 200, 1600), Error);  // inf = 2
  CHECK_THROWS_AS(make_fix_profile(100, 1600, 150), Error);
  CHECK_THROWS_AS(make_fix_profile(0, 1, 1), Error);
  const FixProfile& p = *demo_fix();
  CHECK(p.delta() == R(1, 100));
  CHECK(p.sup() == R(16));
  CHECK(p.inf() == R(16));
}

TEST_CASE("values stay on the grid and in range") {
  CHECK(dv(173).str() == "173/100");
  CHECK(dv(173).value() == R(173, 100));
  CHECK(FixVal::from_int(3, demo_fix()).count() == 300);
  CHECK(kind_of([] { dv(1601); }) == ErrorKind::RangeOverflow);
  CHECK(kind_of([] { dv(-1601); }) == ErrorKind::RangeOverflow);
  CHECK_NOTHROW(dv(-1600));
  CHECK(quantize(R(1, 3), demo_fix()).count() == 33);
  CHECK(quantize(R(1, 200), demo_fix()).count() == 0);
  CHECK(quantize(R(3, 200), demo_fix()).count() == 2);
  CHECK(quantize(R(1, 3), demo_fix(), Rounding::Up).count() == 34);
}

TEST_CASE("exact addition and subtraction") {
  CHECK(fix_add(dv(87), dv(86)) == dv(173));
  CHECK(fix_sub(dv(87), dv(186)) == dv(-99));
  CHECK(kind_of([] { fix_add(dv(1500), dv(200)); }) == ErrorKind::RangeOverflow);
  CHECK(kind_of([] { fix_sub(dv(-1500), dv(200)); }) == ErrorKind::RangeOverflow);
}

TEST_CASE("correctly rounded multiplication and division") {
  CHECK(fix_mul(dv(115), dv(115)).count() == oracle::kMul115x115);
  CHECK(fix_div(dv(300), dv(348)).count() == oracle::kDiv300by348);
  CHECK(fix_div(dv(200), dv(284)).count() == oracle::kDiv200by284);
  CHECK(fix_mul(FixVal(5, tenths()), FixVal(5, tenths())).count() == oracle::kMulTenthsHalfHalf);
  CHECK(fix_mul(dv(5), dv(50)).count() == oracle::kMul5x50);
  CHECK(fix_mul(dv(15), dv(50)).count() == oracle::kMul15x50);
  CHECK(fix_mul(dv(-15), dv(50)).count() == -oracle::kMul15x50);
  CHECK(fix_mul(dv(300), dv(200)) == dv(600));
  CHECK(kind_of([] { fix_div(dv(1), dv(0)); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([] { fix_mul(dv(500), dv(500)); }) == ErrorKind::RangeOverflow);
  // exact product 4.03 rounds to sup = 4.0 but is itself out of range
  CHECK(kind_of([] { fix_mul(FixVal(13, tenths()), FixVal(31, tenths())); }) == ErrorKind::RangeOverflow);
  CHECK(kind_of([] { fix_div(FixVal(-40, tenths()), FixVal(-9, tenths())); }) == ErrorKind::RangeOverflow);
  CHECK(fix_div(FixVal(-36, tenths()), FixVal(-9, tenths())).count() == 40);
  CHECK(kind_of([] { fix_add(dv(1), FixVal(1, tenths())); }) == ErrorKind::Usage);
  CHECK(fix_cmp(dv(141), dv(142)) == Ordering::Less);
  CHECK(fix_cmp(dv(142), dv(142)) == Ordering::Equal);
}

TEST_CASE("rounding contract property on random demo operands") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> d(-1600, 1600);
  const Rational half = R(1, 200);
  for (int i = 0; i < 20000; ++i) {
    FixVal a = dv(d(rng)), b = dv(d(rng));
    Rational prod = a.value() * b.value();
    if (prod.abs() <= R(16)) {
      FixVal m = fix_mul(a, b);
      CHECK((m.value() - prod).abs() <= half);
      if ((prod * R(100)).is_integer()) CHECK(m.value() == prod);
    }
    if (b.count() != 0) {
      Rational quo = a.value() / b.value();
      if (quo.abs() <= R(16)) {
        FixVal q = fix_div(a, b);
        CHECK((q.value() - quo).abs() <= half);
        Rational twice = quo * R(200);
        if (twice.is_integer() && !(quo * R(100)).is_integer()) CHECK(q.count() % 2 == 0);
      }
    }
  }
}

TEST_CASE("assumption check over the micro profile is exhaustive and clean") {
  VerifyReport r = check_profile_assumptions(*tenths(), AssumptionBudget::exhaustive());
  CHECK(r.overall());
  const Check* mul = r.find("mul.error_le_half_delta");
  REQUIRE(mul != nullptr);
  bool counted = false;
  for (const auto& [k, v] : mul->witness) {
    if (k == "cases") {
      counted = true;
      CHECK(std::stol(v) > 0);
    }
  }
  CHECK(counted);
  CHECK(r.find("div.by_zero_raised") != nullptr);
}

TEST_CASE("assumption check flags a coarse grid") {
  VerifyReport r = check_profile_assumptions(FixProfile{2, 100, 100}, AssumptionBudget::sampled(200, 1));
  CHECK_FALSE(r.overall());
  auto failed = r.failed_names();
  CHECK(std::find(failed.begin(), failed.end(), "0 < delta < 1/2") != failed.end());
}

TEST_CASE("sampled assumption check is deterministic") {
  VerifyReport a = check_profile_assumptions(*demo_fix(), AssumptionBudget::sampled(500, 9));
  VerifyReport b = check_profile_assumptions(*demo_fix(), AssumptionBudget::sampled(500, 9));
  REQUIRE(a.checks().size() == b.checks().size());
  for (std::size_t i = 0; i < a.checks().size(); ++i) {
    CHECK(a.checks()[i].name == b.checks()[i].name);
    CHECK(a.checks()[i].witness == b.checks()[i].witness);
  }
  CHECK(a.overall());
}
