#include "certisqrt/lut.hpp"

#include <cstdlib>
#include <string>
#include <utility>

namespace certisqrt {

namespace {

constexpr std::size_t kDefaultMaxTable = std::size_t{1} << 22;

BigInt first_index_for(const FixProfile& p, const FixVal& stp) {
  // least k with k * stp_count > delta_den
  return divide_rounded(p.delta_den, stp.count(), Rounding::Down) + 1;
}

}  // namespace

BigInt index_count(const FixProfile& p, const FixVal& stp) {
  if (stp.count() <= 0) raise(ErrorKind::Domain, "step must be positive");
  BigInt last = divide_rounded(p.sup_count, stp.count(), Rounding::Down);
  BigInt n = last - first_index_for(p, stp) + 1;
  return n < 0 ? BigInt(0) : n;
}

RootTable::RootTable(FixVal stp, std::vector<BigInt> roots)
    : stp_(std::move(stp)), roots_(std::move(roots)) {
  if (stp_.count() <= 0) raise(ErrorKind::Domain, "table step must be positive");
  first_index_ = first_index_for(stp_.profile(), stp_);
  if (BigInt(static_cast<unsigned long>(roots_.size())) != index_count(stp_.profile(), stp_)) {
    raise(ErrorKind::Domain, "table has " + std::to_string(roots_.size()) + " entries, expected " +
                                 index_count(stp_.profile(), stp_).get_str());
  }
}

FixVal RootTable::index_value(std::size_t i) const {
  return FixVal(BigInt((first_index_ + static_cast<unsigned long>(i)) * stp_.count()), profile_ref());
}

FixVal RootTable::root_value(std::size_t i) const { return FixVal(roots_.at(i), profile_ref()); }

FixVal RootTable::root_at(const FixVal& v) const {
  if (!same_profile(v, stp_)) raise(ErrorKind::Usage, "root_at: index from a different profile");
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.count().get_mpz_t(), stp_.count().get_mpz_t());
  BigInt i = q - first_index_;
  if (r != 0 || i < 0 || i >= static_cast<unsigned long>(roots_.size())) {
    raise(ErrorKind::Domain, "root_at: " + v.str() + " is not a table index");
  }
  return root_value(i.get_ui());
}

RootTable RootTable::with_entry(std::size_t i, BigInt count) const {
  RootTable copy = *this;
  copy.roots_.at(i) = std::move(count);
  return copy;
}

bool operator==(const RootTable& a, const RootTable& b) { return a.stp_ == b.stp_ && a.roots_ == b.roots_; }

std::size_t default_max_table_entries() {
  if (const char* env = std::getenv("CERTISQRT_MAX_TABLE")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return kDefaultMaxTable;
}

VerifyReport validate_step(const FixVal& stp, const FixVal& eps, const FixProfile& profile) {
  VerifyReport report("step " + stp.str() + " eps " + eps.str());
  const char* prop = "STEP";
  bool positive = stp.count() > 0 && eps.count() > 0;
  report.add("stp > 0 and eps > 0", prop, positive, {{"stp", stp.str()}, {"eps", eps.str()}});
  if (!positive) return report;
  bool multiple = mpz_divisible_p(stp.count().get_mpz_t(), eps.count().get_mpz_t()) != 0;
  report.add("stp multiple of eps", prop, multiple, {{"stp", stp.str()}, {"eps", eps.str()}});
  bool divides = mpz_divisible_p(profile.sup_count.get_mpz_t(), stp.count().get_mpz_t()) != 0;
  report.add("stp divides sup_T", prop, divides, {{"stp", stp.str()}, {"sup_T", profile.sup().str()}});
  report.add("stp >= 2 delta", "seed gap SUP(y) - sqrt(y) <= stp", stp.count() >= 2,
             {{"stp", stp.str()}, {"delta", profile.delta().str()}});
  return report;
}

RootTable build_root_table(const ProfileRef& profile, const FixVal& stp, std::size_t max_entries) {
  if (!(stp.profile() == *profile)) raise(ErrorKind::Usage, "build_root_table: step from a different profile");
  if (stp.count() <= 0) raise(ErrorKind::Domain, "build_root_table: step must be positive");
  if (!mpz_divisible_p(profile->sup_count.get_mpz_t(), stp.count().get_mpz_t())) {
    raise(ErrorKind::Domain, "build_root_table: stp " + stp.str() + " does not divide sup_T");
  }
  BigInt n = index_count(*profile, stp);
  if (n > static_cast<unsigned long>(max_entries)) {
    raise(ErrorKind::ResourceLimit, "root table needs " + n.get_str() + " entries, limit is " + std::to_string(max_entries));
  }
  std::vector<BigInt> roots;
  roots.reserve(n.get_ui());
  BigInt k = first_index_for(*profile, stp);
  for (unsigned long i = 0; i < n.get_ui(); ++i, ++k) {
    // v = c * delta; least g with (g delta)^2 >= c delta, i.e. g^2 >= c * delta_den.
    BigInt c = k * stp.count();
    roots.push_back(ceil_sqrt(BigInt(c * profile->delta_den)));
  }
  return RootTable(stp, std::move(roots));
}

FixVal round_up_to_step(const FixVal& u, const FixVal& stp) {
  if (!same_profile(u, stp)) raise(ErrorKind::Usage, "round_up_to_step: operands from different profiles");
  if (stp.count() <= 0) raise(ErrorKind::Domain, "round_up_to_step: step must be positive");
  if (u.count() <= u.profile().delta_den) raise(ErrorKind::Domain, "round_up_to_step: u = " + u.str() + " must exceed 1");
  BigInt n = divide_rounded(u.count(), stp.count(), Rounding::Up) * stp.count();
  if (n > u.profile().sup_count) raise(ErrorKind::RangeOverflow, "round_up_to_step: result exceeds sup_T");
  return FixVal(std::move(n), u.profile_ref());
}

FixVal sup_fn(const FixVal& u, const RootTable& table) {
  const FixProfile& p = table.profile();
  if (u.count() <= p.delta_den || u.count() > p.sup_count) {
    raise(ErrorKind::Domain, "sup_fn: u = " + u.str() + " outside (1, sup_T]");
  }
  FixVal root = table.root_at(round_up_to_step(u, table.stp()));
  return fix_cmp(root, u) == Ordering::Greater ? u : root;
}

Rational sup_exact(const Rational& u, const RootTable& table) {
  const FixProfile& p = table.profile();
  if (u <= Rational(1)) raise(ErrorKind::Domain, "sup_exact: u = " + u.str() + " must exceed 1");
  if (u > p.sup()) return u;
  Rational stp = table.stp().value();
  BigInt k = ceil_of(u / stp);
  FixVal v(BigInt(k * table.stp().count()), table.profile_ref());
  return min(u, table.root_at(v).value());
}

}  // namespace certisqrt
