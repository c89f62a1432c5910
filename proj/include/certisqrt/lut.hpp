#pragma once

// Look-up-table seeding: the step configuration, the rounding-up function onto
// multiples of the step, the pre-computed root table, and the seed function SUP.
//
// Properties maintained here:
//   STEP   stp is a multiple of eps, stp divides sup_T, stp >= 2 delta
//   ROOT   root[v] - delta < sqrt(v) <= root[v] for every index v
//   ROUND  round(u) - stp < u <= round(u) for every grid u > 1

#include <cstddef>
#include <vector>

#include "certisqrt/fixarith.hpp"

namespace certisqrt {

struct StepConfig {
  FixVal stp;
  FixVal eps;
};

/// Index values are v = k * stp for k = first_index, first_index + 1, ... with
/// 1 < v <= sup_T. Entries are stored as grid counts.
class RootTable {
 public:
  /// Checks shape only (entry count matches the index set); ROOT is checked by
  /// build_root_table and by the verify module.
  RootTable(FixVal stp, std::vector<BigInt> roots);

  const FixVal& stp() const { return stp_; }
  const FixProfile& profile() const { return stp_.profile(); }
  const ProfileRef& profile_ref() const { return stp_.profile_ref(); }
  std::size_t size() const { return roots_.size(); }
  const BigInt& first_index() const { return first_index_; }
  const std::vector<BigInt>& root_counts() const { return roots_; }

  FixVal index_value(std::size_t i) const;
  FixVal root_value(std::size_t i) const;
  /// Throws Domain unless v is an index value.
  FixVal root_at(const FixVal& v) const;

  /// Copy with entry i replaced; used to build corrupted tables for negative controls.
  RootTable with_entry(std::size_t i, BigInt count) const;

  friend bool operator==(const RootTable& a, const RootTable& b);

 private:
  FixVal stp_;
  BigInt first_index_;
  std::vector<BigInt> roots_;
};

/// Number of multiples of stp in (1, sup_T].
BigInt index_count(const FixProfile& profile, const FixVal& stp);

/// Table size cap: CERTISQRT_MAX_TABLE if set, otherwise 1 << 22.
std::size_t default_max_table_entries();

VerifyReport validate_step(const FixVal& stp, const FixVal& eps, const FixProfile& profile);

/// Each entry is the least grid value g with g^2 >= v. Throws Domain when stp
/// is not a positive divisor of sup_T and ResourceLimit above max_entries.
RootTable build_root_table(const ProfileRef& profile, const FixVal& stp,
                           std::size_t max_entries = default_max_table_entries());

/// ceil(u / stp) * stp for grid u > 1.
FixVal round_up_to_step(const FixVal& u, const FixVal& stp);

/// min(u, root[round_up_to_step(u)]) for grid u in (1, sup_T].
FixVal sup_fn(const FixVal& u, const RootTable& table);

/// SUP extended to rationals: root[v] clamped to u for u in (1, sup_T], and u
/// itself elsewhere above 1.
Rational sup_exact(const Rational& u, const RootTable& table);

}  // namespace certisqrt
