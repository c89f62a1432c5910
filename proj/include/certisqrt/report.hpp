#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace certisqrt {

using Witness = std::vector<std::pair<std::string, std::string>>;

/// One checked annotation. `property` names the assertion being checked
/// (e.g. "ROOT: root[v] - delta < sqrt(v) <= root[v]").
struct Check {
  std::string name;
  std::string property;
  bool pass = false;
  Witness witness;
};

class VerifyReport {
 public:
  VerifyReport() = default;
  explicit VerifyReport(std::string subject) : subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }
  const std::vector<Check>& checks() const { return checks_; }

  /// Conjunction of every check; an empty report passes.
  bool overall() const;

  void add(Check c) { checks_.push_back(std::move(c)); }
  void add(std::string name, std::string property, bool pass, Witness witness = {});
  void append(const VerifyReport& other);

  /// First check with this name, or nullptr.
  const Check* find(const std::string& name) const;
  std::vector<std::string> failed_names() const;

 private:
  std::string subject_;
  std::vector<Check> checks_;
};

/// Folds many per-case outcomes of the same named check into one summary
/// check: case count, failure count, and the first failing witness.
class Tally {
 public:
  void record(const std::string& name, const std::string& property, bool pass,
              const std::function<Witness()>& witness);
  void record(const Check& c);
  void record_all(const VerifyReport& r);
  VerifyReport to_report(std::string subject) const;

 private:
  struct Entry {
    std::string property;
    std::size_t cases = 0;
    std::size_t failures = 0;
    Witness first_failure;
  };
  std::vector<std::string> order_;
  std::map<std::string, Entry> entries_;
};

}  // namespace certisqrt
