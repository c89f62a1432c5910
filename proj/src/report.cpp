#include "certisqrt/report.hpp"

#include <algorithm>

namespace certisqrt {

bool VerifyReport::overall() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

void VerifyReport::add(std::string name, std::string property, bool pass, Witness witness) {
  checks_.push_back(Check{std::move(name), std::move(property), pass, std::move(witness)});
}

void VerifyReport::append(const VerifyReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

const Check* VerifyReport::find(const std::string& name) const {
  auto it = std::find_if(checks_.begin(), checks_.end(), [&](const Check& c) { return c.name == name; });
  return it == checks_.end() ? nullptr : &*it;
}

std::vector<std::string> VerifyReport::failed_names() const {
  std::vector<std::string> out;
  for (const Check& c : checks_) {
    if (!c.pass && std::find(out.begin(), out.end(), c.name) == out.end()) out.push_back(c.name);
  }
  return out;
}

void Tally::record(const std::string& name, const std::string& property, bool pass,
                   const std::function<Witness()>& witness) {
  auto [it, inserted] = entries_.try_emplace(name);
  if (inserted) {
    order_.push_back(name);
    it->second.property = property;
  }
  Entry& e = it->second;
  ++e.cases;
  if (!pass) {
    if (e.failures == 0) e.first_failure = witness();
    ++e.failures;
  }
}

void Tally::record(const Check& c) {
  record(c.name, c.property, c.pass, [&] { return c.witness; });
}

void Tally::record_all(const VerifyReport& r) {
  for (const Check& c : r.checks()) record(c);
}

VerifyReport Tally::to_report(std::string subject) const {
  VerifyReport report(std::move(subject));
  for (const std::string& name : order_) {
    const Entry& e = entries_.at(name);
    Witness w{{"cases", std::to_string(e.cases)}, {"failures", std::to_string(e.failures)}};
    for (const auto& kv : e.first_failure) w.emplace_back("first_failure." + kv.first, kv.second);
    report.add(name, e.property, e.failures == 0, std::move(w));
  }
  return report;
}

}  // namespace certisqrt
