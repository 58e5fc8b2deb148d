#include "stylo/code_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "stylo/errors.hpp"

namespace stylo {

namespace {

std::string describe_failures(const std::vector<ProfileError::Failure>& failures) {
  std::string msg = "profile measures failed:";
  for (const auto& [name, why] : failures) msg += " [" + name + ": " + why + "]";
  return msg;
}

}  // namespace

ProfileError::ProfileError(std::vector<Failure> failures)
    : std::runtime_error(describe_failures(failures)), failures_(std::move(failures)) {}

Alphabet::Alphabet(std::string letters) : letters_(std::move(letters)) {
  if (letters_.size() < 2) throw std::invalid_argument("alphabet needs at least two letters");
  std::set<char> seen;
  for (char c : letters_) {
    if (c < 'a' || c > 'z') throw std::invalid_argument("alphabet letters must be lowercase a-z");
    if (!seen.insert(c).second) throw std::invalid_argument("alphabet letters must be distinct");
  }
}

const Alphabet& Alphabet::standard() {
  static const Alphabet alphabet("abcdefghijklmnopqrst");
  return alphabet;
}

bool Alphabet::contains(char c) const noexcept {
  return letters_.find(c) != std::string::npos;
}

Code::Code(std::string id, std::string letters, const Alphabet& alphabet)
    : id_(std::move(id)), letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("code must be non-empty");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (!alphabet.contains(letters_[i]))
      throw std::invalid_argument("letter '" + std::string(1, letters_[i]) + "' at position " +
                                  std::to_string(i) + " is not in the alphabet");
  }
}

FunctionClassSpec::FunctionClassSpec(std::vector<Tuple> domain,
                                     std::vector<std::vector<Word>> expected,
                                     std::size_t step_cap)
    : domain_(std::move(domain)), expected_(std::move(expected)), step_cap_(step_cap) {
  if (domain_.empty()) throw std::invalid_argument("function class domain must be non-empty");
  if (expected_.size() != domain_.size())
    throw std::invalid_argument("expected outputs must have one entry per domain element");
  const auto arity = domain_.front().size();
  for (const auto& t : domain_)
    if (t.size() != arity) throw std::invalid_argument("domain tuples must share one arity");
  if (step_cap_ == 0) throw std::invalid_argument("step cap must be positive");
}

FunctionClassSpec FunctionClassSpec::restricted(std::span<const std::size_t> indices) const {
  std::vector<Tuple> domain;
  std::vector<std::vector<Word>> expected;
  for (auto i : indices) {
    domain.push_back(domain_.at(i));
    expected.push_back(expected_.at(i));
  }
  return FunctionClassSpec(std::move(domain), std::move(expected), step_cap_);
}

Profile::Profile(std::string code_id, std::vector<double> values, std::vector<std::string> names)
    : code_id_(std::move(code_id)), values_(std::move(values)), names_(std::move(names)) {
  if (values_.empty()) throw std::invalid_argument("profile must have at least one measure");
  if (values_.size() != names_.size())
    throw std::invalid_argument("profile needs one name per value");
  for (double v : values_)
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("profile values must lie in [0,1]");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw std::invalid_argument("measure names must be distinct");
}

double normalize_unbounded(double x) {
  if (!(x >= 0.0)) throw std::domain_error("normalize_unbounded needs x >= 0");
  if (std::isinf(x)) return 1.0;
  return x / (1.0 + x);
}

double p_norm(std::span<const double> v, NormSpec spec) {
  if (!(spec.p >= 1.0)) throw std::domain_error("p-norm needs p >= 1");
  if (v.empty()) throw std::invalid_argument("p-norm of an empty vector");
  if (spec.p == 2.0) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  if (spec.p == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), spec.p);
  return std::pow(s, 1.0 / spec.p);
}

MeasureRegistry::MeasureRegistry(std::vector<MeasureEntry> entries) {
  for (auto& e : entries) add(std::move(e));
}

void MeasureRegistry::add(MeasureEntry entry) {
  if (entry.name.empty()) throw std::invalid_argument("measure name must be non-empty");
  auto same = [&](const MeasureEntry& e) { return e.name == entry.name; };
  if (std::any_of(entries_.begin(), entries_.end(), same))
    throw std::invalid_argument("duplicate measure '" + entry.name + "'");
  entries_.push_back(std::move(entry));
}

std::vector<std::string> MeasureRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

Profile build_profile(const Code& code, const MeasureRegistry& registry,
                      const AnalysisContext& context) {
  if (registry.empty()) throw std::invalid_argument("measure registry is empty");
  std::vector<double> values;
  std::vector<ProfileError::Failure> failures;
  for (const auto& entry : registry.entries()) {
    try {
      double raw = entry.measure(code, context);
      double v = entry.needs_normalization ? normalize_unbounded(raw) : raw;
      if (!(v >= 0.0 && v <= 1.0))
        throw std::domain_error("value " + std::to_string(v) + " outside [0,1]");
      values.push_back(v);
    } catch (const std::exception& e) {
      failures.emplace_back(entry.name, e.what());
    }
  }
  if (!failures.empty()) throw ProfileError(std::move(failures));
  return Profile(code.id(), std::move(values), registry.names());
}

}  // namespace stylo
