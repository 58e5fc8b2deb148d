#pragma once

// Core value types shared by every analysis: alphabets, codes, function
// classes, measure profiles and the registry that produces them.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

using Word = std::uint32_t;
using Tuple = std::vector<Word>;

class Alphabet {
 public:
  /// Letters must be distinct lowercase Latin characters, at least two.
  explicit Alphabet(std::string letters);

  /// The 20-letter instruction alphabet a..t interpreted by the vm.
  static const Alphabet& standard();

  std::string_view letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool contains(char c) const noexcept;

 private:
  std::string letters_;
};

/// A finite non-empty string over an alphabet.
class Code {
 public:
  Code(std::string id, std::string letters,
       const Alphabet& alphabet = Alphabet::standard());

  const std::string& id() const noexcept { return id_; }
  const std::string& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }

  friend bool operator==(const Code&, const Code&) = default;

 private:
  std::string id_;
  std::string letters_;
};

/// Finite input domain D_f with the expected output sequence per input.
class FunctionClassSpec {
 public:
  static constexpr std::size_t kDefaultStepCap = 20000;

  FunctionClassSpec(std::vector<Tuple> domain, std::vector<std::vector<Word>> expected,
                    std::size_t step_cap = kDefaultStepCap);

  const std::vector<Tuple>& domain() const noexcept { return domain_; }
  const std::vector<std::vector<Word>>& expected() const noexcept { return expected_; }
  std::size_t step_cap() const noexcept { return step_cap_; }
  std::size_t arity() const noexcept { return domain_.front().size(); }

  /// The same function restricted to the listed domain indices.
  FunctionClassSpec restricted(std::span<const std::size_t> indices) const;

 private:
  std::vector<Tuple> domain_;
  std::vector<std::vector<Word>> expected_;
  std::size_t step_cap_;
};

/// Normalized measure values mu(code), each component in [0,1].
class Profile {
 public:
  Profile(std::string code_id, std::vector<double> values, std::vector<std::string> names);

  const std::string& code_id() const noexcept { return code_id_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::string code_id_;
  std::vector<double> values_;
  std::vector<std::string> names_;
};

struct NormSpec {
  double p = 2.0;
};

/// x / (1 + x): maps [0, inf) monotonically onto [0, 1).
double normalize_unbounded(double x);

/// (sum |v_i|^p)^(1/p). Throws std::domain_error when p < 1.
double p_norm(std::span<const double> v, NormSpec spec = {});

/// Extra inputs that some measures need (behavioral measures need a spec).
struct AnalysisContext {
  std::optional<FunctionClassSpec> spec;
  int level = 2;
};

using RawMeasure = std::function<double(const Code&, const AnalysisContext&)>;

struct MeasureEntry {
  std::string name;
  RawMeasure measure;
  bool needs_normalization = true;
};

class MeasureRegistry {
 public:
  MeasureRegistry() = default;
  explicit MeasureRegistry(std::vector<MeasureEntry> entries);

  void add(MeasureEntry entry);
  const std::vector<MeasureEntry>& entries() const noexcept { return entries_; }
  std::vector<std::string> names() const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<MeasureEntry> entries_;
};

/// Evaluates every registry measure in order. Failures of individual
/// measures are collected and raised together as a ProfileError.
Profile build_profile(const Code& code, const MeasureRegistry& registry,
                      const AnalysisContext& context = {});

}  // namespace stylo
