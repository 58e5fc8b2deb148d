#pragma once

// Hierarchical and evolutionary measures over the level decomposition:
// spaghetti length, reuse, redundancy, brittleness, mutation robustness.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stylo/code_model.hpp"
#include "stylo/structure.hpp"

namespace stylo {

/// max / sum of the per-unit subunit counts; nullopt when the sum is zero.
std::optional<double> spaghetti_ratio(std::span<const std::size_t> counts);

struct SpaghettiResult {
  std::array<std::optional<double>, 4> per_level;  // index 1..3
  double overall = 0.0;                             // max over defined levels
};

SpaghettiResult spaghetti(const LevelDecomposition& decomp);

/// Largest per-unit number of distinct subunit keys used at least
/// `threshold` times, divided by the total subunit count.
double reuse_ratio(const std::vector<KeyCounts>& per_unit, std::size_t threshold);

double reuse(const LevelDecomposition& decomp, std::size_t threshold = 2, int level = 2);

struct AblationOptions {
  std::size_t exhaustive_limit = 12;
  /// Also count a subunit as essential when removing any single letter of it
  /// breaks membership.
  bool strict = false;
};

/// Removal experiments over the level-(k-1) subunits of a member code.
struct AblationReport {
  int level = 2;
  std::size_t n = 0;                // subunits
  std::size_t m = 0;                // largest simultaneously removable set
  std::vector<bool> removable_mask; // one maximal removable set
  std::size_t d = 0;                // subunits whose removal breaks membership
  std::vector<bool> essential;
  bool exact = true;
  std::size_t subsets_checked = 0;
};

/// Throws MembershipError unless the code is a member of the spec's class.
AblationReport ablate(std::string_view letters, const FunctionClassSpec& spec, int level = 2,
                      const AblationOptions& options = {});

/// The code with the letters of the masked level-(k-1) units removed.
std::string remove_units(const LevelDecomposition& decomp, int level, const std::vector<bool>& mask);

struct RedundancyResult {
  double value = 0.0;  // m / n
  AblationReport report;
};

RedundancyResult redundancy(std::string_view letters, const FunctionClassSpec& spec, int level = 2,
                            const AblationOptions& options = {});

struct BrittlenessResult {
  std::optional<double> value;  // d / (n - m), undefined when n == m
  AblationReport report;

  /// Probability that deleting one uniformly chosen subunit keeps the code working.
  double survival_probability() const;
};

BrittlenessResult brittleness(std::string_view letters, const FunctionClassSpec& spec, int level = 2,
                              const AblationOptions& options = {});

struct RobustnessReport {
  double value = 0.0;
  std::size_t mutants = 0;
  std::size_t survivors = 0;
};

/// Fraction of single-letter substitutions that stay in the class.
RobustnessReport robustness(std::string_view letters, const FunctionClassSpec& spec,
                            const Alphabet& alphabet = Alphabet::standard());

}  // namespace stylo
