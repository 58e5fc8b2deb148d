#include "stylo/evometrics.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stylo/errors.hpp"
#include "stylo/vm.hpp"

namespace stylo {

std::optional<double> spaghetti_ratio(std::span<const std::size_t> counts) {
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (total == 0) return std::nullopt;
  const std::size_t largest = *std::max_element(counts.begin(), counts.end());
  return static_cast<double>(largest) / static_cast<double>(total);
}

SpaghettiResult spaghetti(const LevelDecomposition& decomp) {
  SpaghettiResult r;
  for (int k = 1; k <= kTopLevel; ++k) {
    r.per_level[k] = spaghetti_ratio(decomp.counts(k));
    if (r.per_level[k]) r.overall = std::max(r.overall, *r.per_level[k]);
  }
  return r;
}

double reuse_ratio(const std::vector<KeyCounts>& per_unit, std::size_t threshold) {
  std::size_t total = 0;
  std::size_t best = 0;
  for (const auto& unit : per_unit) {
    std::size_t repeated = 0;
    for (const auto& [key, n] : unit) {
      total += n;
      if (n >= threshold) ++repeated;
    }
    best = std::max(best, repeated);
  }
  return total == 0 ? 0.0 : static_cast<double>(best) / static_cast<double>(total);
}

double reuse(const LevelDecomposition& decomp, std::size_t threshold, int level) {
  if (threshold < 1) throw std::invalid_argument("reuse threshold must be at least 1");
  return reuse_ratio(subunit_keys_per_unit(decomp, level), threshold);
}

std::string remove_units(const LevelDecomposition& decomp, int level, const std::vector<bool>& mask) {
  const auto& units = decomp.units(level - 1);
  std::string out;
  for (std::size_t u = 0; u < units.size(); ++u)
    if (!mask[u]) out += decomp.letters().substr(units[u].begin, units[u].size());
  return out;
}

namespace {

void require_member(std::string_view letters, const FunctionClassSpec& spec) {
  const auto m = class_membership(letters, spec);
  if (m != Membership::member)
    throw MembershipError("code is not a member of the class (" + std::string(membership_name(m)) + ")");
}

std::vector<bool> mask_from_bits(std::uint64_t bits, std::size_t n) {
  std::vector<bool> mask(n);
  for (std::size_t i = 0; i < n; ++i) mask[i] = (bits >> i) & 1u;
  return mask;
}

}  // namespace

AblationReport ablate(std::string_view letters, const FunctionClassSpec& spec, int level,
                      const AblationOptions& options) {
  if (level < 1 || level > kTopLevel) throw std::out_of_range("level must be in [1,3]");
  require_member(letters, spec);
  const auto decomp = decompose(letters);
  AblationReport report;
  report.level = level;
  report.n = decomp.unit_count(level - 1);
  const std::size_t n = report.n;

  auto survives = [&](const std::vector<bool>& mask) {
    ++report.subsets_checked;
    return class_membership(remove_units(decomp, level, mask), spec) == Membership::member;
  };

  if (n <= options.exhaustive_limit && n < 63) {
    // Visit subsets by decreasing size; the first survivor is maximal.
    std::vector<std::uint64_t> subsets(std::uint64_t{1} << n);
    std::iota(subsets.begin(), subsets.end(), std::uint64_t{0});
    std::stable_sort(subsets.begin(), subsets.end(), [](std::uint64_t a, std::uint64_t b) {
      return std::popcount(a) > std::popcount(b);
    });
    for (auto bits : subsets) {
      auto mask = mask_from_bits(bits, n);
      if (bits == 0 || survives(mask)) {
        report.m = static_cast<std::size_t>(std::popcount(bits));
        report.removable_mask = std::move(mask);
        break;
      }
    }
    report.exact = true;
  } else {
    const auto& units = decomp.units(level - 1);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return units[a].size() > units[b].size(); });
    std::vector<bool> mask(n, false);
    for (auto u : order) {
      mask[u] = true;
      if (!survives(mask)) mask[u] = false;
    }
    report.m = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    report.removable_mask = std::move(mask);
    report.exact = false;
  }

  report.essential.assign(n, false);
  const auto& units = decomp.units(level - 1);
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<bool> single(n, false);
    single[u] = true;
    bool broken = !survives(single);
    if (!broken && options.strict && units[u].size() > 1) {
      for (std::size_t p = units[u].begin; p < units[u].end && !broken; ++p) {
        std::string partial = decomp.letters();
        partial.erase(p, 1);
        ++report.subsets_checked;
        broken = class_membership(partial, spec) != Membership::member;
      }
    }
    report.essential[u] = broken;
  }
  report.d = static_cast<std::size_t>(std::count(report.essential.begin(), report.essential.end(), true));
  return report;
}

RedundancyResult redundancy(std::string_view letters, const FunctionClassSpec& spec, int level,
                            const AblationOptions& options) {
  RedundancyResult r;
  r.report = ablate(letters, spec, level, options);
  r.value = static_cast<double>(r.report.m) / static_cast<double>(r.report.n);
  return r;
}

double BrittlenessResult::survival_probability() const {
  return 1.0 - static_cast<double>(report.d) / static_cast<double>(report.n);
}

BrittlenessResult brittleness(std::string_view letters, const FunctionClassSpec& spec, int level,
                              const AblationOptions& options) {
  BrittlenessResult r;
  r.report = ablate(letters, spec, level, options);
  if (r.report.n > r.report.m)
    r.value = static_cast<double>(r.report.d) / static_cast<double>(r.report.n - r.report.m);
  return r;
}

RobustnessReport robustness(std::string_view letters, const FunctionClassSpec& spec,
                            const Alphabet& alphabet) {
  require_member(letters, spec);
  RobustnessReport r;
  std::string mutant(letters);
  for (std::size_t pos = 0; pos < letters.size(); ++pos) {
    for (char c : alphabet.letters()) {
      if (c == letters[pos]) continue;
      mutant[pos] = c;
      ++r.mutants;
      if (class_membership(mutant, spec) == Membership::member) ++r.survivors;
    }
    mutant[pos] = letters[pos];
  }
  r.value = r.mutants == 0 ? 0.0 : static_cast<double>(r.survivors) / static_cast<double>(r.mutants);
  return r;
}

}  // namespace stylo
