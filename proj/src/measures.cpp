#include "stylo/measures.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "stylo/errors.hpp"
#include "stylo/evometrics.hpp"
#include "stylo/metrics.hpp"
#include "stylo/structure.hpp"

namespace stylo {

namespace {

const FunctionClassSpec& spec_of(const AnalysisContext& ctx) {
  if (!ctx.spec) throw std::invalid_argument("behavioral measure needs a function class spec");
  return *ctx.spec;
}

double defined(const std::optional<double>& v, const char* what) {
  if (!v) throw std::domain_error(std::string(what) + " is undefined (no operands)");
  return *v;
}

std::optional<MeasureEntry> make_entry(const std::string& name) {
  auto hal = [](const Code& c) { return halstead(halstead_counts(c.letters())); };
  if (name == "vocabulary")
    return MeasureEntry{name, [hal](const Code& c, const AnalysisContext&) { return hal(c).vocabulary; }};
  if (name == "length")
    return MeasureEntry{name, [hal](const Code& c, const AnalysisContext&) { return hal(c).length; }};
  if (name == "difficulty")
    return MeasureEntry{name, [hal](const Code& c, const AnalysisContext&) {
                          return defined(hal(c).difficulty, "difficulty");
                        }};
  if (name == "volume")
    return MeasureEntry{name, [hal](const Code& c, const AnalysisContext&) { return hal(c).volume; }};
  if (name == "effort")
    return MeasureEntry{name, [hal](const Code& c, const AnalysisContext&) {
                          return defined(hal(c).effort, "effort");
                        }};
  if (name == "mccabe")
    return MeasureEntry{name, [](const Code& c, const AnalysisContext&) {
                          return static_cast<double>(mccabe(build_cfg(c.letters())).complexity);
                        }};
  if (name == "grasp")
    return MeasureEntry{name, [](const Code& c, const AnalysisContext&) {
                          auto p = grasp_profile(c.letters());
                          return *std::max_element(p.begin(), p.end());
                        }};
  if (name == "entropy1" || name == "entropy2") {
    const std::size_t n = name.back() == '1' ? 1 : 2;
    return MeasureEntry{name,
                        [n](const Code& c, const AnalysisContext&) {
                          return block_entropy(c.letters(), n, Alphabet::standard().size());
                        },
                        false};
  }
  if (name == "spaghetti")
    return MeasureEntry{name,
                        [](const Code& c, const AnalysisContext& ctx) {
                          auto s = spaghetti(decompose(c.letters())).per_level.at(ctx.level);
                          if (!s) throw std::domain_error("no subunits at this level");
                          return *s;
                        },
                        false};
  if (name == "reuse")
    return MeasureEntry{name,
                        [](const Code& c, const AnalysisContext& ctx) {
                          return reuse(decompose(c.letters()), 2, ctx.level);
                        },
                        false};
  if (name == "redundancy")
    return MeasureEntry{name,
                        [](const Code& c, const AnalysisContext& ctx) {
                          return redundancy(c.letters(), spec_of(ctx), ctx.level).value;
                        },
                        false};
  if (name == "brittleness")
    return MeasureEntry{name,
                        [](const Code& c, const AnalysisContext& ctx) {
                          auto b = brittleness(c.letters(), spec_of(ctx), ctx.level);
                          if (!b.value) throw std::domain_error("brittleness undefined: every subunit removable");
                          return *b.value;
                        },
                        false};
  if (name == "robustness")
    return MeasureEntry{name,
                        [](const Code& c, const AnalysisContext& ctx) {
                          return robustness(c.letters(), spec_of(ctx)).value;
                        },
                        false};
  return std::nullopt;
}

}  // namespace

MeasureRegistry halstead_registry() {
  static const std::vector<std::string> names{"vocabulary", "length", "difficulty", "volume", "effort"};
  return registry_from_names(names);
}

std::vector<std::string> known_measure_names() {
  return {"vocabulary", "length",    "difficulty", "volume",     "effort",      "mccabe",
          "grasp",      "entropy1",  "entropy2",   "spaghetti",  "reuse",       "redundancy",
          "brittleness", "robustness"};
}

MeasureRegistry registry_from_names(std::span<const std::string> names) {
  MeasureRegistry registry;
  for (const auto& name : names) {
    auto entry = make_entry(name);
    if (!entry) throw std::invalid_argument("unknown measure '" + name + "'");
    registry.add(std::move(*entry));
  }
  return registry;
}

MeasureRegistry registry_from_list(const std::string& comma_separated) {
  std::vector<std::string> names;
  std::stringstream ss(comma_separated);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) continue;
    names.push_back(item.substr(first, last - first + 1));
  }
  return registry_from_names(names);
}

}  // namespace stylo
