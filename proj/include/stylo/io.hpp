#pragma once

// File formats: creature files, profile CSV, fingerprint JSON, D_f spec
// files.
//
// Creature file grammar (UTF-8, LF):
//
//   # name: sample-01          metadata lines, "# key: value", keys may repeat
//   # task: XOR 2
//   genome: onaocdcj...        either one genome line ...
//   o                          ... or one letter per line
//   n
//
// Blank lines are ignored.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylo/code_model.hpp"
#include "stylo/style.hpp"
#include "stylo/synth.hpp"

namespace stylo {

struct CreatureFile {
  std::vector<std::pair<std::string, std::string>> metadata;
  Code genome;

  std::optional<std::string> get(std::string_view key) const;
  std::vector<std::string> all(std::string_view key) const;
  /// Task lines parsed as "NAME count".
  TaskList tasks() const;
};

/// `fallback_id` names the genome when there is no "name" metadata.
CreatureFile parse_creature(std::string_view text, const std::string& fallback_id = "creature");
CreatureFile read_creature(const std::filesystem::path& path);
std::string format_creature(const CreatureFile& creature);
void write_creature(const std::filesystem::path& path, const CreatureFile& creature);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// Header "id,<names>" then one row per profile, in input order.
std::string format_profile_csv(std::span<const Profile> profiles, const std::vector<std::string>& names);
void write_profile_csv(const std::filesystem::path& path, std::span<const Profile> profiles,
                       const std::vector<std::string>& names);
std::vector<Profile> parse_profile_csv(std::string_view text);

std::string format_fingerprint_json(const StyleFingerprint& fp, const std::string& config_hash = "");
void write_fingerprint_json(const std::filesystem::path& path, const StyleFingerprint& fp,
                            const std::string& config_hash = "");

/// 64-bit FNV-1a, as 16 hex digits.
std::string config_hash(std::string_view canonical_config);

/// One tuple per non-blank line, space-separated unsigned 32-bit integers.
std::vector<Tuple> parse_tuples(std::string_view text, bool allow_empty_lines = false);

/// Spec from an inputs file plus either a parallel expected-outputs file or
/// an oracle code executed on every input.
FunctionClassSpec read_spec(const std::filesystem::path& inputs,
                            const std::optional<std::filesystem::path>& expected,
                            const std::optional<std::string>& oracle_letters,
                            std::size_t step_cap = FunctionClassSpec::kDefaultStepCap);

}  // namespace stylo
