#include "stylo/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"
#include "stylo/errors.hpp"

namespace stylo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Word parse_word(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value > 0xFFFFFFFFull)
    throw ParseError("bad unsigned 32-bit value '" + std::string(token) + "' on line " +
                         std::to_string(line),
                     line);
  return static_cast<Word>(value);
}

std::vector<Word> parse_word_line(std::string_view line, std::size_t line_no) {
  std::vector<Word> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    auto end = line.find_first_of(" \t\r", pos);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(parse_word(line.substr(pos, end - pos), line_no));
    pos = end;
  }
  return out;
}

}  // namespace

std::optional<std::string> CreatureFile::get(std::string_view key) const {
  for (const auto& [k, v] : metadata)
    if (k == key) return v;
  return std::nullopt;
}

std::vector<std::string> CreatureFile::all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : metadata)
    if (k == key) out.push_back(v);
  return out;
}

TaskList CreatureFile::tasks() const {
  TaskList out;
  for (const auto& line : all("task")) out.push_back(parse_task_line(line));
  return out;
}

CreatureFile parse_creature(std::string_view text, const std::string& fallback_id) {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::optional<std::string> genome_line;
  std::string letters;
  const auto& alphabet = Alphabet::standard();
  auto check_letters = [&](std::string_view s, std::size_t line_no, std::size_t column0) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!alphabet.contains(s[i]))
        throw ParseError("unknown letter '" + std::string(1, s[i]) + "' at line " + std::to_string(line_no) +
                             ", column " + std::to_string(column0 + i + 1),
                         line_no, column0 + i + 1);
  };

  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const std::string_view raw = lines[n];
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = line.substr(1);
      auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;  // plain comment
      metadata.emplace_back(std::string(trim(body.substr(0, colon))),
                            std::string(trim(body.substr(colon + 1))));
      continue;
    }
    if (line.rfind("genome:", 0) == 0) {
      if (genome_line || !letters.empty()) throw ParseError("genome given twice", line_no);
      auto value = trim(line.substr(7));
      const std::size_t column0 = static_cast<std::size_t>(value.data() - raw.data());
      check_letters(value, line_no, column0);
      genome_line = std::string(value);
      continue;
    }
    if (genome_line) throw ParseError("letters after a genome line", line_no);
    const std::size_t column0 = static_cast<std::size_t>(line.data() - raw.data());
    check_letters(line, line_no, column0);
    if (line.size() != 1)
      throw ParseError("expected one letter per line at line " + std::to_string(line_no), line_no,
                       column0 + 2);
    letters += line;
  }
  if (genome_line) letters = *genome_line;
  if (letters.empty()) throw ParseError("creature file has no genome");

  std::string id = fallback_id;
  for (const auto& [k, v] : metadata)
    if (k == "name") {
      id = v;
      break;
    }
  return CreatureFile{std::move(metadata), Code(id, letters)};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

CreatureFile read_creature(const std::filesystem::path& path) {
  try {
    return parse_creature(read_text_file(path), path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

std::string format_creature(const CreatureFile& creature) {
  std::string out;
  for (const auto& [k, v] : creature.metadata) out += "# " + k + ": " + v + "\n";
  out += "genome: " + creature.genome.letters() + "\n";
  return out;
}

void write_creature(const std::filesystem::path& path, const CreatureFile& creature) {
  write_text_file(path, format_creature(creature));
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

std::string format_profile_csv(std::span<const Profile> profiles, const std::vector<std::string>& names) {
  std::string out = "id";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  for (const auto& p : profiles) {
    if (p.names() != names) throw std::invalid_argument("profile '" + p.code_id() + "' has other measures");
    out += p.code_id();
    for (double v : p.values()) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

void write_profile_csv(const std::filesystem::path& path, std::span<const Profile> profiles,
                       const std::vector<std::string>& names) {
  write_text_file(path, format_profile_csv(profiles, names));
}

std::vector<Profile> parse_profile_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("profile CSV has no header");
  auto header = split_fields(lines[0], ',');
  if (header.empty() || header[0] != "id") throw ParseError("profile CSV header must start with id", 1);
  std::vector<std::string> names(header.begin() + 1, header.end());
  std::vector<Profile> out;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (trim(lines[n]).empty()) continue;
    auto fields = split_fields(lines[n], ',');
    if (fields.size() != header.size()) throw ParseError("wrong field count", n + 1);
    std::vector<double> values;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(fields[f].data(), fields[f].data() + fields[f].size(), v);
      if (ec != std::errc() || ptr != fields[f].data() + fields[f].size())
        throw ParseError("bad number '" + std::string(fields[f]) + "'", n + 1, f + 1);
      values.push_back(v);
    }
    out.emplace_back(std::string(fields[0]), std::move(values), names);
  }
  return out;
}

std::string format_fingerprint_json(const StyleFingerprint& fp, const std::string& hash) {
  nlohmann::ordered_json j;
  j["measure_names"] = fp.measure_names;
  j["u"] = fp.u;
  j["w_plus"] = fp.w_plus;
  j["u_norm"] = fp.u_norm;
  j["m"] = fp.m;
  j["theta"] = fp.theta;
  j["eta"] = fp.eta ? nlohmann::ordered_json(*fp.eta) : nlohmann::ordered_json(nullptr);
  if (!fp.eta) j["eta_reason"] = fp.eta_reason;
  j["sigma_a2"] = fp.sigma_a2;
  j["sigma_ab2"] = fp.sigma_ab2;
  j["size_a"] = fp.size_a;
  j["size_b"] = fp.size_b;
  j["pair_count"] = fp.pair_count;
  j["norm_p"] = fp.norm.p;
  j["degenerate"] = fp.degenerate ? nlohmann::ordered_json(*fp.degenerate) : nlohmann::ordered_json(nullptr);
  j["grasp_log_base"] = "e";
  j["config_hash"] = hash;
  return j.dump(2) + "\n";
}

void write_fingerprint_json(const std::filesystem::path& path, const StyleFingerprint& fp,
                            const std::string& hash) {
  write_text_file(path, format_fingerprint_json(fp, hash));
}

std::string config_hash(std::string_view canonical) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

std::vector<Tuple> parse_tuples(std::string_view text, bool allow_empty_lines) {
  std::vector<Tuple> out;
  const auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (!allow_empty_lines && trim(lines[n]).empty()) continue;
    out.push_back(parse_word_line(lines[n], n + 1));
  }
  return out;
}

FunctionClassSpec read_spec(const std::filesystem::path& inputs,
                            const std::optional<std::filesystem::path>& expected,
                            const std::optional<std::string>& oracle_letters, std::size_t step_cap) {
  auto domain = parse_tuples(read_text_file(inputs));
  if (domain.empty()) throw ParseError(inputs.string() + ": no input tuples");
  if (expected) {
    auto outputs = parse_tuples(read_text_file(*expected), true);
    if (outputs.size() != domain.size())
      throw ParseError(expected->string() + ": expected " + std::to_string(domain.size()) +
                       " output lines, found " + std::to_string(outputs.size()));
    return FunctionClassSpec(std::move(domain), std::move(outputs), step_cap);
  }
  if (!oracle_letters) throw std::invalid_argument("spec needs expected outputs or an oracle code");
  return spec_from_oracle(*oracle_letters, std::move(domain), step_cap);
}

}  // namespace stylo
