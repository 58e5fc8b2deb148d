#include "stylo/synth.hpp"

#include <set>
#include <stdexcept>

#include "stylo/errors.hpp"

namespace stylo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

TaskEntry make_entry(std::string_view name, std::string_view count_text) {
  auto task = task_from_name(trim(name));
  if (!task) throw ParseError("unknown task '" + std::string(trim(name)) + "'");
  int count = 1;
  count_text = trim(count_text);
  if (!count_text.empty()) {
    try {
      std::size_t used = 0;
      count = std::stoi(std::string(count_text), &used);
      if (used != count_text.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ParseError("bad repetition count '" + std::string(count_text) + "'");
    }
  }
  if (count < 1) throw ParseError("repetition count must be at least 1");
  return TaskEntry{*task, count};
}

// Pick uniformly-ish from [0, n); modulo keeps the stream identical across
// standard library implementations.
std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

TaskList parse_task_list(std::string_view text) {
  TaskList out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto token = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start));
    if (!token.empty()) {
      auto colon = token.find(':');
      out.push_back(colon == std::string_view::npos
                        ? make_entry(token, {})
                        : make_entry(token.substr(0, colon), token.substr(colon + 1)));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ParseError("task list is empty");
  return out;
}

TaskEntry parse_task_line(std::string_view text) {
  text = trim(text);
  auto space = text.find_first_of(" \t");
  if (space == std::string_view::npos) return make_entry(text, {});
  return make_entry(text.substr(0, space), text.substr(space + 1));
}

std::string format_task_list(const TaskList& tasks) {
  std::string out;
  for (const auto& t : tasks) {
    if (!out.empty()) out += ',';
    out += std::string(task_name(t.task)) + ":" + std::to_string(t.count);
  }
  return out;
}

const std::vector<Gadget>& gadget_library() {
  // Register use: BX/CX feed nand, AX and the stack hold intermediates.
  static const std::vector<Gadget> library{
      {Task::not_, "oncjp", 1},
      {Task::nand, "oocjp", 1},
      {Task::and_, "oocjncjp", 2},
      {Task::or_not, "oocjjp", 2},
      {Task::or_, "oncjdoncjecjp", 3},
      {Task::and_not, "odocjmejncjp", 3},
      {Task::nor, "oncjdoncjecjncjp", 4},
      {Task::xor_, "onaocdcjdncdaejnaecejdaecjp", 4},
      {Task::equ, "onaocdcjdncdaejnaecejdaecjncjp", 5},
  };
  return library;
}

const Gadget& gadget_for(Task task) {
  for (const auto& g : gadget_library())
    if (g.task == task) return g;
  throw std::logic_error("no gadget for task");
}

Code synth_noloop(const TaskList& tasks) {
  std::string letters;
  for (const auto& t : tasks)
    for (int i = 0; i < t.count; ++i) letters += gadget_for(t.task).letters;
  return Code("noloop", letters);
}

Code synth_allloop(const TaskList& tasks) {
  std::string letters;
  // CX is cleared by popping the empty stack (every gadget leaves the stack
  // as it found it), the usual zeroing idiom on machines without a zero op.
  for (const auto& t : tasks) {
    letters += "ec";
    for (int i = 0; i < t.count; ++i) letters += "hc";
    letters += "r" + gadget_for(t.task).letters + "s";
  }
  return Code("allloop", letters);
}

FunctionClassSpec task_spec(const TaskList& tasks, std::vector<Tuple> domain, std::size_t step_cap) {
  std::vector<std::vector<Word>> expected;
  for (const auto& input : domain) {
    std::size_t cursor = 0;
    auto next = [&]() -> Word { return input.empty() ? 0 : input[cursor++ % input.size()]; };
    std::vector<Word> out;
    for (const auto& t : tasks)
      for (int i = 0; i < t.count; ++i) {
        const Word x = next();
        const Word y = task_arity(t.task) == 2 ? next() : 0;
        out.push_back(task_value(t.task, x, y));
      }
    expected.push_back(std::move(out));
  }
  return FunctionClassSpec(std::move(domain), std::move(expected), step_cap);
}

FunctionClassSpec task_spec(const TaskList& tasks, std::uint64_t seed, std::size_t step_cap) {
  return task_spec(tasks, default_domain(2, seed), step_cap);
}

std::string Edit::apply(std::string_view letters) const {
  std::string out(letters);
  switch (kind) {
    case EditKind::substitute: out.at(position) = letter; break;
    case EditKind::insert: out.insert(out.begin() + static_cast<long>(position), letter); break;
    case EditKind::erase: out.erase(position, 1); break;
  }
  return out;
}

std::string Edit::describe() const {
  switch (kind) {
    case EditKind::substitute: return "sub " + std::to_string(position) + " " + letter;
    case EditKind::insert: return "ins " + std::to_string(position) + " " + letter;
    case EditKind::erase: return "del " + std::to_string(position);
  }
  return "?";
}

Edit random_edit(std::mt19937_64& rng, std::size_t length, const Alphabet& alphabet) {
  const std::size_t kinds = length > 1 ? 3 : 2;
  const auto letters = alphabet.letters();
  switch (draw(rng, kinds)) {
    case 0: {
      const auto pos = draw(rng, length);
      return Edit{EditKind::substitute, pos, letters[draw(rng, letters.size())]};
    }
    case 1: {
      const auto pos = draw(rng, length + 1);
      return Edit{EditKind::insert, pos, letters[draw(rng, letters.size())]};
    }
    default:
      return Edit{EditKind::erase, draw(rng, length)};
  }
}

NeutralVariants neutral_variants(const Code& code, const FunctionClassSpec& spec, std::size_t count,
                                 std::uint64_t seed) {
  if (class_membership(code.letters(), spec) != Membership::member)
    throw MembershipError("code '" + code.id() + "' is not a member of the class");
  NeutralVariants out;
  std::mt19937_64 rng(seed);
  std::set<std::string> seen{code.letters()};
  const std::size_t budget = 1000 * count;
  while (out.variants.size() < count && out.attempts < budget) {
    ++out.attempts;
    const auto edit = random_edit(rng, code.size());
    auto letters = edit.apply(code.letters());
    if (letters.empty() || seen.count(letters)) continue;
    if (class_membership(letters, spec) != Membership::member) continue;
    seen.insert(letters);
    out.variants.emplace_back(code.id() + "-v" + std::to_string(out.variants.size() + 1), letters);
  }
  out.partial = out.variants.size() < count;
  return out;
}

}  // namespace stylo
