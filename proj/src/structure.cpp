#include "stylo/structure.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <variant>

#include "stylo/errors.hpp"
#include "stylo/vm.hpp"

namespace stylo {

namespace {

const Program& require_program(const ParseResult& parsed) {
  if (auto* err = std::get_if<ErrorClass>(&parsed))
    throw MembershipError("code is in the error class: " + err->reason);
  return std::get<Program>(parsed);
}

bool is_guard(Opcode op) { return op == Opcode::if_equ || op == Opcode::if_less; }

// Letter positions at which a new basic block starts (excluding 0 and size).
std::vector<std::size_t> block_starts(const Program& program) {
  const std::size_t size = program.size();
  std::vector<bool> cut(size + 1, false);
  for (std::size_t i = 0; i < size; i = program.next_instruction(i)) {
    const auto op = program[i].op;
    const std::size_t after = program.next_instruction(i);
    if (op == Opcode::rep_begin || op == Opcode::rep_end) {
      cut[std::min(after, size)] = true;
    } else if (is_guard(op)) {
      cut[std::min(after, size)] = true;
      if (after < size) cut[std::min(program.next_instruction(after), size)] = true;
    }
  }
  std::vector<std::size_t> starts{0};
  for (std::size_t p = 1; p < size; ++p)
    if (cut[p]) starts.push_back(p);
  return starts;
}

std::vector<UnitRange> ranges_from_starts(const std::vector<std::size_t>& starts, std::size_t size) {
  std::vector<UnitRange> out;
  for (std::size_t i = 0; i < starts.size(); ++i)
    out.push_back({starts[i], i + 1 < starts.size() ? starts[i + 1] : size});
  return out;
}

std::vector<UnitRange> regions_of(const Program& program, const std::vector<UnitRange>& blocks) {
  // Bodies of outermost loops, as letter ranges [after r, after s).
  std::vector<UnitRange> bodies;
  int depth = 0;
  for (std::size_t i = 0; i < program.size(); i = program.next_instruction(i)) {
    if (program[i].op == Opcode::rep_begin) {
      if (depth++ == 0)
        bodies.push_back({program.next_instruction(i),
                          std::min(program.next_instruction(program[i].partner), program.size())});
    } else if (program[i].op == Opcode::rep_end) {
      --depth;
    }
  }
  std::vector<UnitRange> regions;
  long previous_key = -2;
  for (const auto& block : blocks) {
    long key = -1;
    for (std::size_t b = 0; b < bodies.size(); ++b)
      if (block.begin >= bodies[b].begin && block.begin < bodies[b].end) key = static_cast<long>(b);
    if (key != previous_key) {
      regions.push_back(block);
    } else {
      regions.back().end = block.end;
    }
    previous_key = key;
  }
  return regions;
}

std::size_t count_inside(const std::vector<UnitRange>& inner, const UnitRange& outer) {
  return static_cast<std::size_t>(std::count_if(inner.begin(), inner.end(), [&](const UnitRange& u) {
    return u.begin >= outer.begin && u.end <= outer.end;
  }));
}

}  // namespace

LevelDecomposition::LevelDecomposition(std::string letters, std::array<std::vector<UnitRange>, 4> units)
    : letters_(std::move(letters)), units_(std::move(units)) {
  for (int k = 1; k <= kTopLevel; ++k) {
    std::size_t total = 0;
    for (const auto& u : units_[k]) {
      counts_[k].push_back(count_inside(units_[k - 1], u));
      total += counts_[k].back();
    }
    if (total != units_[k - 1].size())
      throw std::logic_error("level " + std::to_string(k) + " units do not nest level " +
                             std::to_string(k - 1));
  }
}

std::string_view LevelDecomposition::text(int level, std::size_t i) const {
  const auto& u = units_.at(level).at(i);
  return std::string_view(letters_).substr(u.begin, u.size());
}

std::vector<std::size_t> LevelDecomposition::children(int level, std::size_t i) const {
  if (level < 1 || level > kTopLevel) throw std::out_of_range("level must be in [1,3]");
  const auto& outer = units_[level].at(i);
  std::vector<std::size_t> out;
  const auto& inner = units_[level - 1];
  for (std::size_t j = 0; j < inner.size(); ++j)
    if (inner[j].begin >= outer.begin && inner[j].end <= outer.end) out.push_back(j);
  return out;
}

LevelDecomposition decompose(std::string_view letters) {
  auto parsed = parse(letters);
  const auto& program = require_program(parsed);
  if (program.size() == 0) throw std::invalid_argument("cannot decompose an empty code");
  std::array<std::vector<UnitRange>, 4> units;
  for (std::size_t i = 0; i < letters.size(); ++i) units[0].push_back({i, i + 1});
  units[1] = ranges_from_starts(block_starts(program), letters.size());
  units[2] = regions_of(program, units[1]);
  units[3] = {UnitRange{0, letters.size()}};
  return LevelDecomposition(std::string(letters), std::move(units));
}

ControlFlowGraph build_cfg(std::string_view letters) {
  auto parsed = parse(letters);
  const auto& program = require_program(parsed);
  const std::size_t size = program.size();
  if (size == 0) throw std::invalid_argument("cannot build a graph for an empty code");
  const auto blocks = ranges_from_starts(block_starts(program), size);

  std::vector<std::size_t> block_of(size);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t p = blocks[b].begin; p < blocks[b].end; ++p) block_of[p] = b;

  ControlFlowGraph cfg;
  const std::size_t exit_node = blocks.size();
  auto node_at = [&](std::size_t pos) {
    if (pos >= size) {
      cfg.has_exit_node = true;
      return exit_node;
    }
    return block_of[pos];
  };

  for (std::size_t b = 0; b + 1 < blocks.size(); ++b)
    cfg.edges.push_back({b, b + 1, EdgeKind::fallthrough});
  for (std::size_t i = 0; i < size; i = program.next_instruction(i)) {
    const auto& ins = program[i];
    if (is_guard(ins.op)) {
      const std::size_t guarded = program.next_instruction(i);
      const std::size_t after = guarded < size ? program.next_instruction(guarded) : size;
      cfg.edges.push_back({block_of[i], node_at(after), EdgeKind::conditional_skip});
    } else if (ins.op == Opcode::rep_begin) {
      cfg.edges.push_back({block_of[i], node_at(program.next_instruction(ins.partner)),
                           EdgeKind::loop_skip});
    } else if (ins.op == Opcode::rep_end) {
      cfg.edges.push_back({block_of[i], block_of[ins.partner], EdgeKind::loop_back});
    }
  }
  if (cfg.has_exit_node) cfg.edges.push_back({exit_node - 1, exit_node, EdgeKind::fallthrough});
  cfg.node_count = blocks.size() + (cfg.has_exit_node ? 1 : 0);

  std::vector<std::size_t> parent(cfg.node_count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  cfg.components = cfg.node_count;
  for (const auto& e : cfg.edges) {
    auto a = find(e.from), b = find(e.to);
    if (a != b) {
      parent[a] = b;
      --cfg.components;
    }
  }
  return cfg;
}

std::vector<KeyCounts> subunit_keys_per_unit(const LevelDecomposition& decomp, int level) {
  if (level < 1 || level > kTopLevel) throw std::out_of_range("level must be in [1,3]");
  std::vector<KeyCounts> out;
  for (std::size_t i = 0; i < decomp.unit_count(level); ++i) {
    KeyCounts keys;
    for (auto child : decomp.children(level, i)) ++keys[std::string(decomp.text(level - 1, child))];
    out.push_back(std::move(keys));
  }
  return out;
}

KeyCounts subunit_keys(const LevelDecomposition& decomp, int level) {
  KeyCounts all;
  for (const auto& unit : subunit_keys_per_unit(decomp, level))
    for (const auto& [key, n] : unit) all[key] += n;
  return all;
}

}  // namespace stylo
