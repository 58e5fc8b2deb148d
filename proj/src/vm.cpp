#include "stylo/vm.hpp"

#include <array>
#include <random>
#include <stdexcept>

#include "stylo/errors.hpp"

namespace stylo {

Opcode opcode_of(char letter) {
  if (letter < 'a' || letter > 't')
    throw std::invalid_argument("no instruction for letter '" + std::string(1, letter) + "'");
  return static_cast<Opcode>(letter - 'a');
}

bool is_nop(char letter) noexcept { return letter == 'a' || letter == 'b' || letter == 'c'; }

bool Program::has_loop() const noexcept {
  for (const auto& ins : instructions_)
    if (ins.op == Opcode::rep_begin && !ins.is_modifier) return true;
  return false;
}

std::size_t Program::next_instruction(std::size_t i) const noexcept {
  std::size_t j = i + 1;
  while (j < instructions_.size() && instructions_[j].is_modifier) ++j;
  return j;
}

ParseResult parse(std::string_view letters) {
  std::vector<DecoratedInstruction> out;
  out.reserve(letters.size());
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    char c = letters[i];
    if (c < 'a' || c > 't')
      return ErrorClass{"unknown letter at position " + std::to_string(i)};
    DecoratedInstruction ins{opcode_of(c), c};
    if (is_nop(c) && i > 0 && !is_nop(letters[i - 1])) {
      ins.is_modifier = true;
      out.back().target = static_cast<Register>(c - 'a');
    }
    if (ins.op == Opcode::rep_begin) {
      open.push_back(i);
    } else if (ins.op == Opcode::rep_end) {
      if (open.empty()) return ErrorClass{"rep-end without rep-begin at position " + std::to_string(i)};
      ins.partner = open.back();
      out[open.back()].partner = i;
      open.pop_back();
    }
    out.push_back(ins);
  }
  if (!open.empty())
    return ErrorClass{"rep-begin without rep-end at position " + std::to_string(open.back())};
  return Program(std::move(out));
}

std::string_view task_name(Task task) noexcept {
  switch (task) {
    case Task::not_: return "NOT";
    case Task::nand: return "NAND";
    case Task::and_: return "AND";
    case Task::or_not: return "OR-NOT";
    case Task::or_: return "OR";
    case Task::and_not: return "AND-NOT";
    case Task::nor: return "NOR";
    case Task::xor_: return "XOR";
    case Task::equ: return "EQU";
  }
  return "?";
}

std::optional<Task> task_from_name(std::string_view name) {
  std::string upper;
  for (char c : name) upper += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
  for (auto& c : upper)
    if (c == '_') c = '-';
  if (upper == "ORN") return Task::or_not;
  if (upper == "ANDN") return Task::and_not;
  for (Task t : kAllTasks)
    if (task_name(t) == upper) return t;
  return std::nullopt;
}

std::size_t task_arity(Task task) noexcept { return task == Task::not_ ? 1 : 2; }

Word task_value(Task task, Word x, Word y) noexcept {
  switch (task) {
    case Task::not_: return ~x;
    case Task::nand: return ~(x & y);
    case Task::and_: return x & y;
    case Task::or_not: return x | ~y;
    case Task::or_: return x | y;
    case Task::and_not: return x & ~y;
    case Task::nor: return ~(x | y);
    case Task::xor_: return x ^ y;
    case Task::equ: return ~(x ^ y);
  }
  return 0;
}

namespace {

struct LoopFrame {
  std::size_t begin;
  std::size_t end;
  Word remaining;
};

class Machine {
 public:
  Machine(const Program& program, std::span<const Word> inputs)
      : program_(program), inputs_(inputs) {}

  ExecutionResult run(std::size_t step_cap) {
    ExecutionResult result;
    std::size_t ip = 0;
    while (true) {
      while (ip < program_.size() && program_[ip].is_modifier) ++ip;
      if (ip >= program_.size()) {
        result.termination = Termination::end_of_code;
        break;
      }
      if (result.steps_used >= step_cap) {
        result.termination = Termination::step_cap;
        break;
      }
      ++result.steps_used;
      const auto& ins = program_[ip];
      std::size_t next = program_.next_instruction(ip);
      bool halted = false;
      switch (ins.op) {
        case Opcode::nop_a:
        case Opcode::nop_b:
        case Opcode::nop_c:
          break;
        case Opcode::push:
          if (stack_.size() < kMaxStackDepth) stack_.push_back(reg(ins.target));
          break;
        case Opcode::pop:
          if (stack_.empty()) {
            reg(ins.target) = 0;
          } else {
            reg(ins.target) = stack_.back();
            stack_.pop_back();
          }
          break;
        case Opcode::add: reg(ins.target) = bx() + cx(); break;
        case Opcode::sub: reg(ins.target) = bx() - cx(); break;
        case Opcode::inc: ++reg(ins.target); break;
        case Opcode::dec: --reg(ins.target); break;
        case Opcode::nand: reg(ins.target) = ~(bx() & cx()); break;
        case Opcode::if_equ:
          if (bx() != cx()) next = program_.next_instruction(next);
          break;
        case Opcode::if_less:
          if (!(bx() < cx())) next = program_.next_instruction(next);
          break;
        case Opcode::swap: std::swap(regs_[1], regs_[2]); break;
        case Opcode::mov: reg(ins.target) = bx(); break;
        case Opcode::io_in: {
          Word v = inputs_.empty() ? 0 : inputs_[cursor_++ % inputs_.size()];
          reg(ins.target) = v;
          window_.push_back(v);
          if (window_.size() > 2) window_.erase(window_.begin());
          break;
        }
        case Opcode::io_out: {
          Word v = reg(ins.target);
          result.outputs.push_back(v);
          result.trace.push_back(OutputEvent{v, window_});
          break;
        }
        case Opcode::zero: reg(ins.target) = 0; break;
        case Opcode::rep_begin:
          if (cx() == 0) {
            next = program_.next_instruction(ins.partner);
          } else {
            loops_.push_back(LoopFrame{ip, ins.partner, cx()});
          }
          break;
        case Opcode::rep_end: {
          // Find the frame opened by the matching rep-begin; frames above it
          // were abandoned by guarded skips.
          std::size_t f = loops_.size();
          while (f > 0 && loops_[f - 1].end != ip) --f;
          if (f > 0) {
            loops_.resize(f);
            auto& frame = loops_.back();
            if (--frame.remaining > 0) {
              next = program_.next_instruction(frame.begin);
            } else {
              loops_.pop_back();
            }
          }
          break;
        }
        case Opcode::halt: halted = true; break;
      }
      if (halted) {
        result.termination = Termination::halt;
        break;
      }
      ip = next;
    }
    result.tasks = detect_tasks(result.trace);
    return result;
  }

 private:
  Word& reg(Register r) { return regs_[static_cast<std::size_t>(r)]; }
  Word bx() const { return regs_[1]; }
  Word cx() const { return regs_[2]; }

  const Program& program_;
  std::span<const Word> inputs_;
  std::array<Word, 3> regs_{};
  std::vector<Word> stack_;
  std::vector<LoopFrame> loops_;
  std::vector<Word> window_;
  std::size_t cursor_ = 0;
};

}  // namespace

ExecutionResult execute(const Program& program, std::span<const Word> inputs, std::size_t step_cap) {
  return Machine(program, inputs).run(step_cap);
}

std::variant<ExecutionResult, ErrorClass> run(std::string_view letters, std::span<const Word> inputs,
                                              std::size_t step_cap) {
  auto parsed = parse(letters);
  if (auto* err = std::get_if<ErrorClass>(&parsed)) return *err;
  return execute(std::get<Program>(parsed), inputs, step_cap);
}

TaskCounts detect_tasks(std::span<const OutputEvent> trace) {
  TaskCounts counts;
  for (const auto& ev : trace) {
    const auto& w = ev.window;
    for (Task t : kAllTasks) {
      bool hit = false;
      if (task_arity(t) == 1) {
        for (Word x : w) hit = hit || task_value(t, x) == ev.value;
      } else if (w.size() == 2) {
        hit = task_value(t, w[0], w[1]) == ev.value || task_value(t, w[1], w[0]) == ev.value;
      }
      if (hit) ++counts[t];
    }
  }
  return counts;
}

Behavior behavior(std::string_view letters, const FunctionClassSpec& spec) {
  Behavior out;
  auto parsed = parse(letters);
  if (auto* err = std::get_if<ErrorClass>(&parsed)) {
    out.error = err->reason;
    return out;
  }
  const auto& program = std::get<Program>(parsed);
  out.table.reserve(spec.domain().size());
  for (const auto& input : spec.domain()) {
    auto r = execute(program, input, spec.step_cap());
    if (!r.well_defined()) {
      out.table.clear();
      out.error = "step cap reached";
      return out;
    }
    out.table.push_back(std::move(r.outputs));
  }
  return out;
}

std::string_view membership_name(Membership m) noexcept {
  switch (m) {
    case Membership::member: return "member";
    case Membership::non_member: return "non-member";
    case Membership::error_class: return "error-class";
  }
  return "?";
}

Membership class_membership(std::string_view letters, const FunctionClassSpec& spec) {
  auto parsed = parse(letters);
  if (std::holds_alternative<ErrorClass>(parsed)) return Membership::error_class;
  const auto& program = std::get<Program>(parsed);
  // A mismatch does not end the scan: a later step-cap hit still puts the
  // code in the error class.
  bool mismatch = false;
  for (std::size_t i = 0; i < spec.domain().size(); ++i) {
    auto r = execute(program, spec.domain()[i], spec.step_cap());
    if (!r.well_defined()) return Membership::error_class;
    if (r.outputs != spec.expected()[i]) mismatch = true;
  }
  return mismatch ? Membership::non_member : Membership::member;
}

std::vector<Tuple> default_domain(std::size_t arity, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Tuple> domain;
  for (int i = 0; i < 16; ++i) {
    Tuple t(arity);
    for (auto& x : t) x = static_cast<Word>(gen() >> 32);
    domain.push_back(std::move(t));
  }
  domain.emplace_back(arity, Word{0});
  domain.emplace_back(arity, ~Word{0});
  return domain;
}

FunctionClassSpec spec_from_oracle(std::string_view oracle_letters, std::vector<Tuple> domain,
                                   std::size_t step_cap) {
  FunctionClassSpec probe(domain, std::vector<std::vector<Word>>(domain.size()), step_cap);
  auto b = behavior(oracle_letters, probe);
  if (b.error_class()) throw MembershipError("oracle code is in the error class: " + *b.error);
  return FunctionClassSpec(std::move(domain), std::move(b.table), step_cap);
}

}  // namespace stylo
