#pragma once

// Interpreter for the 20-letter instruction language.
//
//   a b c  nop / register modifier (AX, BX, CX)
//   d push R        e pop -> R (empty stack yields 0)
//   f R <- BX + CX  g R <- BX - CX   h inc R   i dec R
//   j R <- ~(BX & CX)
//   k if BX == CX   l if BX < CX     (otherwise skip the next instruction)
//   m swap BX, CX   n R <- BX
//   o R <- next input (inputs cycle)  p emit R   q R <- 0
//   r repeat to matching s, CX times (count read on entry; 0 skips)
//   s end of repeat block            t halt
//
// R defaults to BX and is overridden by a nop letter immediately following
// the instruction. All arithmetic wraps modulo 2^32.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stylo/code_model.hpp"

namespace stylo {

enum class Opcode : std::uint8_t {
  nop_a, nop_b, nop_c,
  push, pop, add, sub, inc, dec, nand,
  if_equ, if_less, swap, mov, io_in, io_out, zero,
  rep_begin, rep_end, halt,
};

enum class Register : std::uint8_t { ax, bx, cx };

Opcode opcode_of(char letter);
bool is_nop(char letter) noexcept;

/// One entry per letter. A nop directly after a non-nop instruction is that
/// instruction's modifier and is inert on its own.
struct DecoratedInstruction {
  Opcode op;
  char letter;
  Register target = Register::bx;
  bool is_modifier = false;
  std::size_t partner = 0;  // matching s for r, matching r for s
};

class Program {
 public:
  explicit Program(std::vector<DecoratedInstruction> instructions)
      : instructions_(std::move(instructions)) {}

  const std::vector<DecoratedInstruction>& instructions() const noexcept { return instructions_; }
  std::size_t size() const noexcept { return instructions_.size(); }
  const DecoratedInstruction& operator[](std::size_t i) const { return instructions_[i]; }

  bool has_loop() const noexcept;
  /// Index of the instruction following the one at i, skipping i's modifier.
  std::size_t next_instruction(std::size_t i) const noexcept;

 private:
  std::vector<DecoratedInstruction> instructions_;
};

/// Marker for codes with no well-defined interpretation (the error class).
struct ErrorClass {
  std::string reason;
};

using ParseResult = std::variant<Program, ErrorClass>;

ParseResult parse(std::string_view letters);

enum class Task : std::uint8_t { not_, nand, and_, or_not, or_, and_not, nor, xor_, equ };

inline constexpr Task kAllTasks[] = {Task::not_, Task::nand,    Task::and_, Task::or_not, Task::or_,
                                     Task::and_not, Task::nor, Task::xor_, Task::equ};

std::string_view task_name(Task task) noexcept;
std::optional<Task> task_from_name(std::string_view name);
std::size_t task_arity(Task task) noexcept;
/// Bitwise value of the task. One-input tasks ignore y.
Word task_value(Task task, Word x, Word y = 0) noexcept;

using TaskCounts = std::map<Task, int>;

/// An emitted value together with the last (at most two) inputs read before it.
struct OutputEvent {
  Word value;
  std::vector<Word> window;
};

enum class Termination { end_of_code, halt, step_cap };

struct ExecutionResult {
  std::vector<Word> outputs;
  std::size_t steps_used = 0;
  Termination termination = Termination::end_of_code;
  TaskCounts tasks;
  std::vector<OutputEvent> trace;

  bool well_defined() const noexcept { return termination != Termination::step_cap; }
};

inline constexpr std::size_t kMaxStackDepth = 4096;

ExecutionResult execute(const Program& program, std::span<const Word> inputs,
                        std::size_t step_cap = FunctionClassSpec::kDefaultStepCap);

/// Parses and runs; the error class is returned when parsing fails.
std::variant<ExecutionResult, ErrorClass> run(std::string_view letters, std::span<const Word> inputs,
                                              std::size_t step_cap = FunctionClassSpec::kDefaultStepCap);

/// Credits every task whose value on one or two window inputs equals the
/// emitted value. Repeats accumulate.
TaskCounts detect_tasks(std::span<const OutputEvent> trace);

struct Behavior {
  std::vector<std::vector<Word>> table;  // outputs per domain element
  std::optional<std::string> error;      // set when the code is in the error class

  bool error_class() const noexcept { return error.has_value(); }
};

Behavior behavior(std::string_view letters, const FunctionClassSpec& spec);

enum class Membership { member, non_member, error_class };

std::string_view membership_name(Membership m) noexcept;

Membership class_membership(std::string_view letters, const FunctionClassSpec& spec);

/// 16 seeded random tuples followed by the all-zeros and all-ones tuples.
std::vector<Tuple> default_domain(std::size_t arity, std::uint64_t seed);

/// Spec whose expected table is the behavior of an oracle code.
/// Throws MembershipError when the oracle is in the error class.
FunctionClassSpec spec_from_oracle(std::string_view oracle_letters, std::vector<Tuple> domain,
                                   std::size_t step_cap = FunctionClassSpec::kDefaultStepCap);

}  // namespace stylo
