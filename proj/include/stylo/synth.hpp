#pragma once

// Comparison-code synthesis from NAND gadgets, task-defined function
// classes, and neutral (class-preserving) variants.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/code_model.hpp"
#include "stylo/vm.hpp"

namespace stylo {

struct TaskEntry {
  Task task;
  int count = 1;

  friend bool operator==(const TaskEntry&, const TaskEntry&) = default;
};

using TaskList = std::vector<TaskEntry>;

/// "XOR:2,NOT:3"
TaskList parse_task_list(std::string_view text);
/// "XOR 2" (count optional, defaults to 1)
TaskEntry parse_task_line(std::string_view text);
std::string format_task_list(const TaskList& tasks);

/// Straight-line NAND circuit for one task. Two-input gadgets read x then y
/// and emit task_value(task, x, y).
struct Gadget {
  Task task;
  std::string letters;
  int nand_count;
};

const std::vector<Gadget>& gadget_library();
const Gadget& gadget_for(Task task);

/// Every repetition of every task expanded in sequence.
Code synth_noloop(const TaskList& tasks);
/// One rep loop per task entry, CX preset to the repetition count.
Code synth_allloop(const TaskList& tasks);

/// The function that performs the task list: each repetition consumes one
/// or two inputs from the cycling input tuple and emits the task value.
FunctionClassSpec task_spec(const TaskList& tasks, std::vector<Tuple> domain,
                            std::size_t step_cap = FunctionClassSpec::kDefaultStepCap);
/// task_spec over default_domain(2, seed).
FunctionClassSpec task_spec(const TaskList& tasks, std::uint64_t seed = 0,
                            std::size_t step_cap = FunctionClassSpec::kDefaultStepCap);

enum class EditKind { substitute, insert, erase };

struct Edit {
  EditKind kind;
  std::size_t position;
  char letter = 0;  // unused for erase

  std::string apply(std::string_view letters) const;
  std::string describe() const;
};

/// Uniform random single edit; erase is only drawn for codes longer than one.
Edit random_edit(std::mt19937_64& rng, std::size_t length, const Alphabet& alphabet = Alphabet::standard());

struct NeutralVariants {
  std::vector<Code> variants;
  std::size_t attempts = 0;
  bool partial = false;  // budget ran out before `count` variants were found
};

/// Seeded single edits of `code` that stay in the class, pairwise distinct
/// and distinct from the original. Budget is 1000 attempts per variant.
NeutralVariants neutral_variants(const Code& code, const FunctionClassSpec& spec, std::size_t count,
                                 std::uint64_t seed);

}  // namespace stylo
