#pragma once

// Four-tier unit hierarchy of a code and its control-flow graph.
//
//   level 0  decorated instructions (one per letter)
//   level 1  basic blocks: a block ends after a k/l guard, after the guarded
//            instruction, after r and after s
//   level 2  regions: the body of each outermost r..s loop (the blocks after
//            r up to and including s) and the maximal spans of blocks
//            between them
//   level 3  the whole program

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

inline constexpr int kTopLevel = 3;

struct UnitRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const UnitRange&, const UnitRange&) = default;
};

class LevelDecomposition {
 public:
  LevelDecomposition(std::string letters, std::array<std::vector<UnitRange>, 4> units);

  const std::string& letters() const noexcept { return letters_; }
  const std::vector<UnitRange>& units(int level) const { return units_.at(level); }
  std::size_t unit_count(int level) const { return units_.at(level).size(); }
  /// Number of level-(k-1) units inside each level-k unit, k >= 1.
  const std::vector<std::size_t>& counts(int level) const { return counts_.at(level); }
  std::string_view text(int level, std::size_t i) const;
  /// Indices of the level-(k-1) units contained in level-k unit i.
  std::vector<std::size_t> children(int level, std::size_t i) const;

 private:
  std::string letters_;
  std::array<std::vector<UnitRange>, 4> units_;
  std::array<std::vector<std::size_t>, 4> counts_;
};

/// Throws MembershipError for codes in the error class.
LevelDecomposition decompose(std::string_view letters);

enum class EdgeKind { fallthrough, conditional_skip, loop_back, loop_skip };

struct CfgEdge {
  std::size_t from;
  std::size_t to;
  EdgeKind kind;
};

/// Nodes are the basic blocks, plus one trailing exit node when some control
/// transfer targets the end of the code.
struct ControlFlowGraph {
  std::size_t node_count = 0;
  std::vector<CfgEdge> edges;
  std::size_t components = 0;
  bool has_exit_node = false;
};

ControlFlowGraph build_cfg(std::string_view letters);

using KeyCounts = std::map<std::string, std::size_t, std::less<>>;

/// Level-(k-1) unit strings with multiplicities, over the whole code.
KeyCounts subunit_keys(const LevelDecomposition& decomp, int level);

/// Same, grouped by the enclosing level-k unit.
std::vector<KeyCounts> subunit_keys_per_unit(const LevelDecomposition& decomp, int level);

}  // namespace stylo
