#pragma once

// Classic code measures: Halstead, McCabe, block entropy, GRASP content
// complexity, Yule's coefficient.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "stylo/structure.hpp"

namespace stylo {

/// Nop letters are operands, every other letter is an operator.
struct HalsteadCounts {
  std::size_t distinct_operators = 0;  // n1
  std::size_t distinct_operands = 0;   // n2
  std::size_t total_operators = 0;     // N1
  std::size_t total_operands = 0;      // N2
};

struct HalsteadMeasures {
  double vocabulary = 0;
  double length = 0;
  std::optional<double> difficulty;  // undefined without operands
  double volume = 0;
  std::optional<double> effort;
};

HalsteadCounts halstead_counts(std::string_view letters);
HalsteadMeasures halstead(const HalsteadCounts& counts);

struct McCabe {
  long complexity = 0;
  bool unstable = false;
};

inline constexpr long kUnstableComplexity = 50;

/// E - N + c, flagged unstable above 50.
McCabe mccabe(const ControlFlowGraph& cfg);

/// Sliding-window n-block entropy in base lambda, divided by n.
double block_entropy(std::string_view letters, std::size_t block_length, std::size_t alphabet_size);

class GraspWeightTable {
 public:
  /// Logic letters j k l weigh 1.5, flow letters r s t weigh 1.3, the rest 1.0.
  GraspWeightTable();

  double weight(char letter) const;
  void set_weight(char letter, double weight);

 private:
  std::vector<double> weights_;  // indexed by letter - 'a'
};

/// ln of the summed token weights of a non-empty segment.
double grasp_content(std::string_view segment, const GraspWeightTable& table = {});

/// Content complexity of each basic block in program order (CPG data).
std::vector<double> grasp_profile(std::string_view letters, const GraspWeightTable& table = {});

struct ContingencyTable {
  double f11, f12, f21, f22;
};

enum class YuleVariant {
  literal,   // sqrt(c-1)/sqrt(c+1), defined for c >= 1
  standard,  // (sqrt(c)-1)/(sqrt(c)+1)
};

double yule(const ContingencyTable& table, YuleVariant variant = YuleVariant::literal);

}  // namespace stylo
