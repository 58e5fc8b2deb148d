#include "stylo/metrics.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "stylo/vm.hpp"

namespace stylo {

HalsteadCounts halstead_counts(std::string_view letters) {
  HalsteadCounts c;
  std::set<char> operators, operands;
  for (char l : letters) {
    if (is_nop(l)) {
      operands.insert(l);
      ++c.total_operands;
    } else {
      operators.insert(l);
      ++c.total_operators;
    }
  }
  c.distinct_operators = operators.size();
  c.distinct_operands = operands.size();
  return c;
}

HalsteadMeasures halstead(const HalsteadCounts& counts) {
  HalsteadMeasures m;
  const auto n1 = static_cast<double>(counts.distinct_operators);
  const auto n2 = static_cast<double>(counts.distinct_operands);
  const auto N2 = static_cast<double>(counts.total_operands);
  m.vocabulary = n1 + n2;
  m.length = static_cast<double>(counts.total_operators) + N2;
  m.volume = m.vocabulary > 0 ? m.length * std::log2(m.vocabulary) : 0.0;
  if (counts.distinct_operands > 0) {
    m.difficulty = n1 * N2 / (2.0 * n2);
    m.effort = *m.difficulty * m.volume;
  }
  return m;
}

McCabe mccabe(const ControlFlowGraph& cfg) {
  McCabe m;
  m.complexity = static_cast<long>(cfg.edges.size()) - static_cast<long>(cfg.node_count) +
                 static_cast<long>(cfg.components);
  m.unstable = m.complexity > kUnstableComplexity;
  return m;
}

double block_entropy(std::string_view letters, std::size_t block_length, std::size_t alphabet_size) {
  if (block_length < 1 || block_length > letters.size())
    throw std::domain_error("block length must be in [1, code length]");
  if (alphabet_size < 2) throw std::domain_error("alphabet size must be at least 2");
  std::map<std::string_view, std::size_t> freq;
  const std::size_t windows = letters.size() - block_length + 1;
  for (std::size_t i = 0; i < windows; ++i) ++freq[letters.substr(i, block_length)];
  const double log_base = std::log(static_cast<double>(alphabet_size));
  double h = 0.0;
  for (const auto& [block, count] : freq) {
    const double p = static_cast<double>(count) / static_cast<double>(windows);
    h -= p * std::log(p) / log_base;
  }
  // -0.0 and rounding just below zero for a single block
  if (h < 0.0) h = 0.0;
  return h / static_cast<double>(block_length);
}

GraspWeightTable::GraspWeightTable() : weights_(26, 1.0) {
  for (char c : {'j', 'k', 'l'}) set_weight(c, 1.5);
  for (char c : {'r', 's', 't'}) set_weight(c, 1.3);
}

double GraspWeightTable::weight(char letter) const {
  if (letter < 'a' || letter > 'z') throw std::invalid_argument("no weight for non-letter");
  return weights_[static_cast<std::size_t>(letter - 'a')];
}

void GraspWeightTable::set_weight(char letter, double weight) {
  if (letter < 'a' || letter > 'z') throw std::invalid_argument("no weight for non-letter");
  if (!(weight > 0.0)) throw std::invalid_argument("weights must be positive");
  weights_[static_cast<std::size_t>(letter - 'a')] = weight;
}

double grasp_content(std::string_view segment, const GraspWeightTable& table) {
  if (segment.empty()) throw std::invalid_argument("content complexity of an empty segment");
  double sum = 0.0;
  for (char c : segment) sum += table.weight(c);
  return std::log(sum);
}

std::vector<double> grasp_profile(std::string_view letters, const GraspWeightTable& table) {
  const auto decomp = decompose(letters);
  std::vector<double> out;
  for (std::size_t b = 0; b < decomp.unit_count(1); ++b)
    out.push_back(grasp_content(decomp.text(1, b), table));
  return out;
}

double yule(const ContingencyTable& t, YuleVariant variant) {
  if (!(t.f11 > 0 && t.f12 > 0 && t.f21 > 0 && t.f22 > 0))
    throw std::domain_error("contingency table entries must be positive");
  const double c = t.f11 * t.f22 / (t.f12 * t.f21);
  if (variant == YuleVariant::literal) {
    if (c < 1.0) throw std::domain_error("literal Yule coefficient needs c >= 1");
    return std::sqrt(c - 1.0) / std::sqrt(c + 1.0);
  }
  const double r = std::sqrt(c);
  return (r - 1.0) / (r + 1.0);
}

}  // namespace stylo
