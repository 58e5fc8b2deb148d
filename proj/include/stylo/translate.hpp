#pragma once

// Iterative style translation: rewrite a code, one class-preserving edit at
// a time, until its profile sits at the mean profile of a target set B.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stylo/code_model.hpp"
#include "stylo/style.hpp"

namespace stylo {

struct TranslationOptions {
  double delta_target = 0.05;
  std::size_t budget = 10000;  // candidate edits evaluated, in total
  std::uint64_t seed = 1;
  std::size_t candidates_per_iteration = 64;
  NormSpec norm;
};

struct TranslationStep {
  Vector v;                // sum over B of mu(b) - mu(a) before the edit
  std::size_t component;   // dominating component index
  double component_value;  // v at that component
  std::string edit;
  double norm_after;
};

struct TranslationTrace {
  std::vector<TranslationStep> iterations;
  double initial_delta = 0.0;
  double final_delta = 0.0;  // ||v|| for the returned code
  bool converged = false;
  std::size_t candidates_evaluated = 0;
  /// E(Z) for Z = nu_w(b) - nu_w(a'), w the fingerprint of B against a',
  /// enumerated over B.
  double expected_z = 0.0;
  double bound = 0.0;  // final_delta / #B
};

struct TranslationResult {
  Code code;
  TranslationTrace trace;
};

/// Throws MembershipError if `a` or any code of B is outside the class.
TranslationResult translate(const Code& a, std::span<const Code> b, const MeasureRegistry& registry,
                            const FunctionClassSpec& spec, const TranslationOptions& options = {});

/// E(Z) by enumeration over B, with w = (sum_B mu(b) - mu(a')) normalized.
double translation_expected_z(const Profile& a_prime, std::span<const Profile> b);

}  // namespace stylo
