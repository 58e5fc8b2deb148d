#pragma once

// Independent reference computations used as test oracles. Each one is the
// most literal reading of its definition, with no shared code paths with
// the library beyond plain data types.

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/code_model.hpp"
#include "stylo/structure.hpp"
#include "stylo/vm.hpp"

namespace oracle {

/// Counts every length-n window in a map and applies the entropy sum.
inline double block_entropy(std::string_view s, std::size_t n, std::size_t lambda) {
  std::map<std::string, double> counts;
  const std::size_t windows = s.size() - n + 1;
  for (std::size_t i = 0; i < windows; ++i) counts[std::string(s.substr(i, n))] += 1.0;
  double h = 0.0;
  for (const auto& [block, c] : counts) {
    const double p = c / static_cast<double>(windows);
    h -= p * std::log(p) / std::log(static_cast<double>(lambda));
  }
  return h / static_cast<double>(n);
}

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Moments of X = w.a - w.b over every ordered pair of A x B.
struct PairStats {
  Vec u;
  double mean = 0.0;
  double variance = 0.0;
  double union_second_moment = 0.0;  // E(Y^2), Y over (A+B) x (A+B)
  double union_mean = 0.0;           // E(Y)
};

inline PairStats pair_stats(const std::vector<Vec>& a, const std::vector<Vec>& b, const Vec& w) {
  PairStats st;
  st.u.assign(a.front().size(), 0.0);
  std::vector<double> xs;
  for (const auto& x : a)
    for (const auto& y : b) {
      for (std::size_t i = 0; i < x.size(); ++i) st.u[i] += x[i] - y[i];
      xs.push_back(dot(w, x) - dot(w, y));
    }
  for (double x : xs) st.mean += x / static_cast<double>(xs.size());
  for (double x : xs) st.variance += (x - st.mean) * (x - st.mean) / static_cast<double>(xs.size());
  std::vector<Vec> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const double pairs = static_cast<double>(all.size() * all.size());
  for (const auto& x : all)
    for (const auto& y : all) {
      const double d = dot(w, x) - dot(w, y);
      st.union_mean += d / pairs;
      st.union_second_moment += d * d / pairs;
    }
  return st;
}

/// Brute-force ablation over the level-(k-1) units: every subset is removed
/// and the remainder re-executed.
struct Ablation {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
};

inline std::string without(const stylo::LevelDecomposition& decomp, int sub, unsigned mask) {
  std::string out;
  const auto& units = decomp.units(sub);
  for (std::size_t i = 0; i < units.size(); ++i)
    if (!(mask >> i & 1u)) out += decomp.letters().substr(units[i].begin, units[i].size());
  return out;
}

inline bool still_member(const std::string& letters, const stylo::FunctionClassSpec& spec) {
  if (letters.empty()) {
    for (const auto& e : spec.expected())
      if (!e.empty()) return false;
    return true;
  }
  return stylo::class_membership(letters, spec) == stylo::Membership::member;
}

inline Ablation ablation(std::string_view letters, const stylo::FunctionClassSpec& spec, int level = 2) {
  const auto decomp = stylo::decompose(letters);
  const int sub = level - 1;
  Ablation r;
  r.n = decomp.unit_count(sub);
  for (unsigned mask = 0; mask < (1u << r.n); ++mask) {
    const auto pop = static_cast<std::size_t>(__builtin_popcount(mask));
    if (pop > r.m && still_member(without(decomp, sub, mask), spec)) r.m = pop;
  }
  for (std::size_t i = 0; i < r.n; ++i)
    if (!still_member(without(decomp, sub, 1u << i), spec)) ++r.d;
  return r;
}

}  // namespace oracle
