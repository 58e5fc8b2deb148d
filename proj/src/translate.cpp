#include "stylo/translate.hpp"

#include <cmath>
#include <optional>
#include <random>

#include "stylo/errors.hpp"
#include "stylo/synth.hpp"
#include "stylo/vm.hpp"

namespace stylo {

namespace {

Vector discrepancy(const Profile& a, std::span<const Profile> b) {
  Vector v(a.size(), 0.0);
  for (const auto& pb : b)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += pb[i] - a[i];
  return v;
}

std::size_t dominating(const Vector& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  return best;
}

struct Candidate {
  std::string letters;
  Profile profile;
  Vector v;
  double norm;
  double miss;  // distance of the dominating component from its target
  std::string edit;
};

}  // namespace

double translation_expected_z(const Profile& a_prime, std::span<const Profile> b) {
  const Vector v = discrepancy(a_prime, b);
  const double len = p_norm(v, NormSpec{2.0});
  if (len == 0.0) return 0.0;
  Vector w = v;
  for (auto& x : w) x /= len;
  double sum = 0.0;
  for (const auto& pb : b) sum += nu(w, pb) - nu(w, a_prime);
  return sum / static_cast<double>(b.size());
}

TranslationResult translate(const Code& a, std::span<const Code> b, const MeasureRegistry& registry,
                            const FunctionClassSpec& spec, const TranslationOptions& options) {
  if (b.empty()) throw std::invalid_argument("translation needs a non-empty target set");
  if (class_membership(a.letters(), spec) != Membership::member)
    throw MembershipError("code '" + a.id() + "' is not a member of the class");
  AnalysisContext ctx{spec, 2};
  std::vector<Profile> targets;
  for (const auto& code : b) {
    if (class_membership(code.letters(), spec) != Membership::member)
      throw MembershipError("target code '" + code.id() + "' is not a member of the class");
    targets.push_back(build_profile(code, registry, ctx));
  }
  const auto nb = static_cast<double>(b.size());

  std::string current = a.letters();
  Profile profile = build_profile(a, registry, ctx);
  Vector v = discrepancy(profile, targets);
  double norm = p_norm(v, options.norm);

  TranslationTrace trace;
  trace.initial_delta = norm;
  std::mt19937_64 rng(options.seed);

  while (norm > options.delta_target && trace.candidates_evaluated < options.budget) {
    const std::size_t m = dominating(v);
    const double target = profile[m] + v[m] / nb;
    const double current_miss = std::abs(profile[m] - target);

    std::optional<Candidate> toward, fallback;
    for (std::size_t c = 0;
         c < options.candidates_per_iteration && trace.candidates_evaluated < options.budget; ++c) {
      const auto edit = random_edit(rng, current.size());
      auto letters = edit.apply(current);
      if (letters.empty() || letters == current) continue;
      ++trace.candidates_evaluated;
      if (class_membership(letters, spec) != Membership::member) continue;
      std::optional<Profile> p;
      try {
        p = build_profile(Code(a.id(), letters), registry, ctx);
      } catch (const ProfileError&) {
        continue;
      }
      Vector cv = discrepancy(*p, targets);
      const double cn = p_norm(cv, options.norm);
      if (cn > norm) continue;
      const double miss = std::abs((*p)[m] - target);
      Candidate cand{std::move(letters), std::move(*p), std::move(cv), cn, miss, edit.describe()};
      if (miss < current_miss) {
        if (!toward || miss < toward->miss || (miss == toward->miss && cn < toward->norm))
          toward = std::move(cand);
      } else if (cn < norm && (!fallback || cn < fallback->norm)) {
        fallback = std::move(cand);
      }
    }

    auto& chosen = toward ? toward : fallback;
    if (!chosen) continue;
    trace.iterations.push_back(TranslationStep{v, m, v[m], chosen->edit, chosen->norm});
    current = std::move(chosen->letters);
    profile = std::move(chosen->profile);
    v = std::move(chosen->v);
    norm = chosen->norm;
  }

  trace.final_delta = norm;
  trace.converged = norm <= options.delta_target;
  trace.expected_z = translation_expected_z(profile, targets);
  trace.bound = norm / nb;
  return TranslationResult{Code(a.id() + "-translated", current), std::move(trace)};
}

}  // namespace stylo
