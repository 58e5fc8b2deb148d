// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <sstream>
#include <string>

#include "json.hpp"
#include "oracles.hpp"
#include "stylo/cli.hpp"
#include "stylo/errors.hpp"
#include "stylo/evometrics.hpp"
#include "stylo/io.hpp"
#include "stylo/measures.hpp"
#include "stylo/metrics.hpp"
#include "stylo/style.hpp"
#include "stylo/synth.hpp"
#include "stylo/translate.hpp"

using namespace stylo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

bool close(double got, double want, double tol) { return std::abs(got - want) <= tol; }
bool rel_close(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max(std::abs(want), 1e-300);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

CodeSetProfiles set_of(const std::string& label, const std::vector<Vector>& rows) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rows.front().size(); ++i) names.push_back("m" + std::to_string(i));
  std::vector<Profile> ps;
  for (std::size_t i = 0; i < rows.size(); ++i) ps.emplace_back(label + std::to_string(i), rows[i], names);
  return CodeSetProfiles(label, std::move(ps));
}

std::vector<Vector> random_rows(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vector> rows(count, Vector(dim));
  for (auto& r : rows)
    for (auto& x : r) x = u(rng);
  return rows;
}

Outcome halstead_vector() {
  Outcome o;
  const auto h = halstead(HalsteadCounts{19, 3, 153, 31});
  o.require(h.difficulty && close(*h.difficulty, 98.1667, 1e-4), "difficulty " + num(h.difficulty.value_or(-1)));
  o.require(close(h.volume, 820.535, 5e-3), "volume " + num(h.volume));
  o.require(h.effort && close(*h.effort, 80549.2, 0.5), "effort " + num(h.effort.value_or(-1)));
  o.require(h.vocabulary == 22, "vocabulary " + num(h.vocabulary));
  o.require(h.length == 184, "length " + num(h.length));
  if (o.pass)
    o.detail = "D=" + num(*h.difficulty) + " V=" + num(h.volume) + " E=" + num(*h.effort);
  return o;
}

Outcome optimality() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> g;
  double worst_identity = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 1 + rng() % 8;
    const auto ra = random_rows(rng, 1 + rng() % 6, n), rb = random_rows(rng, 1 + rng() % 6, n);
    const auto a = set_of("A", ra), b = set_of("B", rb);
    const auto fp = style_fingerprint(a, b);
    if (fp.is_degenerate()) continue;
    const double best = oracle::pair_stats(ra, rb, fp.w_plus).mean;
    const double want = fp.u_norm / static_cast<double>(fp.pair_count);
    worst_identity = std::max(worst_identity, std::abs(best - want));
    o.require(std::abs(best - want) <= 1e-9, "E(X) under w+ differs from ||u||/M on instance " +
                                                 std::to_string(inst));
    for (int t = 0; t < 100; ++t) {
      Vector w(n);
      for (auto& x : w) x = g(rng);
      w = fingerprint(w);
      const double e = separation_stats(a, b, w).mean;
      o.require(e <= best + 1e-12, "random direction beats w+ on instance " + std::to_string(inst));
    }
  }
  if (o.pass) o.detail = "200 instances, max |E(X)-||u||/M| = " + num(worst_identity);
  return o;
}

Outcome scaling() {
  Outcome o;
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t n = 2 + rng() % 6;
    const auto ra = random_rows(rng, 2 + rng() % 5, n), rb = random_rows(rng, 1 + rng() % 5, n);
    const auto base = style_fingerprint(set_of("A", ra), set_of("B", rb));
    if (!base.eta) continue;
    for (double k : {0.1, 0.5}) {
      auto sa = ra, sb = rb;
      for (auto& r : sa)
        for (auto& x : r) x *= k;
      for (auto& r : sb)
        for (auto& x : r) x *= k;
      const auto fp = style_fingerprint(set_of("A", sa), set_of("B", sb));
      o.require(fp.eta && rel_close(*fp.eta, *base.eta, 1e-9), "eta changed under scaling");
      o.require(rel_close(fp.theta, k * base.theta, 1e-9), "theta did not scale by k");
      o.require(rel_close(fp.m, k * base.m, 1e-9), "m did not scale by k");
      for (std::size_t i = 0; i < n; ++i)
        o.require(std::abs(fp.w_plus[i] - base.w_plus[i]) <= 1e-9, "w+ changed under scaling");
      ++checked;
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " scaled instances";
  return o;
}

Outcome worked_instance() {
  Outcome o;
  const std::vector<Vector> ra{{1, 0}}, rb{{0, 1}, {0.5, 0.5}};
  const auto fp = style_fingerprint(set_of("A", ra), set_of("B", rb));
  const auto e = oracle::pair_stats(ra, rb, fp.w_plus);
  o.require(close(fp.m, 1.06066, 1e-5) && close(e.mean, fp.m, 1e-12), "m " + num(fp.m));
  o.require(close(fp.sigma_a2, 0.125, 1e-5) && close(e.variance, fp.sigma_a2, 1e-12),
            "sigma_A^2 " + num(fp.sigma_a2));
  o.require(close(fp.sigma_ab2, 2.0 / 3.0, 1e-5) && close(e.union_second_moment, fp.sigma_ab2, 1e-12),
            "sigma_AB^2 " + num(fp.sigma_ab2));
  o.require(fp.eta && close(*fp.eta, 5.33333, 1e-5), "eta");
  o.require(close(fp.theta, 0.75, 1e-5), "theta " + num(fp.theta));
  if (o.pass)
    o.detail = "m=" + num(fp.m) + " sA2=" + num(fp.sigma_a2) + " sAB2=" + num(fp.sigma_ab2) +
               " eta=" + num(*fp.eta) + " theta=" + num(fp.theta);
  return o;
}

// A random walk of class-preserving single edits.
Code drift(Code c, const FunctionClassSpec& spec, int steps, std::uint64_t seed) {
  for (int i = 0; i < steps; ++i) c = neutral_variants(c, spec, 1, seed * 1000 + i).variants.at(0);
  return c;
}

// E(Z) with w from the sum over B of mu(b) - mu(a'), by enumeration over B.
double enumerate_z(const Profile& a, const std::vector<Profile>& b) {
  Vector s(a.size(), 0.0);
  for (const auto& p : b)
    for (std::size_t i = 0; i < a.size(); ++i) s[i] += p[i] - a[i];
  const double norm = std::sqrt(oracle::dot(s, s));
  if (norm == 0.0) return 0.0;
  double z = 0.0;
  for (const auto& p : b)
    for (std::size_t i = 0; i < a.size(); ++i) z += s[i] / norm * (p[i] - a[i]);
  return z / static_cast<double>(b.size());
}

Outcome translation_bound() {
  Outcome o;
  const auto reg = halstead_registry();
  std::size_t converged = 0, runs = 0;
  double worst_ratio = 0.0;
  auto one_run = [&](const char* tasks, std::uint64_t seed, double delta, std::size_t budget, bool must_converge) {
    const auto list = parse_task_list(tasks);
    const auto spec = task_spec(list);
    const auto base = synth_noloop(list);
    const std::vector<Code> b{drift(base, spec, 8, seed), drift(base, spec, 8, seed + 50)};
    TranslationOptions opt;
    opt.seed = seed;
    opt.delta_target = delta;
    opt.budget = budget;
    const auto r = translate(base, b, reg, spec, opt);
    AnalysisContext ctx{spec, 2};
    std::vector<Profile> bp;
    for (const auto& c : b) bp.push_back(build_profile(c, reg, ctx));
    const double z = enumerate_z(build_profile(r.code, reg, ctx), bp);
    const double bound = r.trace.final_delta / static_cast<double>(b.size());
    // w is built from the same discrepancy, so the bound holds with equality
    // up to rounding.
    o.require(std::abs(z) <= bound * (1.0 + 1e-12), "|E(Z)| above delta/#B for seed " + std::to_string(seed));
    o.require(class_membership(r.code.letters(), spec) == Membership::member, "translated code left the class");
    if (bound > 0) worst_ratio = std::max(worst_ratio, std::abs(z) / bound);
    ++runs;
    if (r.trace.converged) ++converged;
    if (must_converge) o.require(r.trace.converged, "no convergence for seed " + std::to_string(seed));
  };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) one_run("NOT:1", seed, 0.05, 10000, true);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) one_run("XOR:1,NOT:2", seed, 0.01, 2000, false);
  if (o.pass)
    o.detail = std::to_string(converged) + "/" + std::to_string(runs) + " converged, max |E(Z)|/(delta/#B) = " +
               num(worst_ratio);
  return o;
}

Outcome entropy() {
  Outcome o;
  for (const char* s : {"aaaa", "cccccccc", "t"})
    for (std::size_t n = 1; n <= std::string(s).size(); ++n)
      o.require(block_entropy(s, n, 20) == 0.0, std::string("constant string ") + s);
  o.require(close(block_entropy("abababab", 1, 2), 1.0, 1e-12), "abab");
  o.require(close(block_entropy("aabbbaab", 1, 2), 1.0, 1e-12), "balanced");
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::string s(1 + rng() % 64, 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng() % 20);
    for (std::size_t n = 1; n <= std::min<std::size_t>(s.size(), 5); ++n) {
      const double d = std::abs(block_entropy(s, n, 20) - oracle::block_entropy(s, n, 20));
      worst = std::max(worst, d);
      o.require(d <= 1e-12, "oracle mismatch on " + s);
    }
  }
  if (o.pass) o.detail = "max oracle difference " + num(worst);
  return o;
}

Outcome comparison_codes() {
  Outcome o;
  const auto tasks = parse_task_list("XOR:2,NOT:3");
  const auto spec = task_spec(tasks);
  const auto n = synth_noloop(tasks), l = synth_allloop(tasks);
  o.require(class_membership(n.letters(), spec) == Membership::member, "noloop not a member");
  o.require(class_membership(l.letters(), spec) == Membership::member, "allloop not a member");
  o.require(behavior(n.letters(), spec).table == behavior(l.letters(), spec).table, "output tables differ");
  if (o.pass)
    o.detail = "noloop " + std::to_string(n.size()) + " letters, allloop " + std::to_string(l.size()) +
               " letters, " + std::to_string(spec.domain().size()) + " tuples";
  return o;
}

std::string random_code(std::mt19937_64& rng, std::size_t length) {
  const std::string plain = "abcdefghijklmnopq";
  std::string s;
  int open = 0;
  while (s.size() < length) {
    const auto roll = rng() % 24;
    if (roll == 0) {
      s += 'r';
      ++open;
    } else if (roll == 1 && open > 0) {
      s += 's';
      --open;
    } else {
      s += plain[rng() % plain.size()];
    }
  }
  s.append(static_cast<std::size_t>(open), 's');
  return s;
}

std::vector<Tuple> unary_domain() {
  std::vector<Tuple> d;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 16; ++i) d.push_back({static_cast<Word>(rng() >> 32)});
  d.push_back({0});
  d.push_back({0xffffffffu});
  return d;
}

Outcome ablation() {
  Outcome o;
  std::mt19937_64 rng(808);
  std::size_t checked = 0, nontrivial = 0;
  while (checked < 30) {
    const auto code = random_code(rng, 4 + rng() % 20);
    const auto domain = default_domain(2, checked);
    std::optional<FunctionClassSpec> spec;
    try {
      spec = spec_from_oracle(code, domain);
    } catch (const MembershipError&) {
      continue;
    }
    const auto decomp = decompose(code);
    if (decomp.unit_count(1) > 10 || decomp.unit_count(1) < 2) continue;
    const auto red = redundancy(code, *spec);
    const auto britt = brittleness(code, *spec);
    const auto ref = oracle::ablation(code, *spec);
    o.require(red.report.n == ref.n && red.report.m == ref.m, "m mismatch on " + code);
    o.require(britt.report.d == ref.d, "d mismatch on " + code);
    if (ref.m > 0 && ref.m < ref.n) ++nontrivial;
    ++checked;
  }
  const auto chain_spec = spec_from_oracle("opqp", unary_domain());
  const std::string chain = "opkqqkqqkp";
  const auto b = brittleness(chain, chain_spec);
  const auto ref = oracle::ablation(chain, chain_spec);
  o.require(b.report.d == b.report.n - 2 * b.report.m, "chain: d != n - 2m");
  o.require(b.report.m == ref.m && b.report.d == ref.d, "chain disagrees with the oracle");
  o.require(b.report.m > 0, "chain has no duplicated links");
  if (o.pass)
    o.detail = std::to_string(checked) + " codes (" + std::to_string(nontrivial) +
               " with 0<m<n); chain n=" + std::to_string(b.report.n) + " m=" + std::to_string(b.report.m) +
               " d=" + std::to_string(b.report.d);
  return o;
}

// A creature of the target length grown from the no-loop construction by
// class-preserving substitutions and insertions.
Code grown_creature(const TaskList& tasks, const FunctionClassSpec& spec, std::size_t length,
                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string letters = synth_noloop(tasks).letters();
  while (letters.size() < length) {
    const auto edit = random_edit(rng, letters.size());
    if (edit.kind == EditKind::erase) continue;
    auto next = edit.apply(letters);
    if (class_membership(next, spec) == Membership::member) letters = std::move(next);
  }
  return Code("grown-" + std::to_string(seed), letters);
}

struct ExperimentRun {
  bool ok = false;
  std::string why;
  double d_nl = 0, d_an = 0, d_al = 0;
};

ExperimentRun run_experiment(const fs::path& creature, const fs::path& dir) {
  ExperimentRun r;
  std::ostringstream out, err;
  const int code = run_cli({"experiment", "--creature", creature.string(), "--out-dir", dir.string()}, out, err);
  if (code != kExitOk) {
    r.why = "experiment exited " + std::to_string(code) + ": " + err.str();
    return r;
  }
  for (const char* f : {"profiles.csv", "fingerprint.json", "fingerprint.svg", "pca.svg"})
    if (!fs::exists(dir / f)) {
      r.why = std::string("missing ") + f;
      return r;
    }
  const auto j = nlohmann::json::parse(read_text_file(dir / "fingerprint.json"));
  if (j["w_plus"].size() != 5) {
    r.why = "w_plus is not 5-component";
    return r;
  }
  double sq = 0.0;
  for (const auto& x : j["w_plus"]) sq += x.get<double>() * x.get<double>();
  if (std::abs(std::sqrt(sq) - 1.0) > 1e-12) {
    r.why = "w_plus not unit";
    return r;
  }
  if (!j["theta"].is_number() || !j["eta"].is_number()) {
    r.why = "theta or eta missing";
    return r;
  }
  const auto svg = read_text_file(dir / "fingerprint.svg");
  const std::regex bar("<rect class=\"bar\"");
  if (std::distance(std::sregex_iterator(svg.begin(), svg.end(), bar), std::sregex_iterator()) != 5) {
    r.why = "bar chart does not have 5 bars";
    return r;
  }
  const auto pca_svg = read_text_file(dir / "pca.svg");
  const std::regex point("<circle class=\"point\"");
  if (std::distance(std::sregex_iterator(pca_svg.begin(), pca_svg.end(), point), std::sregex_iterator()) != 3) {
    r.why = "scatter does not have 3 points";
    return r;
  }
  std::map<std::string, std::array<double, 2>> pts;
  std::istringstream lines(out.str());
  std::string label;
  for (std::string line; std::getline(lines, line);) {
    std::istringstream ls(line);
    double x, y;
    if (ls >> label >> x >> y && (label == "A" || label == "N" || label == "L")) pts[label] = {x, y};
  }
  if (pts.size() != 3) {
    r.why = "projections not reported";
    return r;
  }
  auto dist = [&](const char* p, const char* q) {
    return std::hypot(pts[p][0] - pts[q][0], pts[p][1] - pts[q][1]);
  };
  r.d_nl = dist("N", "L");
  r.d_an = dist("A", "N");
  r.d_al = dist("A", "L");
  r.ok = true;
  return r;
}

Outcome end_to_end() {
  Outcome o;
  const auto tasks = parse_task_list("XOR:2,NOT:3");
  const auto spec = task_spec(tasks);
  const fs::path root = fs::temp_directory_path() / "stylo_acceptance";
  fs::remove_all(root);
  std::size_t closer = 0, runs = 0;
  std::vector<fs::path> creatures;
  const fs::path shipped = fs::path(STYLO_DATA_DIR) / "grown-xor2-not3.creature";
  o.require(fs::exists(shipped), "sample creature missing");
  if (fs::exists(shipped)) creatures.push_back(shipped);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto c = grown_creature(tasks, spec, 184, seed);
    const auto path = root / ("grown-" + std::to_string(seed) + ".creature");
    write_creature(path, CreatureFile{{{"name", c.id()}, {"task", "XOR 2"}, {"task", "NOT 3"}}, c});
    creatures.push_back(path);
  }
  for (const auto& path : creatures) {
    const auto dir = root / ("out-" + path.stem().string());
    const auto r = run_experiment(path, dir);
    o.require(r.ok, path.filename().string() + ": " + r.why);
    if (!r.ok) continue;
    ++runs;
    const bool near = r.d_nl < r.d_an && r.d_nl < r.d_al;
    o.require(near, path.filename().string() + ": N-L " + num(r.d_nl) + " vs A-N " + num(r.d_an) + ", A-L " +
                        num(r.d_al));
    closer += near;
  }
  fs::remove_all(root);
  if (o.pass)
    o.detail = std::to_string(closer) + "/" + std::to_string(runs) +
               " creatures with N and L closer to each other than to A";
  return o;
}

Outcome pca_correctness() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> angle(0.0, 3.14159), len(0.2, 3.0);
  double worst = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const double t = angle(rng);
    const double s1 = len(rng) + 1.0, s2 = len(rng) * 0.5;
    const Vector e1{std::cos(t), std::sin(t)}, e2{-std::sin(t), std::cos(t)};
    std::vector<Vector> pts;
    for (double s : {-s1, s1}) pts.push_back({0.3 + s * e1[0], 0.7 + s * e1[1]});
    for (double s : {-s2, s2}) pts.push_back({0.3 + s * e2[0], 0.7 + s * e2[1]});
    // Covariance is diag(s1^2, s2^2) / 1.5 in the (e1, e2) frame.
    const auto r = pca(pts);
    o.require(rel_close(r.eigenvalues[0], 2 * s1 * s1 / 3.0, 1e-9), "first eigenvalue");
    o.require(rel_close(r.eigenvalues[1], 2 * s2 * s2 / 3.0, 1e-9), "second eigenvalue");
    for (int k = 0; k < 2; ++k) {
      const auto& want = k == 0 ? e1 : e2;
      const double sign = r.components[k][0] * want[0] + r.components[k][1] * want[1] < 0 ? -1.0 : 1.0;
      for (int i = 0; i < 2; ++i) {
        const double d = std::abs(r.components[k][i] - sign * want[i]);
        worst = std::max(worst, d);
        o.require(d <= 1e-6, "eigenvector off by " + num(d));
      }
    }
  }
  std::uniform_real_distribution<double> jitter(-0.01, 0.01);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int inst = 0; inst < 20; ++inst) {
    std::vector<Profile> ps;
    std::vector<int> truth;
    for (int i = 0; i < 12; ++i) {
      const int cls = static_cast<int>(rng() % 2);
      const Vector centre = cls == 0 ? Vector{0.2, 0.8, 0.5} : Vector{0.7, 0.3, 0.5};
      Vector v = centre;
      for (auto& x : v) x += jitter(rng);
      ps.emplace_back("p" + std::to_string(i), v, names);
      truth.push_back(cls);
    }
    const Vector w = fingerprint(Vector{1.0, -1.0, 0.0});
    const auto labels = cluster(ps, w, 2);
    std::size_t agree = 0, pairs = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j, ++pairs)
        agree += (labels[i] == labels[j]) == (truth[i] == truth[j]);
    o.require(agree == pairs, "cluster purity below 1");
  }
  if (o.pass) o.detail = "50 planted covariances (max eigenvector error " + num(worst) + "), 20 planted cluster sets";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {1, "halstead vector", halstead_vector, 1.0},
      {2, "fingerprint optimality", optimality, 10.0},
      {3, "scaling", scaling, 0.0},
      {4, "worked index instance", worked_instance, 0.0},
      {5, "translation bound", translation_bound, 0.0},
      {6, "entropy", entropy, 0.0},
      {7, "comparison-code equivalence", comparison_codes, 5.0},
      {8, "ablation oracle", ablation, 0.0},
      {9, "end-to-end comparison", end_to_end, 0.0},
      {10, "pca and clustering", pca_correctness, 0.0},
  };
  int failures = 0;
  const auto suite_start = std::chrono::steady_clock::now();
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += " (took " + num(secs) + " s, limit " + num(c.limit_seconds) + " s)";
    }
    std::printf("criterion %d: %s  %s: %s [%.3f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                secs);
    failures += !o.pass;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
              total);
  return failures == 0 ? 0 : 1;
}
