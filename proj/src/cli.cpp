#include "stylo/cli.hpp"

#include <glob.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "stylo/errors.hpp"
#include "stylo/io.hpp"
#include "stylo/measures.hpp"
#include "stylo/render.hpp"
#include "stylo/style.hpp"
#include "stylo/synth.hpp"
#include "stylo/translate.hpp"
#include "stylo/vm.hpp"

namespace stylo {

namespace {

namespace fs = std::filesystem;

const char* kDefaultRegistry = "vocabulary,length,difficulty,volume,effort";

/// Expands shell-style patterns in order; a pattern with no match is kept
/// only if it names an existing file.
std::vector<std::string> expand(const std::vector<std::string>& patterns) {
  std::vector<std::string> out;
  for (const auto& pattern : patterns) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    } else if (fs::exists(pattern)) {
      out.push_back(pattern);
    }
    ::globfree(&g);
    if (rc != 0 && !fs::exists(pattern)) throw std::runtime_error("no files match '" + pattern + "'");
  }
  return out;
}

std::vector<Code> load_codes(const std::vector<std::string>& patterns) {
  std::vector<Code> codes;
  for (const auto& path : expand(patterns)) codes.push_back(read_creature(path).genome);
  return codes;
}

/// The letters of an oracle given either inline or as a creature file.
std::string oracle_letters(const std::string& text) {
  if (fs::exists(text)) return read_creature(text).genome.letters();
  return text;
}

struct SpecOptions {
  std::string inputs;
  std::string expected;
  std::string oracle;
  std::string tasks;
  std::uint64_t seed = 0;
  std::size_t step_cap = FunctionClassSpec::kDefaultStepCap;

  void attach(CLI::App* cmd) {
    cmd->add_option("--spec", inputs, "input tuples file, one tuple per line");
    cmd->add_option("--expected", expected, "expected outputs, parallel to --spec");
    cmd->add_option("--oracle", oracle, "oracle code (letters or creature file) run on --spec");
    cmd->add_option("--spec-tasks", tasks, "define the class by a task list such as XOR:2,NOT:3");
    cmd->add_option("--spec-seed", seed, "seed of the default input domain for --spec-tasks");
    cmd->add_option("--step-cap", step_cap, "instruction budget per run")->check(CLI::PositiveNumber);
  }

  std::optional<FunctionClassSpec> resolve() const {
    if (!tasks.empty()) return task_spec(parse_task_list(tasks), seed, step_cap);
    if (inputs.empty()) return std::nullopt;
    std::optional<fs::path> exp;
    std::optional<std::string> oracle_code;
    if (!expected.empty()) exp = expected;
    if (!oracle.empty()) oracle_code = oracle_letters(oracle);
    if (!exp && !oracle_code) throw CLI::ValidationError("--spec", "needs --expected or --oracle");
    return read_spec(inputs, exp, oracle_code, step_cap);
  }

  FunctionClassSpec require() const {
    auto spec = resolve();
    if (!spec) throw CLI::ValidationError("spec", "this command needs --spec or --spec-tasks");
    return *spec;
  }
};

std::vector<Profile> profiles_of(const std::vector<Code>& codes, const MeasureRegistry& registry,
                                 const std::optional<FunctionClassSpec>& spec) {
  AnalysisContext ctx{spec, 2};
  std::vector<Profile> out;
  out.reserve(codes.size());
  for (const auto& code : codes) out.push_back(build_profile(code, registry, ctx));
  return out;
}

std::string joined(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

void report_fingerprint(std::ostream& out, const StyleFingerprint& fp) {
  out << "w_plus: " << joined(fp.w_plus) << "\n";
  out << "theta: " << format_double(fp.theta) << "\n";
  out << "eta: " << (fp.eta ? format_double(*fp.eta) : "undefined (" + fp.eta_reason + ")") << "\n";
}

std::vector<std::array<double, 2>> as_points(const PcaResult& r) { return r.projections; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"evolved-code style fingerprints, structure metrics and comparison-code synthesis", "stylo"};
  app.set_config("--config", "", "INI file of key=value defaults; flags on the command line win");
  app.require_subcommand(1);
  app.fallthrough();

  std::string registry_list = kDefaultRegistry;
  double p = 2.0;
  app.add_option("--registry", registry_list, "comma-separated measure names, in profile order")
      ->capture_default_str();
  app.add_option("--p", p, "norm exponent for the fingerprint")->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "profile creature files, emit CSV");
  std::vector<std::string> analyze_files;
  std::string analyze_csv;
  SpecOptions analyze_spec;
  analyze->add_option("files", analyze_files, "creature files or glob patterns")->required();
  analyze->add_option("--csv", analyze_csv, "write the CSV here instead of stdout");
  analyze_spec.attach(analyze);

  // fingerprint
  auto* fpcmd = app.add_subcommand("fingerprint", "style fingerprint of set A against set B");
  std::vector<std::string> a_patterns, b_patterns;
  std::string fp_svg, fp_json;
  SpecOptions fp_spec;
  fpcmd->add_option("--a", a_patterns, "creature files of set A (globs allowed)")->required();
  fpcmd->add_option("--b", b_patterns, "creature files of set B (globs allowed)")->required();
  fpcmd->add_option("--svg", fp_svg, "bar chart output");
  fpcmd->add_option("--json", fp_json, "fingerprint JSON output (default stdout)");
  fp_spec.attach(fpcmd);

  // pca
  auto* pcacmd = app.add_subcommand("pca", "principal components of profiles");
  std::vector<std::string> pca_files;
  std::string pca_svg;
  std::vector<std::string> pca_labels;
  SpecOptions pca_spec;
  pcacmd->add_option("files", pca_files, "creature files or glob patterns")->required();
  pcacmd->add_option("--svg", pca_svg, "scatter plot output");
  pcacmd->add_option("--labels", pca_labels, "point labels (default: code ids)");
  pca_spec.attach(pcacmd);

  // cluster
  auto* clcmd = app.add_subcommand("cluster", "single-linkage clustering along a direction w");
  std::vector<std::string> cl_files;
  std::size_t cl_k = 2;
  std::vector<double> cl_w;
  SpecOptions cl_spec;
  clcmd->add_option("files", cl_files, "creature files or glob patterns")->required();
  clcmd->add_option("--k", cl_k, "target cluster count")->capture_default_str()->check(CLI::PositiveNumber);
  clcmd->add_option("--w", cl_w, "direction, one weight per measure (default uniform)")->delimiter(',');
  cl_spec.attach(clcmd);

  // translate
  auto* trcmd = app.add_subcommand("translate", "rewrite a code toward the style of set B");
  std::string tr_code, tr_out;
  std::vector<std::string> tr_b;
  TranslationOptions tr_opts;
  SpecOptions tr_spec;
  trcmd->add_option("--code", tr_code, "creature file to translate")->required();
  trcmd->add_option("--b", tr_b, "target creature files (globs allowed)")->required();
  trcmd->add_option("--delta", tr_opts.delta_target, "stop once ||v|| is at most this")->capture_default_str();
  trcmd->add_option("--budget", tr_opts.budget, "candidate edits evaluated in total")->capture_default_str();
  trcmd->add_option("--seed", tr_opts.seed, "edit RNG seed")->capture_default_str();
  trcmd->add_option("--out", tr_out, "write the translated creature here (default stdout)");
  tr_spec.attach(trcmd);

  // synth
  auto* sycmd = app.add_subcommand("synth", "synthesize a comparison code from NAND gadgets");
  std::string sy_tasks, sy_variant = "noloop", sy_out;
  sycmd->add_option("--tasks", sy_tasks, "task list such as XOR:2,NOT:3")->required();
  sycmd->add_option("--variant", sy_variant, "noloop or allloop")
      ->capture_default_str()
      ->check(CLI::IsMember({"noloop", "allloop"}));
  sycmd->add_option("--out", sy_out, "creature file to write (default <variant>.creature)");

  // neutral
  auto* necmd = app.add_subcommand("neutral", "class-preserving single-edit variants");
  std::string ne_code, ne_dir = ".";
  std::size_t ne_count = 10;
  std::uint64_t ne_seed = 1;
  SpecOptions ne_spec;
  necmd->add_option("--code", ne_code, "creature file")->required();
  necmd->add_option("--count", ne_count, "variants wanted")->capture_default_str();
  necmd->add_option("--seed", ne_seed, "edit RNG seed")->capture_default_str();
  necmd->add_option("--out-dir", ne_dir, "directory for the variant files")->capture_default_str();
  ne_spec.attach(necmd);

  // classcheck
  auto* cccmd = app.add_subcommand("classcheck", "member, non-member or error class");
  std::string cc_code;
  SpecOptions cc_spec;
  cccmd->add_option("--code", cc_code, "creature file")->required();
  cc_spec.attach(cccmd);

  // experiment
  auto* excmd = app.add_subcommand("experiment", "ingest one creature, compare with both synthesized codes");
  std::string ex_creature, ex_dir = "out", ex_tasks;
  std::uint64_t ex_seed = 0;
  excmd->add_option("--creature", ex_creature, "ingested creature file")->required();
  excmd->add_option("--out-dir", ex_dir, "output directory")->capture_default_str();
  excmd->add_option("--tasks", ex_tasks, "task list (default: the creature's task lines)");
  excmd->add_option("--seed", ex_seed, "seed of the input domain")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const NormSpec norm{p};
  const std::string hash = config_hash(app.config_to_str(true, false));

  try {
    const MeasureRegistry registry = registry_from_list(registry_list);

    if (analyze->parsed()) {
      const auto codes = load_codes(analyze_files);
      const auto profiles = profiles_of(codes, registry, analyze_spec.resolve());
      const std::string csv = format_profile_csv(profiles, registry.names());
      if (analyze_csv.empty())
        out << csv;
      else
        write_text_file(analyze_csv, csv);
      return kExitOk;
    }

    if (fpcmd->parsed()) {
      const auto spec = fp_spec.resolve();
      CodeSetProfiles a("A", profiles_of(load_codes(a_patterns), registry, spec));
      CodeSetProfiles b("B", profiles_of(load_codes(b_patterns), registry, spec));
      const auto fp = style_fingerprint(a, b, norm);
      const std::string json = format_fingerprint_json(fp, hash);
      if (fp_json.empty())
        out << json;
      else
        write_text_file(fp_json, json);
      if (fp.degenerate) {
        err << "degenerate: " << *fp.degenerate << "\n";
        return kExitDegenerate;
      }
      if (!fp_svg.empty()) write_text_file(fp_svg, render_fingerprint_svg(fp));
      if (!fp.eta) {
        err << "degenerate: eta undefined (" << fp.eta_reason << ")\n";
        return kExitDegenerate;
      }
      return kExitOk;
    }

    if (pcacmd->parsed()) {
      const auto codes = load_codes(pca_files);
      const auto profiles = profiles_of(codes, registry, pca_spec.resolve());
      const auto result = pca(std::span<const Profile>(profiles));
      out << "eigenvalues: " << joined(result.eigenvalues) << "\n";
      for (std::size_t i = 0; i < result.components.size(); ++i)
        out << "component " << i + 1 << ": " << joined(result.components[i]) << "\n";
      std::vector<std::string> labels = pca_labels;
      if (labels.empty())
        for (const auto& c : codes) labels.push_back(c.id());
      if (labels.size() != codes.size()) throw CLI::ValidationError("--labels", "one label per file");
      for (std::size_t i = 0; i < codes.size(); ++i)
        out << labels[i] << " " << format_double(result.projections[i][0]) << " "
            << format_double(result.projections[i][1]) << "\n";
      if (!pca_svg.empty()) {
        const auto points = as_points(result);
        write_text_file(pca_svg, render_pca_svg(points, labels));
      }
      return kExitOk;
    }

    if (clcmd->parsed()) {
      const auto codes = load_codes(cl_files);
      const auto profiles = profiles_of(codes, registry, cl_spec.resolve());
      Vector w = cl_w;
      if (w.empty()) w.assign(registry.size(), 1.0 / std::sqrt(static_cast<double>(registry.size())));
      if (w.size() != registry.size()) throw CLI::ValidationError("--w", "one weight per measure");
      const auto labels = cluster(profiles, w, cl_k);
      for (std::size_t i = 0; i < codes.size(); ++i) out << codes[i].id() << " " << labels[i] << "\n";
      return kExitOk;
    }

    if (trcmd->parsed()) {
      const auto spec = tr_spec.require();
      const auto creature = read_creature(tr_code);
      const auto targets = load_codes(tr_b);
      tr_opts.norm = norm;
      const auto result = translate(creature.genome, targets, registry, spec, tr_opts);
      const auto& t = result.trace;
      err << "iterations: " << t.iterations.size() << "\ncandidates: " << t.candidates_evaluated
          << "\ndelta: " << format_double(t.initial_delta) << " -> " << format_double(t.final_delta)
          << "\nE(Z): " << format_double(t.expected_z) << " bound " << format_double(t.bound)
          << "\nconverged: " << (t.converged ? "yes" : "no") << "\n";
      CreatureFile file{{{"name", result.code.id()}, {"translated-from", creature.genome.id()}}, result.code};
      if (tr_out.empty())
        out << format_creature(file);
      else
        write_creature(tr_out, file);
      return kExitOk;
    }

    if (sycmd->parsed()) {
      const auto tasks = parse_task_list(sy_tasks);
      Code code = sy_variant == "allloop" ? synth_allloop(tasks) : synth_noloop(tasks);
      CreatureFile file{{{"name", code.id()}}, code};
      for (const auto& e : tasks)
        file.metadata.emplace_back("task", std::string(task_name(e.task)) + " " + std::to_string(e.count));
      const std::string path = sy_out.empty() ? sy_variant + ".creature" : sy_out;
      write_creature(path, file);
      out << path << "\n";
      return kExitOk;
    }

    if (necmd->parsed()) {
      const auto spec = ne_spec.require();
      const auto creature = read_creature(ne_code);
      if (class_membership(creature.genome.letters(), spec) != Membership::member)
        throw MembershipError("code '" + creature.genome.id() + "' is not a member of the class");
      const auto result = neutral_variants(creature.genome, spec, ne_count, ne_seed);
      for (const auto& v : result.variants) {
        const fs::path path = fs::path(ne_dir) / (v.id() + ".creature");
        write_creature(path, CreatureFile{{{"name", v.id()}, {"variant-of", creature.genome.id()}}, v});
        out << path.string() << "\n";
      }
      if (result.partial)
        err << "found " << result.variants.size() << " of " << ne_count << " variants in " << result.attempts
            << " attempts\n";
      return kExitOk;
    }

    if (cccmd->parsed()) {
      const auto spec = cc_spec.require();
      const auto creature = read_creature(cc_code);
      const auto m = class_membership(creature.genome.letters(), spec);
      out << membership_name(m) << "\n";
      return m == Membership::error_class ? kExitParse : kExitOk;
    }

    if (excmd->parsed()) {
      const auto creature = read_creature(ex_creature);
      const TaskList tasks = ex_tasks.empty() ? creature.tasks() : parse_task_list(ex_tasks);
      if (tasks.empty()) throw CLI::ValidationError("--tasks", "the creature has no task lines; pass --tasks");
      const auto spec = task_spec(tasks, ex_seed);
      Code noloop = synth_noloop(tasks);
      Code allloop = synth_allloop(tasks);
      const fs::path dir(ex_dir);
      std::vector<Code> codes{creature.genome, noloop, allloop};
      for (std::size_t i = 1; i < codes.size(); ++i)
        write_creature(dir / (codes[i].id() + ".creature"), CreatureFile{{{"name", codes[i].id()}}, codes[i]});

      const auto profiles = profiles_of(codes, registry, spec);
      write_profile_csv(dir / "profiles.csv", profiles, registry.names());
      CodeSetProfiles a("A", {profiles[0]});
      CodeSetProfiles b("B", {profiles[1], profiles[2]});
      const auto fp = style_fingerprint(a, b, norm);
      write_fingerprint_json(dir / "fingerprint.json", fp, hash);
      if (fp.degenerate) {
        err << "degenerate: " << *fp.degenerate << "\n";
        return kExitDegenerate;
      }
      write_text_file(dir / "fingerprint.svg", render_fingerprint_svg(fp));
      const auto result = pca(std::span<const Profile>(profiles));
      const std::vector<std::string> labels{"A", "N", "L"};
      write_text_file(dir / "pca.svg", render_pca_svg(as_points(result), labels));
      report_fingerprint(out, fp);
      for (std::size_t i = 0; i < labels.size(); ++i)
        out << labels[i] << " " << format_double(result.projections[i][0]) << " "
            << format_double(result.projections[i][1]) << "\n";
      for (std::size_t i = 0; i < codes.size(); ++i)
        out << codes[i].id() << ": " << membership_name(class_membership(codes[i].letters(), spec)) << "\n";
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const MembershipError& e) {
    err << "class error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DegenerateError& e) {
    err << "degenerate: " << e.reason() << ": " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ProfileError& e) {
    err << "measure failures:";
    for (const auto& [name, msg] : e.failures()) err << " " << name << " (" << msg << ")";
    err << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace stylo
