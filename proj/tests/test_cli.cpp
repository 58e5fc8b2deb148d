#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "stylo/cli.hpp"
#include "stylo/io.hpp"

using namespace stylo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("synth writes a creature file") {
  TempDir dir("stylo_cli_synth");
  const auto path = dir / "n.creature";
  const auto r = cli({"synth", "--tasks", "XOR:2,NOT:3", "--variant", "noloop", "--out", path});
  CHECK(r.code == kExitOk);
  REQUIRE(fs::exists(path));
  const auto c = read_creature(path);
  CHECK(c.tasks() == TaskList{{Task::xor_, 2}, {Task::not_, 3}});
  CHECK(c.genome.letters() == synth_noloop(c.tasks()).letters());
  CHECK(cli({"synth", "--tasks", "XOR:2", "--variant", "sideways"}).code == kExitUsage);
}

TEST_CASE("fingerprint of identical sets is degenerate") {
  TempDir dir("stylo_cli_fp");
  const auto a = dir / "a.creature";
  REQUIRE(cli({"synth", "--tasks", "NOT:2", "--out", a}).code == kExitOk);
  const auto r = cli({"fingerprint", "--a", a, "--b", a});
  CHECK(r.code == kExitDegenerate);
  CHECK(r.err.find("identical-profiles") != std::string::npos);
}

TEST_CASE("fingerprint writes json and svg") {
  TempDir dir("stylo_cli_fp2");
  fs::create_directories(dir.path / "b");
  const auto a = dir / "a.creature", n = dir / "b/n.creature", l = dir / "b/l.creature";
  write_text_file(a, "# name: drift\n# task: NOT 2\ngenome: aoncjpbboncjp\n");
  REQUIRE(cli({"synth", "--tasks", "NOT:2", "--variant", "noloop", "--out", n}).code == 0);
  REQUIRE(cli({"synth", "--tasks", "NOT:2", "--variant", "allloop", "--out", l}).code == 0);
  const auto r = cli({"fingerprint", "--a", a, "--b", (dir.path / "b" / "?.creature").string(), "--json",
                      dir / "fp.json", "--svg", dir / "fp.svg"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(read_text_file(dir / "fp.json"));
  CHECK(j["w_plus"].size() == 5);
  CHECK(j["eta"].is_number());
  CHECK(j["size_b"] == 2);
  CHECK(fs::exists(dir / "fp.svg"));
}

TEST_CASE("classcheck exit codes") {
  TempDir dir("stylo_cli_cc");
  const auto bad = dir / "bad.creature", good = dir / "good.creature";
  write_text_file(bad, "# name: bad\ngenome: orp\n");
  write_text_file(good, "# name: good\ngenome: oncjp\n");
  const auto e = cli({"classcheck", "--code", bad, "--spec-tasks", "NOT:1"});
  CHECK(e.code == kExitParse);
  CHECK(e.out.find("error-class") != std::string::npos);
  const auto m = cli({"classcheck", "--code", good, "--spec-tasks", "NOT:1"});
  CHECK(m.code == kExitOk);
  CHECK(m.out.find("member") != std::string::npos);
  const auto nm = cli({"classcheck", "--code", good, "--spec-tasks", "XOR:1"});
  CHECK(nm.code == kExitOk);
  CHECK(nm.out.find("non-member") != std::string::npos);
  write_text_file(dir / "in.txt", "1\n2\n");
  write_text_file(dir / "exp.txt", "4294967294\n4294967293\n");
  CHECK(cli({"classcheck", "--code", good, "--spec", dir / "in.txt", "--expected", dir / "exp.txt"}).out ==
        "member\n");
  CHECK(cli({"classcheck", "--code", good, "--spec", dir / "in.txt", "--oracle", "op"}).out == "non-member\n");
  CHECK(cli({"classcheck", "--code", good}).code == kExitUsage);
  write_text_file(dir / "digit.creature", "genome: on3p\n");
  CHECK(cli({"classcheck", "--code", dir / "digit.creature", "--spec-tasks", "NOT:1"}).code == kExitParse);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"nosuch"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"analyze", "/nonexistent/*.creature"}).code != kExitOk);
}

TEST_CASE("config file values are overridden by flags") {
  TempDir dir("stylo_cli_cfg");
  const auto a1 = dir / "a1.creature", a2 = dir / "a2.creature", b = dir / "b.creature";
  write_text_file(a1, "# name: a1\ngenome: aoncjp\n");
  write_text_file(a2, "# name: a2\ngenome: aoncjpccc\n");
  write_text_file(b, "# name: b\ngenome: oncjp\n");
  const auto cfg = dir / "run.ini";
  write_text_file(cfg, "p=3\n");
  auto norm_of = [&](std::vector<std::string> extra) {
    std::vector<std::string> args{"--config", cfg};
    args.insert(args.end(), extra.begin(), extra.end());
    for (const auto& s : {"fingerprint", "--a", a1.c_str(), "--a", a2.c_str(), "--b", b.c_str()})
      args.emplace_back(s);
    const auto r = cli(args);
    REQUIRE(r.code == kExitOk);
    return nlohmann::json::parse(r.out)["norm_p"].get<double>();
  };
  CHECK(norm_of({}) == 3.0);
  CHECK(norm_of({"--p", "2"}) == 2.0);
}

TEST_CASE("analyze emits a csv row per file") {
  TempDir dir("stylo_cli_an");
  write_text_file(dir / "x.creature", "# name: x\ngenome: oncjp\n");
  write_text_file(dir / "y.creature", "# name: y\ngenome: oocjp\n");
  const auto r = cli({"analyze", (dir.path / "*.creature").string()});
  REQUIRE(r.code == kExitOk);
  const auto ps = parse_profile_csv(r.out);
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].code_id() == "x");
  CHECK(ps[0].names().size() == 5);
}

TEST_CASE("neutral, cluster and pca subcommands") {
  TempDir dir("stylo_cli_misc");
  const auto base = dir / "base.creature";
  REQUIRE(cli({"synth", "--tasks", "NOT:1", "--out", base}).code == 0);
  const auto r = cli({"neutral", "--code", base, "--count", "4", "--seed", "3", "--out-dir", dir / "v",
                      "--spec-tasks", "NOT:1"});
  REQUIRE(r.code == kExitOk);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir.path / "v")) files += e.path().extension() == ".creature";
  CHECK(files == 4);
  const auto glob = (dir.path / "v" / "*.creature").string();
  const auto c = cli({"cluster", glob, "--k", "2"});
  CHECK(c.code == kExitOk);
  const auto p = cli({"pca", glob, "--svg", dir / "pca.svg"});
  CHECK(p.code == kExitOk);
  CHECK(fs::exists(dir / "pca.svg"));
  const auto same = cli({"pca", base, base});
  CHECK(same.code == kExitDegenerate);
}

TEST_CASE("one code against one code leaves eta undefined") {
  TempDir dir("stylo_cli_fp3");
  const auto a = dir / "a.creature", b = dir / "b.creature";
  write_text_file(a, "# name: a\ngenome: aoncjp\n");
  write_text_file(b, "# name: b\ngenome: oncjp\n");
  const auto r = cli({"fingerprint", "--a", a, "--b", b});
  CHECK(r.code == kExitDegenerate);
  CHECK(nlohmann::json::parse(r.out)["eta"].is_null());
}
