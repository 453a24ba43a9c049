#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "permgram/cli.hpp"
#include "support.hpp"

using namespace permgram;
using namespace permgram::test;

namespace {

CommandSpec command(const std::string& sub, const std::string& input) {
  CommandSpec c;
  c.subcommand = sub;
  c.inputs = {input};
  return c;
}

std::string scratch(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("permgram_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

bool contains(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("validate exit codes") {
  CHECK(run(command("validate", fixture("anbn.etol"))).exit_code == 0);
  CHECK(run(command("validate", fixture("anbncn.idx"))).exit_code == 0);
  const std::string nondet = scratch("nondet.edtol", "@edt0l\n@terminals a\n@nonterminals S\n@axioms S\n@table t\nS -> a\nS -> a a\n");
  const CommandResult r = run(command("validate", nondet));
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "determinism"));
}

TEST_CASE("enumerate prints words in canonical order") {
  CommandSpec c = command("enumerate", fixture("anbn.etol"));
  c.max_len = 4;
  const CommandResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "()\na b\na a b b\n");
}

TEST_CASE("transform writes a parseable system") {
  CommandSpec c = command("transform", fixture("ab.etol"));
  c.op = "insert-hash";
  c.hash = "#h";
  const CommandResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("@etol", 0) == 0);
  c.hash = "a";
  CHECK(run(c).exit_code == 2);
}

TEST_CASE("difftest equal exits 0") {
  CommandSpec c = command("difftest", fixture("anbn.etol"));
  c.op = "insert-hashes";
  c.k = 2;
  const CommandResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "equal: yes"));
  CHECK(contains(r.out, "stabilized: yes"));
}

TEST_CASE("difftest forced failure exits 1") {
  CommandSpec c = command("difftest", fixture("acb.etol"));
  c.op = "move-right";
  c.a = "a";
  c.b = "b";
  c.max_len = 12;
  CHECK(run(c).exit_code == 0);
  c.phase_guard = false;
  const CommandResult r = run(c);
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "equal: no"));
}

TEST_CASE("difftest without stabilization exits 3") {
  CommandSpec c = command("difftest", fixture("anbn.etol"));
  c.op = "cyc";
  c.max_form = 8;
  const CommandResult r = run(c);
  CHECK(r.exit_code == 3);
  CHECK(contains(r.err, "unstabilized"));
}

TEST_CASE("file, parse and argument errors exit 2") {
  CHECK(run(command("validate", fixture("missing.etol"))).exit_code == 2);
  CHECK(run(command("validate", scratch("broken.etol", "@etol\n@table t\n"))).exit_code == 2);
  CommandSpec c = command("transform", fixture("anbn.etol"));
  CHECK(run(c).exit_code == 2);
  c.op = "no-such-op";
  CHECK(run(c).exit_code == 2);
  c.op = "ck";
  CHECK(run(c).exit_code == 2);
  c.op = "cyc-indexed";
  CHECK(contains(run(c).err, "indexed"));
  CommandSpec caps = command("enumerate", fixture("anbn.etol"));
  caps.max_len = 8;
  caps.max_form = 4;
  CHECK(run(caps).exit_code == 2);
  CHECK(run(command("frobnicate", fixture("anbn.etol"))).exit_code == 2);
}

TEST_CASE("stats and trace") {
  const CommandResult s = run(command("stats", fixture("anbncn.edtol")));
  CHECK(s.exit_code == 0);
  CHECK(contains(s.out, "kind: edt0l"));
  CHECK(contains(s.out, "tables: 2"));

  CommandSpec t = command("trace", fixture("anbn.etol"));
  t.word = "a a b b";
  const CommandResult r = run(t);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "digraph derivation"));
  t.word = "b a";
  CHECK(run(t).exit_code == 1);

  CommandSpec ti = command("trace", fixture("anbncn.idx"));
  ti.word = "a b c";
  ti.skeleton = 1;
  CHECK(run(ti).exit_code == 0);
}

TEST_CASE("output goes to a file when requested") {
  CommandSpec c = command("enumerate", fixture("ab.etol"));
  c.output = (std::filesystem::temp_directory_path() / "permgram_cli_out.txt").string();
  const CommandResult r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(*c.output);
  std::string line;
  std::getline(in, line);
  CHECK(line == "a b");
}

TEST_CASE("ck output enumerates under the default form cap") {
  CommandSpec t = command("transform", fixture("ab.etol"));
  t.op = "ck";
  t.k = 2;
  t.output = (std::filesystem::temp_directory_path() / "permgram_cli_ck.etol").string();
  REQUIRE(run(t).exit_code == 0);
  CommandSpec e = command("enumerate", *t.output);
  e.max_len = 2;
  const CommandResult r = run(e);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "a b\nb a\n");
}
