#include <iostream>

#include "CLI11.hpp"
#include "permgram/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"permgram: closure constructions for ET0L and indexed grammars"};
  app.require_subcommand(1);
  permgram::CommandSpec cmd;

  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--max-len", cmd.max_len, "longest word to collect");
    sub->add_option("--max-form", cmd.max_form, "longest sentential form to explore (default 2 * max-len + 8)");
    sub->add_option("--max-flags", cmd.max_flags, "deepest flag stack for indexed grammars (default 6)");
  };
  auto add_op = [&](CLI::App* sub) {
    sub->add_option("--op", cmd.op, "construction to apply")->required();
    sub->add_option("--k", cmd.k, "number of factors (ck) or hashes minus one (insert-hashes)");
    sub->add_option("--a", cmd.a, "left marker terminal for annotate-ab / move-right");
    sub->add_option("--b", cmd.b, "right marker terminal for annotate-ab / move-right");
    sub->add_option("--hash", cmd.hash, "symbol inserted by insert-hash");
    sub->add_option("--map", cmd.map_file, "homomorphism file, lines 'sym -> tokens'");
    sub->add_option("--dfa", cmd.dfa_file, "DFA file for intersect");
    sub->add_option("--with", cmd.with_file, "second system for union");
    sub->add_flag("--check-ab", cmd.check_ab, "reject inputs whose short words are not (a,b)-words");
    sub->add_flag("--no-phase-guard{false}", cmd.phase_guard, "use the unguarded move-right tables");
    sub->add_flag("-v,--verbose", cmd.verbose, "report stage sizes on stderr");
  };

  auto* validate = app.add_subcommand("validate", "check a system, grammar or DFA file");
  auto* enumerate = app.add_subcommand("enumerate", "list words up to the caps");
  auto* transform = app.add_subcommand("transform", "apply a construction and print the result");
  auto* difftest = app.add_subcommand("difftest", "compare a construction against the word-level oracle");
  auto* stats = app.add_subcommand("stats", "print size counts");
  auto* trace = app.add_subcommand("trace", "DOT derivation of a word");
  for (auto* sub : {validate, enumerate, transform, difftest, stats, trace})
    sub->add_option("input", cmd.inputs, "input file")->required()->expected(1);
  for (auto* sub : {enumerate, difftest, trace}) add_caps(sub);
  for (auto* sub : {transform, difftest}) add_op(sub);
  for (auto* sub : {enumerate, transform, stats, trace}) sub->add_option("-o", cmd.output, "output file");
  trace->add_option("--word", cmd.word, "word to derive, tokens separated by spaces")->required();
  trace->add_option("--skeleton", cmd.skeleton, "only the path to this leaf and its neighbours");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cmd.subcommand = app.get_subcommands().front()->get_name();

  const permgram::CommandResult r = permgram::run(cmd);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
