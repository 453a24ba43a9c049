#include "permgram/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "permgram/closures.hpp"
#include "permgram/io.hpp"
#include "permgram/oracle.hpp"

namespace permgram {

namespace {

struct Caps {
  std::size_t len;
  std::size_t form;
  std::size_t flags;

  std::string text() const {
    return "max-len " + std::to_string(len) + ", max-form " + std::to_string(form) + ", max-flags " +
           std::to_string(flags);
  }
};

Caps caps_of(const CommandSpec& cmd) {
  const std::size_t len = cmd.max_len.value_or(8);
  return {len, cmd.max_form.value_or(2 * len + 8), cmd.max_flags.value_or(6)};
}

[[noreturn]] void bad_argument(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

ParsedFile load(const std::string& path) { return parse_system_file(read_text_file(path)); }

const LSystem& as_lsystem(const ParsedFile& f, const std::string& op) {
  if (const auto* h = std::get_if<LSystem>(&f)) return *h;
  bad_argument("op '" + op + "' needs an ET0L or EDT0L input");
}

const IndexedGrammar& as_indexed(const ParsedFile& f, const std::string& op) {
  if (const auto* g = std::get_if<IndexedGrammar>(&f)) return *g;
  bad_argument("op '" + op + "' needs an indexed grammar input");
}

Symbol symbol_arg(const std::optional<std::string>& v, const char* flag) {
  if (!v) bad_argument(std::string("missing ") + flag);
  if (!is_valid_symbol_name(*v)) bad_argument(std::string("invalid symbol for ") + flag + ": '" + *v + "'");
  return Symbol(*v);
}

int k_arg(const CommandSpec& cmd) {
  if (!cmd.k || *cmd.k < 1) bad_argument("op '" + cmd.op + "' needs --k >= 1");
  return *cmd.k;
}

std::vector<Symbol> hashes_for(const CommandSpec& cmd, const LSystem& h) {
  return make_hashes(static_cast<std::size_t>(k_arg(cmd)), h.alphabet);
}

Symbol hash_for(const CommandSpec& cmd, const LSystem& h) {
  return cmd.hash ? symbol_arg(cmd.hash, "--hash") : fresh_symbol("#0", h.alphabet);
}

ParsedFile transform(const CommandSpec& cmd, const ParsedFile& in, std::ostream& log) {
  const std::string& op = cmd.op;
  if (op.empty()) bad_argument("missing --op");
  if (op == "normal-form") return to_normal_form(as_indexed(in, op));
  if (op == "cyc-indexed") {
    const IndexedGrammar& g = as_indexed(in, op);
    return cyc_indexed(g.normal_form ? g : to_normal_form(g));
  }

  const LSystem& h = as_lsystem(in, op);
  std::optional<AbCheck> check;
  if (cmd.check_ab) check = AbCheck{};
  if (op == "insert-hash") return insert_one_hash(h, hash_for(cmd, h));
  if (op == "insert-hashes") return insert_hashes(h, hashes_for(cmd, h));
  if (op == "annotate-ab")
    return annotate_ab(h, symbol_arg(cmd.a, "--a"), symbol_arg(cmd.b, "--b"), check).system;
  if (op == "move-right") {
    MoveRightOptions options;
    options.phase_guard = cmd.phase_guard;
    options.check = check;
    return move_right(h, symbol_arg(cmd.a, "--a"), symbol_arg(cmd.b, "--b"), options);
  }
  CkOptions ck_options;
  if (cmd.verbose) ck_options.log = &log;
  if (op == "ck") return ck(h, k_arg(cmd), ck_options);
  if (op == "cyc") return cyc_etol(h, ck_options);
  if (op == "hom") {
    if (!cmd.map_file) bad_argument("op 'hom' needs --map");
    return hom_image(h, parse_hom_map(read_text_file(*cmd.map_file)));
  }
  if (op == "intersect") {
    if (!cmd.dfa_file) bad_argument("op 'intersect' needs --dfa");
    return intersect_regular(h, parse_dfa(read_text_file(*cmd.dfa_file)));
  }
  if (op == "union") {
    if (!cmd.with_file) bad_argument("op 'union' needs --with");
    return union_systems(h, as_lsystem(load(*cmd.with_file), op));
  }
  bad_argument("unknown op '" + op + "'");
}

EnumerationResult enumerate_file(const ParsedFile& f, const Caps& c) {
  if (const auto* h = std::get_if<LSystem>(&f)) return enumerate(*h, {c.len, c.form, std::nullopt});
  if (const auto* g = std::get_if<IndexedGrammar>(&f)) return enumerate_indexed(*g, {c.len, c.form, c.flags});
  bad_argument("cannot enumerate a DFA");
}

struct Stable {
  WordSet words;
  bool stable;
};

/// Enumerates at `c` and at `c` with form (and flag) caps raised by 2.
Stable enumerate_stable(const ParsedFile& f, const Caps& c) {
  WordSet first = enumerate_file(f, c).words;
  WordSet second = enumerate_file(f, {c.len, c.form + 2, c.flags + 2}).words;
  const bool stable = first == second;
  return {std::move(first), stable};
}

void emit(const CommandSpec& cmd, CommandResult& r, const std::string& text) {
  if (!cmd.output) {
    r.out += text;
    return;
  }
  std::ofstream out(*cmd.output, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::IoError, "cannot write '" + *cmd.output + "'");
}

std::string stats_text(const ParsedFile& f) {
  std::ostringstream out;
  if (const auto* h = std::get_if<LSystem>(&f)) {
    out << "kind: " << (h->kind == SystemKind::EDT0L ? "edt0l" : "etol") << '\n'
        << "symbols: " << h->alphabet.size() << '\n'
        << "terminals: " << h->terminals.size() << '\n'
        << "nonterminals: " << h->nonterminals().size() << '\n'
        << "axioms: " << h->axioms.size() << '\n'
        << "tables: " << h->tables.size() << '\n'
        << "rules: " << h->rule_count() << '\n'
        << "max-rhs: " << h->max_rhs_length() << '\n';
  } else if (const auto* g = std::get_if<IndexedGrammar>(&f)) {
    out << "kind: indexed\n"
        << "terminals: " << g->terminals.size() << '\n'
        << "nonterminals: " << g->nonterminals.size() << '\n'
        << "flags: " << g->flags.size() << '\n'
        << "productions: " << g->productions.size() << '\n'
        << "normal-form: " << (g->normal_form ? "yes" : "no") << '\n';
  } else {
    const Dfa& d = std::get<Dfa>(f);
    out << "kind: dfa\n"
        << "states: " << d.state_count() << '\n'
        << "alphabet: " << d.alphabet.size() << '\n'
        << "accepting: " << d.accepting.size() << '\n'
        << "complete: " << (d.is_complete() ? "yes" : "no") << '\n';
  }
  return out.str();
}

std::string witness_dot(const LSystem& h, const Witness& w) {
  std::ostringstream out;
  auto quoted = [](const Word& f) {
    std::string s;
    for (char c : f.empty() ? std::string("()") : format_word(f)) {
      if (c == '"' || c == '\\') s += '\\';
      s += c;
    }
    return s;
  };
  out << "digraph derivation {\n  node [shape=box];\n";
  out << "  n0 [label=\"" << quoted(w.axiom) << "\"];\n";
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    out << "  n" << i + 1 << " [label=\"" << quoted(w.steps[i].form) << "\"];\n";
    out << "  n" << i << " -> n" << i + 1 << " [label=\"" << h.tables[w.steps[i].table_index].name << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

CommandResult difftest(const CommandSpec& cmd, const ParsedFile& in, std::ostream& log) {
  CommandResult r;
  const Caps c = caps_of(cmd);
  const ParsedFile built = transform(cmd, in, log);
  const Stable got = enumerate_stable(built, c);

  // Base words needed to cover every oracle image of length <= c.len.
  Caps base_caps = c;
  WordSet oracle;
  bool base_stable = true;
  auto base = [&](const ParsedFile& f) {
    Stable s = enumerate_stable(f, base_caps);
    base_stable = base_stable && s.stable;
    return s.words;
  };
  const std::string& op = cmd.op;
  if (op == "insert-hash") {
    oracle = set_closure(base(in), OracleOp::insert_hash(hash_for(cmd, std::get<LSystem>(in))));
  } else if (op == "insert-hashes") {
    oracle = set_closure(base(in), OracleOp::insert_hashes(hashes_for(cmd, std::get<LSystem>(in))));
  } else if (op == "annotate-ab" || op == "normal-form") {
    oracle = base(in);
  } else if (op == "move-right") {
    oracle = set_closure(base(in), OracleOp::pi(symbol_arg(cmd.a, "--a"), symbol_arg(cmd.b, "--b")));
  } else if (op == "ck") {
    oracle = set_closure(base(in), OracleOp::ck(k_arg(cmd)));
  } else if (op == "cyc" || op == "cyc-indexed") {
    oracle = set_closure(base(in), OracleOp::rotations());
  } else if (op == "hom") {
    const Homomorphism hom = parse_hom_map(read_text_file(*cmd.map_file));
    if (hom.is_erasing()) base_caps = {2 * c.len, 2 * c.len + (c.form - c.len), c.flags};
    oracle = set_closure(base(in), OracleOp::homomorphism(hom));
  } else if (op == "intersect") {
    const LSystem& h = std::get<LSystem>(in);
    const Dfa d = extend_to_alphabet(parse_dfa(read_text_file(*cmd.dfa_file)), h.terminals);
    for (const Word& w : base(in))
      if (dfa_accepts(d, w)) oracle.insert(w);
  } else if (op == "union") {
    oracle = base(in);
    oracle.merge(base(load(*cmd.with_file)));
  } else {
    bad_argument("no oracle for op '" + op + "'");
  }
  oracle = truncate(oracle, c.len);

  DiffReport report = diff(got.words, oracle);
  report.caps_used = c.text();
  report.stabilized = got.stable && base_stable;
  r.out = "op: " + op + "\nconstruction: " + std::to_string(got.words.size()) + " words\noracle: " +
          std::to_string(oracle.size()) + " words\n" + report.to_text();
  if (!report.stabilized) {
    r.err = "unstabilized: word sets changed when max-form was raised by 2\n";
    r.exit_code = 3;
  } else {
    r.exit_code = report.equal ? 0 : 1;
  }
  return r;
}

CommandResult dispatch(const CommandSpec& cmd, std::ostream& log) {
  CommandResult r;
  if (cmd.inputs.empty()) bad_argument("missing input file");
  const ParsedFile in = load(cmd.inputs.front());
  const std::string& sub = cmd.subcommand;

  if (sub == "validate") {
    if (const auto* h = std::get_if<LSystem>(&in)) {
      const auto rep = validate(*h);
      r.out = rep.to_text();
      r.exit_code = rep.ok() ? 0 : 1;
    } else if (const auto* g = std::get_if<IndexedGrammar>(&in)) {
      const auto rep = validate_indexed(*g);
      r.out = rep.to_text();
      r.exit_code = rep.ok() ? 0 : 1;
    } else {
      const bool ok = std::get<Dfa>(in).is_complete();
      r.out = ok ? "valid\n" : "error [incomplete] transition function is not total\n";
      r.exit_code = ok ? 0 : 1;
    }
  } else if (sub == "enumerate") {
    const Caps c = caps_of(cmd);
    const EnumerationResult res = enumerate_file(in, c);
    emit(cmd, r, serialize(res.words));
    if (res.truncated) r.err = "truncated: some forms exceeded the caps (" + c.text() + ")\n";
  } else if (sub == "transform") {
    emit(cmd, r, serialize(transform(cmd, in, log)));
  } else if (sub == "difftest") {
    return difftest(cmd, in, log);
  } else if (sub == "stats") {
    emit(cmd, r, stats_text(in));
  } else if (sub == "trace") {
    if (!cmd.word) bad_argument("trace needs --word");
    const Word w = parse_word(*cmd.word);
    const Caps c = caps_of(cmd);
    if (const auto* g = std::get_if<IndexedGrammar>(&in)) {
      auto d = find_indexed_derivation(*g, w, {c.len, c.form, c.flags});
      if (!d) {
        r.err = "no derivation of '" + *cmd.word + "' within the caps\n";
        r.exit_code = 1;
        return r;
      }
      emit(cmd, r, export_parse_trace(*g, *d, cmd.skeleton));
    } else {
      const LSystem& h = as_lsystem(in, "trace");
      auto wit = find_witness(h, w, {c.len, c.form, std::nullopt});
      if (!wit) {
        r.err = "no derivation of '" + *cmd.word + "' within the caps\n";
        r.exit_code = 1;
        return r;
      }
      emit(cmd, r, witness_dot(h, *wit));
    }
  } else {
    bad_argument("unknown subcommand '" + sub + "'");
  }
  return r;
}

}  // namespace

CommandResult run(const CommandSpec& cmd) {
  // Stage reports go straight to stderr so long constructions show progress.
  std::ostream& log = std::clog;
  try {
    return dispatch(cmd, log);
  } catch (const Error& e) {
    return {2, "", "error: " + std::string(to_string(e.code())) + ": " + e.what() + "\n"};
  }
}

}  // namespace permgram
