#include <string>

#include "doctest.h"
#include "permgram/io.hpp"
#include "support.hpp"

using namespace permgram;
using namespace permgram::test;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_system_file(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse succeeded");
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::string& text) {
  try {
    parse_system_file(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("every fixture round-trips") {
  for (const char* name : {"ab.etol", "anbn.etol", "anbncn.edtol", "double.edtol", "acb.etol", "wrapped_anbn.etol",
                           "ab.idx", "anbncn.idx"}) {
    CAPTURE(name);
    const ParsedFile f = load(name);
    const std::string text = serialize(f);
    const ParsedFile again = parse_system_file(text);
    CHECK(again == f);
    CHECK(serialize(again) == text);
  }
}

TEST_CASE("l-system parsing") {
  const LSystem h = parse_lsystem(R"(@etol
@terminals a
@nonterminals S T
@axioms S ; () ; S T   # three axioms
@table grow up
S -> S a
T ->
)");
  CHECK(h.kind == SystemKind::ET0L);
  CHECK(h.axioms.size() == 3);
  CHECK(h.axioms.contains(Word{}));
  CHECK(h.tables.at(0).name == "grow up");
  CHECK(h.tables[0].rules.at(sym("T")) == std::vector<Word>{Word{}});
  CHECK(h.alphabet == SymbolSet{sym("a"), sym("S"), sym("T")});
}

TEST_CASE("indexed parsing reads push and pop") {
  const IndexedGrammar g = load_indexed("anbncn.idx");
  CHECK(g.start == sym("S"));
  CHECK(g.productions.at(0).kind == ProductionKind::Push);
  CHECK(g.productions.at(0).flag == sym("g"));
  CHECK(g.productions.at(3).kind == ProductionKind::Pop);
  CHECK(g.productions.at(2).kind == ProductionKind::Plain);
  CHECK_FALSE(g.normal_form);
}

TEST_CASE("dfa, word list and map formats") {
  const Dfa d = parse_dfa("@dfa\n@alphabet x\n@states q\n@start q\n@accept q\nq x q\n");
  CHECK(d.is_complete());
  CHECK(parse_dfa(serialize(d)) == d);
  const WordSet ws = parse_word_list("a b\n()\n\nb\n");
  CHECK(ws == words({"()", "b", "a b"}));
  CHECK(serialize(ws) == "()\nb\na b\n");
  const Homomorphism h = parse_hom_map("a -> x y\nb ->\n");
  CHECK(h.images.at(sym("a")) == w("x y"));
  CHECK(h.images.at(sym("b")).empty());
  CHECK_THROWS_AS(parse_hom_map("a -> x\na -> y\n"), Error);
}

TEST_CASE("syntax errors report line and column") {
  CHECK(code_of("") == ErrorCode::SyntaxError);
  CHECK(code_of("@etol\n@terminals a\n") == ErrorCode::SyntaxError);
  CHECK(code_of("@nonsense\n") == ErrorCode::SyntaxError);
  const std::string bad = "@etol\n@terminals a\n@axioms a\n@table t\n  a b -> a\n";
  CHECK(code_of(bad) == ErrorCode::SyntaxError);
  CHECK(message_of(bad).find("line 5, column 3") != std::string::npos);
  CHECK(code_of("@etol\n@axioms a\na -> a\n") == ErrorCode::SyntaxError);
  CHECK(code_of("@etol\n@axioms a\n@bogus\n") == ErrorCode::SyntaxError);
}

TEST_CASE("semantic errors") {
  CHECK(code_of("@etol\n@terminals a\n@nonterminals a\n@axioms a\n") == ErrorCode::SemanticError);
  CHECK(code_of("@dfa\n@alphabet x\n@states q\n@start r\n@accept q\nq x q\n") == ErrorCode::SemanticError);
}

TEST_CASE("missing files raise io errors") {
  try {
    read_text_file(fixture("does-not-exist.etol"));
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
