#include <algorithm>

#include "doctest.h"
#include "permgram/closures.hpp"
#include "permgram/io.hpp"
#include "permgram/oracle.hpp"
#include "support.hpp"

using namespace permgram;
using namespace permgram::test;

namespace {

/// Enumeration that must not change when the form cap grows by 2.
WordSet stable_words(const LSystem& h, std::size_t len, std::size_t form) {
  const WordSet first = enumerate(h, {len, form, std::nullopt}).words;
  REQUIRE(enumerate(h, {len, form + 2, std::nullopt}).words == first);
  return first;
}

WordSet base_words(const char* name, std::size_t len) { return stable_words(load_lsystem(name), len, len + 4); }

const Symbol a = sym("a");
const Symbol b = sym("b");

}  // namespace

TEST_CASE("reduce drops dead and unreachable symbols") {
  LSystem h = load_lsystem("ab.etol");
  h.alphabet.insert({sym("U"), sym("D")});
  h.tables[0].add(sym("U"), w("a"));
  h.tables[0].add(sym("S"), w("D"));
  const LSystem r = reduce(h);
  CHECK_FALSE(r.alphabet.contains(sym("U")));
  CHECK_FALSE(r.alphabet.contains(sym("D")));
  CHECK(enumerate(r, {6, 8, std::nullopt}).words == words({"a b"}));
}

TEST_CASE("wrapping axioms keeps the language") {
  const LSystem h = load_lsystem("anbncn.edtol");
  const LSystem wrapped = wrap_axioms(h);
  for (const Word& x : wrapped.axioms) CHECK(x.size() == 1);
  CHECK(wrapped.kind == SystemKind::EDT0L);
  CHECK(validate(wrapped).ok());
  CHECK(stable_words(wrapped, 9, 13) == base_words("anbncn.edtol", 9));
}

TEST_CASE("disjoint renaming moves nonterminals only") {
  const LSystem h = load_lsystem("anbn.etol");
  const auto [renamed, map] = disjoint_rename(h, {sym("S")});
  CHECK_FALSE(renamed.alphabet.contains(sym("S")));
  CHECK(renamed.terminals == h.terminals);
  CHECK(map.images.at(sym("S")) != w("S"));
  CHECK(stable_words(renamed, 8, 10) == base_words("anbn.etol", 8));
  try {
    disjoint_rename(h, {a});
    FAIL("expected TerminalClash");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TerminalClash);
  }
}

TEST_CASE("union of systems") {
  const LSystem u = union_systems(load_lsystem("ab.etol"), load_lsystem("acb.etol"));
  CHECK(validate(u).ok());
  CHECK(stable_words(u, 8, 10) == words({"a b", "a c b"}));
  const LSystem v = union_systems(load_lsystem("anbn.etol"), load_lsystem("anbncn.edtol"));
  WordSet expect = base_words("anbn.etol", 8);
  expect.merge(base_words("anbncn.edtol", 8));
  CHECK(stable_words(v, 8, 12) == expect);
}

TEST_CASE("homomorphic image") {
  Homomorphism hom;
  hom.images[a] = w("x x");
  hom.images[b] = {};
  const LSystem img = hom_image(load_lsystem("anbn.etol"), hom);
  CHECK(stable_words(img, 8, 12) == words({"()", "x x", "x x x x", "x x x x x x", "x x x x x x x x"}));
  hom.images.erase(b);
  CHECK_THROWS_AS(hom_image(load_lsystem("anbn.etol"), hom), Error);
}

TEST_CASE("intersection with a regular language") {
  const Dfa even = parse_dfa(R"(@dfa
@alphabet a b
@states e o
@start e
@accept e
e a o
e b e
o a e
o b o
)");
  const LSystem h = intersect_regular(load_lsystem("anbn.etol"), even);
  CHECK(validate(h).ok());
  CHECK(stable_words(h, 8, 12) == words({"()", "a a b b", "a a a a b b b b"}));

  Dfa even_c = even;
  even_c.alphabet.insert(sym("c"));
  for (std::size_t q = 0; q < even_c.state_count(); ++q) even_c.delta[q][sym("c")] = q;
  CHECK(enumerate(intersect_regular(load_lsystem("anbncn.edtol"), extend_to_alphabet(even, {sym("c")})),
                  {9, 13, std::nullopt})
            .words == words({"()"}));
  const LSystem d = intersect_regular(load_lsystem("anbncn.edtol"), even_c);
  CHECK(d.kind == SystemKind::EDT0L);
  CHECK(validate(d).ok());
  CHECK(stable_words(d, 9, 13) == words({"()", "a a b b c c"}));
}

TEST_CASE("one hash insertion") {
  const Symbol hash = sym("#h");
  for (const char* name : {"ab.etol", "anbn.etol", "double.edtol"}) {
    CAPTURE(name);
    const LSystem h = load_lsystem(name);
    const LSystem out = insert_one_hash(h, hash);
    CHECK(out.kind == h.kind);
    CHECK(validate(out).ok());
    const WordSet expect = truncate(set_closure(base_words(name, 8), OracleOp::insert_hash(hash)), 8);
    CHECK(stable_words(out, 8, 12) == expect);
  }
  try {
    insert_one_hash(load_lsystem("ab.etol"), a);
    FAIL("expected HashInAlphabet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HashInAlphabet);
  }
}

TEST_CASE("ordered hash insertion") {
  const LSystem h = load_lsystem("anbn.etol");
  const std::vector<Symbol> hs = make_hashes(2, h.alphabet);
  REQUIRE(hs.size() == 3);
  const LSystem out = insert_hashes(h, hs);
  CHECK(validate(out).ok());
  const WordSet expect = truncate(set_closure(base_words("anbn.etol", 8), OracleOp::insert_hashes(hs)), 8);
  CHECK(stable_words(out, 8, 12) == expect);
  CHECK_THROWS_AS(insert_hashes(h, {hs[0], hs[0]}), Error);
}

TEST_CASE("make hashes avoids the alphabet") {
  const std::vector<Symbol> hs = make_hashes(2, {sym("#0")});
  CHECK(hs.size() == 3);
  CHECK(std::find(hs.begin(), hs.end(), sym("#0")) == hs.end());
}

TEST_CASE("annotation keeps the language and the morphism") {
  for (const char* name : {"acb.etol", "wrapped_anbn.etol"}) {
    CAPTURE(name);
    const AnnotatedSystem ann = annotate_ab(load_lsystem(name), a, b, AbCheck{});
    CHECK(validate(ann.system).ok());
    CHECK(phi_violations(ann.system, ann.phi).empty());
    CHECK(stable_words(ann.system, 8, 12) == base_words(name, 8));
  }
}

TEST_CASE("annotation rejects languages that are not (a,b)-languages") {
  try {
    annotate_ab(load_lsystem("anbn.etol"), a, b, AbCheck{});
    FAIL("expected NotAbLanguage");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAbLanguage);
  }
  CHECK_THROWS_AS(annotate_ab(load_lsystem("ab.etol"), a, a), Error);
}

TEST_CASE("phi violations are found") {
  AnnotatedSystem ann = annotate_ab(load_lsystem("acb.etol"), a, b);
  ann.system.tables[0].add(*ann.system.axioms.begin()->begin(), w("a"));
  CHECK_FALSE(phi_violations(ann.system, ann.phi).empty());
}

TEST_CASE("move right pumping counterexample regression") {
  const LSystem guarded = move_right(load_lsystem("acb.etol"), a, b);
  const WordSet got = stable_words(guarded, 12, 16);
  CHECK(got == words({"a b c"}));
  for (const Word& x : got) CHECK(std::count(x.begin(), x.end(), sym("c")) == 1);

  MoveRightOptions off;
  off.phase_guard = false;
  const WordSet loose = enumerate(move_right(load_lsystem("acb.etol"), a, b, off), {12, 16, std::nullopt}).words;
  CHECK(loose.contains(w("a b c c")));
}

TEST_CASE("move right on an infinite (a,b)-language") {
  const LSystem h = load_lsystem("wrapped_anbn.etol");
  const LSystem out = move_right(h, a, b);
  CHECK(validate(out).ok());
  const WordSet expect = truncate(set_closure(base_words("wrapped_anbn.etol", 10), OracleOp::pi(a, b)), 10);
  CHECK(stable_words(out, 10, 16) == expect);
}

TEST_CASE("marked move system places the factor between p and q") {
  const AnnotatedSystem ann = annotate_ab(load_lsystem("acb.etol"), a, b);
  const MarkedMoveSystem m = marked_move_system(ann);
  CHECK(m.system.terminals.contains(m.p));
  CHECK(m.system.terminals.contains(m.q));
  const Word expect{a, b, m.p, sym("c"), m.q};
  CHECK(stable_words(m.system, 8, 14) == WordSet{expect});
}

TEST_CASE("ck with k = 1 reproduces the language") {
  CHECK(stable_words(ck(load_lsystem("anbn.etol"), 1), 8, 16) == base_words("anbn.etol", 8));
  CHECK_THROWS_AS(ck(load_lsystem("anbn.etol"), 0), Error);
}

TEST_CASE("cyclic closure of small fixtures") {
  for (const char* name : {"ab.etol", "double.edtol"}) {
    CAPTURE(name);
    const LSystem h = load_lsystem(name);
    const LSystem out = cyc_etol(h);
    CHECK(out.kind == h.kind);
    CHECK(validate(out).ok());
    const WordSet expect = truncate(set_closure(base_words(name, 8), OracleOp::rotations()), 8);
    CHECK(stable_words(out, 8, 16) == expect);
  }
}

TEST_CASE("ck with k = 2 on anbn") {
  const LSystem out = ck(load_lsystem("anbn.etol"), 2);
  const WordSet expect = truncate(set_closure(base_words("anbn.etol", 8), OracleOp::ck(2)), 8);
  CHECK(stable_words(out, 8, 16) == expect);
}
