#include "doctest.h"
#include "permgram/lsystem.hpp"
#include "support.hpp"

using namespace permgram;
using namespace permgram::test;

namespace {

WordSet anbn_upto(std::size_t n) {
  WordSet out;
  for (std::size_t i = 0; 2 * i <= n; ++i) {
    Word x(i, sym("a"));
    x.insert(x.end(), i, sym("b"));
    out.insert(x);
  }
  return out;
}

}  // namespace

TEST_CASE("tables keep sorted unique rules and default to identity") {
  Table t;
  t.add(sym("S"), w("b"));
  t.add(sym("S"), w("a"));
  t.add(sym("S"), w("a"));
  CHECK(t.rules.at(sym("S")).size() == 2);
  CHECK(t.rules_for(sym("S")) == t.rules.at(sym("S")));
  CHECK(t.rules_for(sym("x")) == std::vector<Word>{w("x")});
  CHECK_FALSE(t.has_rules_for(sym("x")));
  CHECK(t.rule_count() == 2);
}

TEST_CASE("fixtures validate") {
  for (const char* name : {"ab.etol", "anbn.etol", "anbncn.edtol", "double.edtol", "acb.etol", "wrapped_anbn.etol"}) {
    CAPTURE(name);
    CHECK(validate(load_lsystem(name)).ok());
  }
}

TEST_CASE("validation flags alphabet and determinism problems") {
  LSystem h = load_lsystem("anbn.etol");
  CHECK(validate(h).ok());
  h.kind = SystemKind::EDT0L;
  CHECK(validate(h).has("determinism"));

  LSystem g = load_lsystem("ab.etol");
  g.tables[0].add(sym("S"), w("z"));
  CHECK(validate(g).has("alphabet"));

  LSystem u = load_lsystem("ab.etol");
  u.alphabet.insert(sym("U"));
  const ValidationReport r = validate(u);
  CHECK(r.ok());
  CHECK(r.has("unreachable"));
}

TEST_CASE("a step rewrites every position in parallel") {
  const LSystem h = load_lsystem("anbn.etol");
  CHECK(step(h, w("S"), 0) == std::set<Word>{w("a S b"), w("()")});
  CHECK(step(h, w("a S b"), 0) == std::set<Word>{w("a a S b b"), w("a b")});
  const LSystem d = load_lsystem("double.edtol");
  CHECK(step(d, w("a a"), 0) == std::set<Word>{w("a a a a")});
  CHECK_THROWS_AS(step(h, w("S"), 3), Error);
}

TEST_CASE("enumeration of anbn") {
  const LSystem h = load_lsystem("anbn.etol");
  const EnumerationResult r = enumerate(h, {8, 10, std::nullopt});
  CHECK(r.words == anbn_upto(8));
  CHECK_FALSE(r.truncated);
  CHECK(r.explored > 0);
}

TEST_CASE("enumeration of EDT0L fixtures") {
  CHECK(enumerate(load_lsystem("anbncn.edtol"), {9, 12, std::nullopt}).words ==
        words({"()", "a b c", "a a b b c c", "a a a b b b c c c"}));
  CHECK(enumerate(load_lsystem("double.edtol"), {8, 8, std::nullopt}).words ==
        words({"a", "a a", "a a a a", "a a a a a a a a"}));
}

TEST_CASE("truncated reports live forms cut by the form cap") {
  LSystem h = load_lsystem("ab.etol");
  h.tables[0].rules.clear();
  h.alphabet.insert(sym("X"));
  h.tables[0].add(sym("S"), w("a X X X"));
  h.tables[0].add(sym("S"), w("b"));
  h.tables[0].add(sym("X"), {});
  const EnumerationResult r = enumerate(h, {1, 3, std::nullopt});
  CHECK(r.words == words({"b"}));
  CHECK(r.truncated);
}

TEST_CASE("step cap bounds derivation length") {
  const LSystem h = load_lsystem("anbn.etol");
  CHECK(enumerate(h, {8, 8, 2}).words == words({"()", "a b"}));
}

TEST_CASE("caps are checked") {
  const LSystem h = load_lsystem("ab.etol");
  try {
    enumerate(h, {8, 4, std::nullopt});
    FAIL("expected CapsInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapsInvalid);
  }
}

TEST_CASE("witnesses replay through step") {
  const LSystem h = load_lsystem("anbn.etol");
  const auto wit = find_witness(h, w("a a b b"), {8, 10, std::nullopt});
  REQUIRE(wit);
  Word cur = wit->axiom;
  for (const WitnessStep& s : wit->steps) {
    CHECK(step(h, cur, s.table_index).contains(s.form));
    cur = s.form;
  }
  CHECK(cur == w("a a b b"));
  CHECK_FALSE(find_witness(h, w("a b b"), {8, 10, std::nullopt}));
}

TEST_CASE("bounded membership") {
  const LSystem h = load_lsystem("anbn.etol");
  CHECK(contains_bounded(h, w("a a a b b b"), {8, 10, std::nullopt}) == Membership::Yes);
  CHECK(contains_bounded(h, w("b a"), {8, 10, std::nullopt}) == Membership::NoWithinCaps);
}
