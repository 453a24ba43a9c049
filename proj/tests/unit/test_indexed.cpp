#include <algorithm>

#include "doctest.h"
#include "permgram/indexed.hpp"
#include "permgram/oracle.hpp"
#include "support.hpp"

using namespace permgram;
using namespace permgram::test;

namespace {

WordSet stable_words(const IndexedGrammar& g, std::size_t len, std::size_t form, std::size_t flags) {
  const WordSet first = enumerate_indexed(g, {len, form, flags}).words;
  REQUIRE(enumerate_indexed(g, {len, form + 2, flags + 2}).words == first);
  return first;
}

IndexedForm start_form(const IndexedGrammar& g) { return {{g.start, {}, false}}; }

}  // namespace

TEST_CASE("indexed fixtures validate") {
  for (const char* name : {"ab.idx", "anbncn.idx"}) {
    CAPTURE(name);
    CHECK(validate_indexed(load_indexed(name)).ok());
  }
}

TEST_CASE("indexed validation kinds") {
  IndexedGrammar g = load_indexed("anbncn.idx");
  g.terminals.insert(sym("f"));
  CHECK(validate_indexed(g).has("disjointness"));

  g = load_indexed("anbncn.idx");
  g.productions.push_back(plain_production(sym("S"), w("z")));
  CHECK(validate_indexed(g).has("unknown"));

  g = load_indexed("anbncn.idx");
  g.productions.push_back({ProductionKind::Push, sym("S"), sym("f"), w("A B")});
  CHECK(validate_indexed(g).has("shape"));

  g = load_indexed("anbncn.idx");
  g.normal_form = true;
  CHECK(validate_indexed(g).has("normal-form"));
}

TEST_CASE("productions push pop and copy flags") {
  const IndexedGrammar g = load_indexed("anbncn.idx");
  const IndexedForm f0 = start_form(g);
  const auto f1 = apply_production(g, f0, 0, 0);
  REQUIRE(f1);
  CHECK(format_form(*f1) == "T[g]");
  const auto f2 = apply_production(g, *f1, 0, 1);
  REQUIRE(f2);
  CHECK(format_form(*f2) == "T[f,g]");
  const auto f3 = apply_production(g, *f2, 0, 2);
  REQUIRE(f3);
  CHECK(format_form(*f3) == "A[f,g] B[f,g] C[f,g]");
  CHECK_FALSE(apply_production(g, *f3, 0, 4));  // A[g] does not match top f
  const auto f4 = apply_production(g, *f3, 0, 3);
  REQUIRE(f4);
  CHECK(format_form(*f4) == "a A[g] B[f,g] C[f,g]");
  CHECK_FALSE(apply_production(g, *f4, 0, 3));  // terminal
  CHECK(step_indexed(g, *f3).size() == 3);
  CHECK(format_form({}) == "()");
}

TEST_CASE("indexed enumeration of the fixtures") {
  CHECK(stable_words(load_indexed("anbncn.idx"), 9, 12, 6) ==
        words({"a b c", "a a b b c c", "a a a b b b c c c"}));
  CHECK(stable_words(load_indexed("ab.idx"), 9, 12, 6) == words({"a b"}));
}

TEST_CASE("indexed caps are checked") {
  CHECK_THROWS_AS(enumerate_indexed(load_indexed("ab.idx"), {8, 4, 2}), Error);
}

TEST_CASE("normal form keeps the language") {
  for (const char* name : {"ab.idx", "anbncn.idx"}) {
    CAPTURE(name);
    const IndexedGrammar g = load_indexed(name);
    const IndexedGrammar nf = to_normal_form(g);
    CHECK(nf.normal_form);
    CHECK(validate_indexed(nf).ok());
    for (const Production& p : nf.productions) CHECK(is_normal_form_production(nf, p));
    CHECK(stable_words(nf, 9, 16, 6) == stable_words(g, 9, 12, 6));
  }
}

TEST_CASE("cyclic closure of indexed grammars") {
  const IndexedGrammar g = to_normal_form(load_indexed("anbncn.idx"));
  const CycIndexed c = cyc_indexed_parts(g);
  CHECK(validate_indexed(c.grammar).ok());
  CHECK(c.grammar.flags.contains(c.dollar));
  const WordSet expect = set_closure(stable_words(g, 9, 16, 6), OracleOp::rotations());
  std::size_t visited = 0;
  std::size_t bad = 0;
  const auto visit = [&](const IndexedForm& f) {
    ++visited;
    std::size_t hats = 0;
    for (const Atom& x : f) {
      if (c.hats.contains(x.symbol)) ++hats;
      const auto n = std::count(x.flags.begin(), x.flags.end(), c.dollar);
      if (n > 1 || (n == 1 && x.flags.back() != c.dollar)) ++bad;
    }
    if (hats > 1) ++bad;
  };
  const WordSet got = enumerate_indexed(c.grammar, {9, 14, 8}, visit).words;
  CHECK(visited > 0);
  CHECK(bad == 0);
  CHECK(got == expect);
}

TEST_CASE("cyclic closure needs normal form") {
  try {
    cyc_indexed_parts(load_indexed("anbncn.idx"));
    FAIL("expected NotNormalForm");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalForm);
  }
}

TEST_CASE("derivations export as parse trees") {
  const IndexedGrammar g = load_indexed("anbncn.idx");
  const auto d = find_indexed_derivation(g, w("a a b b c c"), {6, 8, 4});
  REQUIRE(d);
  IndexedForm f = start_form(g);
  for (const IndexedStep& s : *d) {
    auto next = apply_production(g, f, s.position, s.production);
    REQUIRE(next);
    f = *next;
  }
  CHECK(format_form(f) == "a a b b c c");
  const std::string dot = export_parse_trace(g, *d);
  CHECK(dot.rfind("digraph derivation {", 0) == 0);
  CHECK(dot.find("T[f,g]") != std::string::npos);
  const std::string skeleton = export_parse_trace(g, *d, 0);
  CHECK(skeleton.size() < dot.size());
  CHECK(skeleton.find("C[g]") == std::string::npos);
  CHECK_THROWS_AS(export_parse_trace(g, *d, 6), Error);
  CHECK_FALSE(find_indexed_derivation(g, w("a b b c"), {6, 8, 4}));
  CHECK_THROWS_AS(export_parse_trace(g, {{0, 4}}), Error);
}
