#include "doctest.h"
#include "permgram/core.hpp"
#include "support.hpp"

using namespace permgram;
using namespace permgram::test;

TEST_CASE("symbols intern by name") {
  CHECK(Symbol("a") == Symbol("a"));
  CHECK(Symbol("a") != Symbol("b"));
  CHECK(Symbol("a").id() == Symbol("a").id());
  CHECK(Symbol::from_id(Symbol("xy").id()).name() == "xy");
}

TEST_CASE("symbol names exclude format tokens") {
  CHECK(is_valid_symbol_name("a"));
  CHECK(is_valid_symbol_name("#0"));
  CHECK(is_valid_symbol_name("^A"));
  CHECK_FALSE(is_valid_symbol_name(""));
  CHECK_FALSE(is_valid_symbol_name("->"));
  CHECK_FALSE(is_valid_symbol_name("()"));
  CHECK_FALSE(is_valid_symbol_name("#"));
  CHECK_FALSE(is_valid_symbol_name("@table"));
  CHECK_FALSE(is_valid_symbol_name("a b"));
}

TEST_CASE("words parse and format") {
  CHECK(parse_word("a  b\tc").size() == 3);
  CHECK(parse_word("()").empty());
  CHECK(parse_word("").empty());
  CHECK(format_word({}) == "()");
  CHECK(format_word(w("a bb c")) == "a bb c");
  CHECK(parse_word(format_word(w("x y"))) == w("x y"));
}

TEST_CASE("canonical order is length then name") {
  CanonicalLess less;
  CHECK(less(w("z"), w("a a")));
  CHECK(less(w("a b"), w("b a")));
  CHECK_FALSE(less(w("a"), w("a")));
  const WordSet ws = words({"b", "a a", "()", "a"});
  CHECK(format_word(*ws.begin()) == "()");
  CHECK(format_word(*std::next(ws.begin())) == "a");
  CHECK(format_word(*ws.rbegin()) == "a a");
}

TEST_CASE("fresh symbols avoid the used set") {
  SymbolSet used{sym("p"), sym("p_1")};
  CHECK(fresh_symbol("q", used) == sym("q"));
  CHECK(fresh_symbol("p", used) == sym("p_2"));
  CHECK(take_fresh("p", used) == sym("p_2"));
  CHECK(take_fresh("p", used) == sym("p_3"));
  CHECK(used.size() == 4);
}

TEST_CASE("homomorphisms apply letter by letter") {
  Homomorphism h;
  h.images[sym("a")] = w("x x");
  h.images[sym("b")] = {};
  CHECK(hom_apply(h, w("a b a")) == w("x x x x"));
  CHECK(h.is_erasing());
  CHECK(h.domain() == SymbolSet{sym("a"), sym("b")});
  CHECK(h.target_alphabet() == SymbolSet{sym("x")});
  const Homomorphism id = Homomorphism::identity({sym("a")});
  CHECK(hom_apply(id, w("a a")) == w("a a"));
  CHECK_FALSE(id.is_erasing());
}

TEST_CASE("parikh vectors count letters") {
  const ParikhVector p = parikh(w("a b a"));
  CHECK(p.at(sym("a")) == 2);
  CHECK(p.at(sym("b")) == 1);
  CHECK(parikh(w("a")) + parikh(w("b a")) == p);
  CHECK(parikh({}).empty());
  CHECK(concat(w("a"), w("b a")) == w("a b a"));
}

TEST_CASE("errors carry their code") {
  const Error e(ErrorCode::CapsInvalid, "bad caps");
  CHECK(e.code() == ErrorCode::CapsInvalid);
  CHECK(std::string(e.what()) == "bad caps");
  CHECK(to_string(ErrorCode::NotAbWord) != to_string(ErrorCode::NotAbLanguage));
}
