#include <algorithm>

#include "doctest.h"
#include "permgram/oracle.hpp"
#include "support.hpp"

using namespace permgram;
using namespace permgram::test;

TEST_CASE("rotations") {
  CHECK(word_rotations(w("a b c")) == words({"a b c", "b c a", "c a b"}));
  CHECK(word_rotations(w("a a")) == words({"a a"}));
  CHECK(word_rotations({}) == words({"()"}));
}

TEST_CASE("factor permutations") {
  CHECK(word_ck(w("a b c"), 1) == words({"a b c"}));
  CHECK(word_ck(w("a b c"), 2) == word_rotations(w("a b c")));
  CHECK(word_ck(w("a b c"), 3) == words({"a b c", "a c b", "b a c", "b c a", "c a b", "c b a"}));
  CHECK(word_ck(w("a b"), 5) == words({"a b", "b a"}));
  CHECK_THROWS_AS(word_ck(w("a"), 0), Error);
}

TEST_CASE("factor permutations grow with k") {
  const Word x = w("a a b c b");
  for (int k = 1; k < 5; ++k) {
    const WordSet small = word_ck(x, k);
    const WordSet big = word_ck(x, k + 1);
    for (const Word& y : small) CHECK(big.contains(y));
    for (const Word& y : big) CHECK(parikh(y) == parikh(x));
  }
}

TEST_CASE("moving the factor between a and b") {
  const Symbol a = sym("a");
  const Symbol b = sym("b");
  CHECK(word_pi(w("x a y b z"), a, b) == w("x a b z y"));
  CHECK(word_pi(w("a c b"), a, b) == w("a b c"));
  CHECK(word_pi(w("a b"), a, b) == w("a b"));
  for (const char* bad : {"b a", "a a b", "a c", "c"}) {
    CAPTURE(bad);
    try {
      word_pi(w(bad), a, b);
      FAIL("expected NotAbWord");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotAbWord);
    }
  }
}

TEST_CASE("hash insertion") {
  const std::vector<Symbol> hs{sym("#0"), sym("#1"), sym("#2")};
  CHECK(word_insert_hashes(w("a b"), hs) ==
        words({"#0 #1 a b #2", "#0 a #1 b #2", "#0 a b #1 #2"}));
  CHECK(word_insert_hashes({}, hs) == words({"#0 #1 #2"}));
  CHECK(set_closure(words({"a"}), OracleOp::insert_hash(sym("#h"))) == words({"#h a", "a #h"}));
}

TEST_CASE("set closure dispatches each operation") {
  const WordSet base = words({"a b", "a c b"});
  CHECK(set_closure(base, OracleOp::rotations()) == words({"a b", "b a", "a c b", "c b a", "b a c"}));
  CHECK(set_closure(base, OracleOp::pi(sym("a"), sym("b"))) == words({"a b", "a b c"}));
  CHECK(set_closure(base, OracleOp::ck(1)) == base);
  Homomorphism h;
  h.images[sym("a")] = w("a a");
  h.images[sym("b")] = {};
  h.images[sym("c")] = w("c");
  CHECK(set_closure(base, OracleOp::homomorphism(h)) == words({"a a", "a a c"}));
  h.images.erase(sym("c"));
  CHECK_THROWS_AS(set_closure(base, OracleOp::homomorphism(h)), Error);
}

TEST_CASE("diff reports both sides") {
  const DiffReport same = diff(words({"a"}), words({"a"}));
  CHECK(same.equal);
  const DiffReport r = diff(words({"a", "b"}), words({"b", "c"}));
  CHECK_FALSE(r.equal);
  CHECK(r.only_in_left == words({"a"}));
  CHECK(r.only_in_right == words({"c"}));
  const std::string text = r.to_text();
  CHECK(text.find("equal: no") != std::string::npos);
  CHECK(text.find("only in construction: 1") != std::string::npos);
}

TEST_CASE("truncate keeps short words") {
  CHECK(truncate(words({"a", "a a", "a a a"}), 2) == words({"a", "a a"}));
}
