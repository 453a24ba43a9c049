#include "doctest.h"
#include "permgram/io.hpp"
#include "permgram/regular.hpp"
#include "support.hpp"

using namespace permgram;
using namespace permgram::test;

namespace {

// Words over {a, b} with an even number of a.
const char* kEvenA = R"(@dfa
@alphabet a b
@states even odd
@start even
@accept even
even a odd
even b even
odd a even
odd b odd
)";

}  // namespace

TEST_CASE("dfa acceptance") {
  const Dfa d = parse_dfa(kEvenA);
  CHECK(d.is_complete());
  CHECK(d.state_count() == 2);
  CHECK(d.state_index("odd") == 1);
  CHECK(dfa_accepts(d, w("()")));
  CHECK(dfa_accepts(d, w("a b a")));
  CHECK_FALSE(dfa_accepts(d, w("a b b")));
}

TEST_CASE("incomplete and foreign input is rejected") {
  Dfa d = parse_dfa(kEvenA);
  d.delta[1].erase(sym("b"));
  CHECK_FALSE(d.is_complete());
  CHECK_THROWS_AS(check_complete(d), Error);
  const Dfa full = parse_dfa(kEvenA);
  CHECK_THROWS_AS(full.next(0, sym("z")), Error);
  CHECK_THROWS_AS(full.state_index("nowhere"), Error);
}

TEST_CASE("hash order dfa accepts hashes in order with base words between") {
  const std::vector<Symbol> hs{sym("#0"), sym("#1"), sym("#2")};
  const Dfa d = hash_order_dfa(hs, {sym("a"), sym("b")});
  CHECK(d.is_complete());
  CHECK(dfa_accepts(d, w("#0 #1 #2")));
  CHECK_FALSE(dfa_accepts(d, w("#0 a b #1 b #2 a")));
  CHECK(dfa_accepts(d, w("#0 a b #1 b #2")));
  CHECK_FALSE(dfa_accepts(d, w("#0 #2 #1")));
  CHECK_FALSE(dfa_accepts(d, w("#0 #1 #1 #2")));
  CHECK_FALSE(dfa_accepts(d, w("a #0 #1 #2")));
}

TEST_CASE("hash order dfa rejects overlapping hashes") {
  try {
    hash_order_dfa({sym("a"), sym("#1")}, {sym("a")});
    FAIL("expected OverlappingAlphabets");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlappingAlphabets);
  }
  CHECK_THROWS_AS(hash_order_dfa({sym("#0"), sym("#0")}, {sym("a")}), Error);
}

TEST_CASE("extending the alphabet routes new symbols to a sink") {
  const Dfa d = extend_to_alphabet(parse_dfa(kEvenA), {sym("c")});
  CHECK(d.is_complete());
  CHECK(d.alphabet.contains(sym("c")));
  CHECK(dfa_accepts(d, w("a a")));
  CHECK_FALSE(dfa_accepts(d, w("c")));
  CHECK_FALSE(dfa_accepts(d, w("a a c b")));
  CHECK(extend_to_alphabet(parse_dfa(kEvenA), {sym("a")}) == parse_dfa(kEvenA));
}
