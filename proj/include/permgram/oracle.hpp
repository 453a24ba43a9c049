#pragma once

#include <optional>
#include <string>
#include <vector>

#include "permgram/core.hpp"

namespace permgram {

/// {w2 w1 : w = w1 w2}.
WordSet word_rotations(const Word& w);

/// Every w_s(1) ... w_s(k) over factorizations w = w_1 ... w_k (empty factors
/// allowed) and permutations s.
WordSet word_ck(const Word& w, int k);

/// x a b z y for w = x a y b z; throws NotAbWord unless w has exactly one a
/// and one b, in that order.
Word word_pi(const Word& w, Symbol a, Symbol b);

/// Every #0 u1 #1 ... uk #k with u1 ... uk = w, k = hashes.size() - 1.
WordSet word_insert_hashes(const Word& w, const std::vector<Symbol>& hashes);

struct OracleOp {
  enum class Kind { Rotations, Ck, InsertHash, InsertHashes, Pi, Hom };
  Kind kind = Kind::Rotations;
  int k = 2;
  std::vector<Symbol> symbols;  // hash(es), or {a, b} for Pi
  Homomorphism hom;

  static OracleOp rotations();
  static OracleOp ck(int k);
  static OracleOp insert_hash(Symbol hash);
  static OracleOp insert_hashes(std::vector<Symbol> hashes);
  static OracleOp pi(Symbol a, Symbol b);
  static OracleOp homomorphism(Homomorphism h);
};

WordSet set_closure(const WordSet& ws, const OracleOp& op);

struct DiffReport {
  WordSet only_in_left;
  WordSet only_in_right;
  bool equal = true;
  std::string caps_used;
  bool stabilized = true;

  std::string to_text() const;
};

DiffReport diff(const WordSet& left, const WordSet& right);

/// Words of `ws` no longer than `n`.
WordSet truncate(const WordSet& ws, std::size_t n);

}  // namespace permgram
