#include <algorithm>

#include "internal.hpp"

namespace permgram {

LSystem insert_one_hash(const LSystem& h0, Symbol hash) {
  if (h0.alphabet.contains(hash))
    throw Error(ErrorCode::HashInAlphabet, "hash '" + hash.name() + "' already in the alphabet");
  const LSystem h = wrap_axioms(h0);

  SymbolSet used = h.alphabet;
  used.insert(hash);
  // c@# carries the single pending hash inside the subword derived from c.
  std::map<Symbol, Symbol> carrier;
  for (Symbol c : sorted_by_name(h.alphabet)) carrier.emplace(c, take_fresh(c.name() + "@" + hash.name(), used));
  const Symbol poison = detail::make_poison(used);
  const std::size_t m = h.max_rhs_length();

  auto poison_uncovered = [&](Table& t) {
    for (const auto& [_, cs] : carrier)
      if (!t.has_rules_for(cs)) t.add(cs, Word{poison});
  };

  LSystem out;
  out.kind = h.kind;
  out.terminals = h.terminals;
  out.terminals.insert(hash);
  out.alphabet = h.alphabet;
  for (const auto& [_, cs] : carrier) out.alphabet.insert(cs);
  out.alphabet.insert(hash);
  out.alphabet.insert(poison);
  for (const Word& w : h.axioms) out.axioms.insert(Word{carrier.at(w.front())});
  // Terminal axioms are words derived in zero steps; no table places their hash.
  for (const Word& w : h0.axioms) {
    if (!std::all_of(w.begin(), w.end(), [&](Symbol s) { return h0.terminals.contains(s); })) continue;
    for (std::size_t j = 0; j <= w.size(); ++j) {
      Word x = w;
      x.insert(x.begin() + static_cast<std::ptrdiff_t>(j), hash);
      out.axioms.insert(std::move(x));
    }
  }

  // Plain copies only act on hash-free forms.
  for (const Table& p : h.tables) {
    Table t = p;
    poison_uncovered(t);
    out.tables.push_back(std::move(t));
  }
  for (const Table& p : h.tables) {
    for (std::size_t j = 0; j < m; ++j) {
      Table t = p;
      t.name = p.name + "+" + hash.name() + "@" + std::to_string(j);
      for (Symbol c : h.alphabet)
        for (const Word& rhs : p.rules_for(c)) {
          if (rhs.size() <= j) continue;
          Word w = rhs;
          w[j] = carrier.at(rhs[j]);
          t.add(carrier.at(c), std::move(w));
        }
      poison_uncovered(t);
      out.tables.push_back(std::move(t));
    }
    for (std::size_t j = 0; j <= m; ++j) {
      Table t = p;
      t.name = p.name + "+" + hash.name() + "!" + std::to_string(j);
      for (Symbol c : h.alphabet)
        for (const Word& rhs : p.rules_for(c)) {
          if (rhs.size() < j) continue;
          Word w(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(j));
          w.push_back(hash);
          w.insert(w.end(), rhs.begin() + static_cast<std::ptrdiff_t>(j), rhs.end());
          t.add(carrier.at(c), std::move(w));
        }
      poison_uncovered(t);
      out.tables.push_back(std::move(t));
    }
  }
  return reduce(out);
}

LSystem insert_hashes(const LSystem& h, const std::vector<Symbol>& hashes, const ConstructionLimits& limits) {
  for (std::size_t i = 0; i < hashes.size(); ++i) {
    if (h.alphabet.contains(hashes[i]))
      throw Error(ErrorCode::HashInAlphabet, "hash '" + hashes[i].name() + "' already in the alphabet");
    for (std::size_t j = 0; j < i; ++j)
      if (hashes[i] == hashes[j])
        throw Error(ErrorCode::InvalidArgument, "hash '" + hashes[i].name() + "' repeated");
  }
  LSystem cur = h;
  for (Symbol hash : hashes) cur = insert_one_hash(cur, hash);
  return intersect_regular(cur, hash_order_dfa(hashes, h.terminals), limits);
}

}  // namespace permgram
