#pragma once

#include <map>
#include <string>
#include <vector>

#include "permgram/core.hpp"

namespace permgram {

/// Complete deterministic automaton. States are indices into `state_names`.
struct Dfa {
  std::vector<std::string> state_names;
  SymbolSet alphabet;
  std::size_t start = 0;
  std::set<std::size_t> accepting;
  std::vector<std::map<Symbol, std::size_t>> delta;  // per state

  std::size_t state_count() const { return state_names.size(); }
  bool is_complete() const;
  std::size_t next(std::size_t state, Symbol s) const;
  std::size_t state_index(std::string_view name) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;
};

/// Throws IncompleteDfa when delta is not total.
void check_complete(const Dfa& d);

bool dfa_accepts(const Dfa& d, const Word& w);

/// Accepts exactly hashes[0] B* hashes[1] B* ... B* hashes[n].
Dfa hash_order_dfa(const std::vector<Symbol>& hashes, const SymbolSet& base);

/// Same as `d` with every symbol of `extra` outside the alphabet sent to a
/// (possibly new) rejecting sink.
Dfa extend_to_alphabet(const Dfa& d, const SymbolSet& extra);

}  // namespace permgram
