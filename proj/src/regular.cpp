#include "permgram/regular.hpp"

#include <algorithm>

namespace permgram {

bool Dfa::is_complete() const {
  if (delta.size() != state_names.size() || start >= state_names.size()) return false;
  for (const auto& row : delta) {
    if (row.size() != alphabet.size()) return false;
    for (const auto& [s, to] : row)
      if (!alphabet.contains(s) || to >= state_names.size()) return false;
  }
  return std::all_of(accepting.begin(), accepting.end(),
                     [&](std::size_t q) { return q < state_names.size(); });
}

void check_complete(const Dfa& d) {
  if (!d.is_complete()) throw Error(ErrorCode::IncompleteDfa, "DFA transition function is not total");
}

std::size_t Dfa::next(std::size_t state, Symbol s) const {
  auto it = delta[state].find(s);
  if (it == delta[state].end())
    throw Error(ErrorCode::UnknownSymbol, "symbol '" + s.name() + "' not in DFA alphabet");
  return it->second;
}

std::size_t Dfa::state_index(std::string_view name) const {
  auto it = std::find(state_names.begin(), state_names.end(), name);
  if (it == state_names.end())
    throw Error(ErrorCode::SemanticError, "unknown DFA state '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - state_names.begin());
}

bool dfa_accepts(const Dfa& d, const Word& w) {
  std::size_t q = d.start;
  for (Symbol s : w) q = d.next(q, s);
  return d.accepting.contains(q);
}

Dfa hash_order_dfa(const std::vector<Symbol>& hashes, const SymbolSet& base) {
  for (std::size_t i = 0; i < hashes.size(); ++i) {
    if (base.contains(hashes[i]))
      throw Error(ErrorCode::OverlappingAlphabets, "hash '" + hashes[i].name() + "' is in the base alphabet");
    for (std::size_t j = 0; j < i; ++j)
      if (hashes[i] == hashes[j])
        throw Error(ErrorCode::OverlappingAlphabets, "hash '" + hashes[i].name() + "' repeated");
  }
  // State i: i hashes read so far; the last state is the sink.
  Dfa d;
  const std::size_t n = hashes.size();
  const std::size_t sink = n + 1;
  for (std::size_t i = 0; i <= n; ++i) d.state_names.push_back("s" + std::to_string(i));
  d.state_names.push_back("sink");
  d.alphabet = base;
  d.alphabet.insert(hashes.begin(), hashes.end());
  d.start = 0;
  d.accepting = {n};
  d.delta.resize(n + 2);
  for (std::size_t q = 0; q <= sink; ++q) {
    for (Symbol s : d.alphabet) {
      std::size_t to = sink;
      if (q != sink) {
        if (base.contains(s))
          to = (q >= 1 && q < n) ? q : sink;
        else if (q < n && s == hashes[q])
          to = q + 1;
      }
      d.delta[q][s] = to;
    }
  }
  return d;
}

Dfa extend_to_alphabet(const Dfa& d, const SymbolSet& extra) {
  SymbolSet missing;
  for (Symbol s : extra)
    if (!d.alphabet.contains(s)) missing.insert(s);
  if (missing.empty()) return d;
  Dfa out = d;
  const std::size_t sink = out.state_names.size();
  std::string sink_name = "sink";
  while (std::find(out.state_names.begin(), out.state_names.end(), sink_name) != out.state_names.end())
    sink_name += "'";
  out.state_names.push_back(sink_name);
  out.alphabet.insert(missing.begin(), missing.end());
  out.delta.emplace_back();
  for (std::size_t q = 0; q < out.state_names.size(); ++q)
    for (Symbol s : out.alphabet)
      if (q == sink || missing.contains(s)) out.delta[q][s] = sink;
  return out;
}

}  // namespace permgram
