#pragma once

#include <functional>
#include <map>

#include "permgram/closures.hpp"

namespace permgram::detail {

using SymbolMap = std::map<Symbol, Symbol>;

Word map_word(const Word& w, const SymbolMap& m);
LSystem map_symbols(const LSystem& h, const SymbolMap& m);

/// Symbols that reach a terminal word when every table may be chosen
/// independently for every occurrence. An over-approximation, so anything
/// outside the set is certainly dead.
SymbolSet productive_symbols(const LSystem& h);

using PoisonFor = std::function<Symbol(Symbol)>;

/// reduce() with rule sets emptied by trimming sent to poison_for(lhs).
LSystem reduce_typed(const LSystem& h, const PoisonFor& poison_for);

/// An unused nonterminal with no rules, registered in `used`.
inline Symbol make_poison(SymbolSet& used) { return take_fresh("_BOT", used); }

/// Number of ways of choosing one element from each list, saturating at
/// `cap + 1`.
std::size_t choice_product(const std::vector<std::size_t>& sizes, std::size_t cap);

/// Reads every table of `h` as the set of its choice functions (one
/// alternative per symbol) and returns an EDT0L system with the same
/// language. Only partial choice functions applied to reachable symbol sets
/// that can still finish are kept; compatible ones from the same table are
/// merged and symbols outside their domain are poisoned.
/// `poison_for`, when set, picks the poison for a given symbol.
LSystem expand_choices(const LSystem& h, const ConstructionLimits& limits, const PoisonFor& poison_for = nullptr);

}  // namespace permgram::detail
