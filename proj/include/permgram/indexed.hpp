#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "permgram/core.hpp"
#include "permgram/lsystem.hpp"

namespace permgram {

enum class ProductionKind { Push, Pop, Plain };

/// Push: lhs -> rhs[0]^flag. Pop: lhs^flag -> rhs. Plain: lhs -> rhs.
struct Production {
  ProductionKind kind = ProductionKind::Plain;
  Symbol lhs{std::string_view("S")};
  std::optional<Symbol> flag;
  Word rhs;

  friend bool operator==(const Production&, const Production&) = default;
  friend auto operator<=>(const Production&, const Production&) = default;
};

Production push_production(Symbol lhs, Symbol flag, Symbol target);
Production pop_production(Symbol lhs, Symbol flag, Word rhs);
Production plain_production(Symbol lhs, Word rhs);

struct IndexedGrammar {
  SymbolSet nonterminals;
  SymbolSet terminals;
  SymbolSet flags;
  Symbol start{std::string_view("S")};
  std::vector<Production> productions;
  bool normal_form = false;

  friend bool operator==(const IndexedGrammar&, const IndexedGrammar&) = default;
};

/// A terminal, or a nonterminal carrying a flag word whose first element is
/// the top of the stack.
struct Atom {
  Symbol symbol;
  Word flags;
  bool terminal = false;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

using IndexedForm = std::vector<Atom>;

std::string format_atom(const Atom& a);
std::string format_form(const IndexedForm& f);

struct IndexedCaps {
  std::size_t max_word_len = 8;
  std::size_t max_form_len = 8;
  std::size_t max_flag_depth = 6;

  void check() const;
};

/// Conforms to A -> B^f, A^f -> B, A -> B C, A -> a or A -> ().
bool is_normal_form_production(const IndexedGrammar& g, const Production& p);

ValidationReport validate_indexed(const IndexedGrammar& g);

/// Result of applying production `index` at atom `position`, if applicable.
std::optional<IndexedForm> apply_production(const IndexedGrammar& g, const IndexedForm& u, std::size_t position,
                                            std::size_t index);

std::set<IndexedForm> step_indexed(const IndexedGrammar& g, const IndexedForm& u);

IndexedGrammar to_normal_form(const IndexedGrammar& g);

struct CycIndexed {
  IndexedGrammar grammar;
  Symbol tilde_start;
  Symbol dollar;
  SymbolSet hats;
};

CycIndexed cyc_indexed_parts(const IndexedGrammar& g);
IndexedGrammar cyc_indexed(const IndexedGrammar& g);

using FormVisitor = std::function<void(const IndexedForm&)>;

/// Breadth-first search over leftmost derivations from (start, ()).
/// `visit`, when set, sees every retained form.
EnumerationResult enumerate_indexed(const IndexedGrammar& g, const IndexedCaps& caps,
                                    const FormVisitor& visit = nullptr);

struct IndexedStep {
  std::size_t position;
  std::size_t production;
};

using IndexedDerivation = std::vector<IndexedStep>;

std::optional<IndexedDerivation> find_indexed_derivation(const IndexedGrammar& g, const Word& w,
                                                         const IndexedCaps& caps);

/// DOT parse tree of `d`. With `skeleton_leaf`, only the root-to-leaf path
/// and the direct children of its nodes are emitted.
std::string export_parse_trace(const IndexedGrammar& g, const IndexedDerivation& d,
                               std::optional<std::size_t> skeleton_leaf = std::nullopt);

}  // namespace permgram
