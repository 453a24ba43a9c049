#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "permgram/core.hpp"

namespace permgram {

/// One table of an ET0L system. Symbols without explicit rules rewrite to
/// themselves.
struct Table {
  std::string name;
  std::map<Symbol, std::vector<Word>> rules;  // each rhs list sorted, unique

  void add(Symbol lhs, Word rhs);
  bool has_rules_for(Symbol c) const { return rules.contains(c); }
  /// Explicit rules for `c`, or the single identity rule {c} when none.
  std::vector<Word> rules_for(Symbol c) const;
  std::size_t rule_count() const;
  std::size_t max_rhs_length() const;

  friend bool operator==(const Table&, const Table&) = default;
};

enum class SystemKind { ET0L, EDT0L };

struct LSystem {
  SymbolSet alphabet;
  SymbolSet terminals;
  std::vector<Table> tables;
  std::set<Word> axioms;
  SystemKind kind = SystemKind::ET0L;

  SymbolSet nonterminals() const;
  bool is_terminal(Symbol s) const { return terminals.contains(s); }
  /// Longest right-hand side over all tables, counting implicit identities.
  std::size_t max_rhs_length() const;
  std::size_t rule_count() const;

  friend bool operator==(const LSystem&, const LSystem&) = default;
};

enum class Severity { Info, Error };

struct Issue {
  Severity severity;
  std::string kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const;
  bool has(std::string_view kind) const;
  std::string to_text() const;
};

ValidationReport validate(const LSystem& h);

/// All v with u =>_{H,table} v: every position of u rewritten simultaneously.
std::set<Word> step(const LSystem& h, const Word& u, std::size_t table_index);

struct EnumerationCaps {
  std::size_t max_word_len = 8;
  std::size_t max_form_len = 8;
  std::optional<std::size_t> max_steps;

  void check() const;
};

struct EnumerationResult {
  WordSet words;
  bool truncated = false;
  std::size_t explored = 0;
};

/// Breadth-first closure over sentential forms within the caps. Forms that
/// contain a symbol which can never reach a terminal word are discarded, and
/// `truncated` only reports live forms cut off by a cap.
EnumerationResult enumerate(const LSystem& h, const EnumerationCaps& caps);

struct WitnessStep {
  std::size_t table_index;
  Word form;  // form after applying the table
};

struct Witness {
  Word axiom;
  std::vector<WitnessStep> steps;
};

/// A replayable derivation of `w` found within the caps, if any.
std::optional<Witness> find_witness(const LSystem& h, const Word& w, const EnumerationCaps& caps);

enum class Membership { Yes, NoWithinCaps };

Membership contains_bounded(const LSystem& h, const Word& w, const EnumerationCaps& caps);

}  // namespace permgram
