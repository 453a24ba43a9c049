#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace permgram {

enum class ErrorCode {
  UnknownSymbol,
  InvalidSymbol,
  CapsInvalid,
  OverlappingAlphabets,
  IncompleteDfa,
  TerminalClash,
  HashInAlphabet,
  NotAbLanguage,
  NotAbWord,
  NotNormalForm,
  InvalidWitness,
  TooLarge,
  SyntaxError,
  SemanticError,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// An interned text token. Equality is token equality; ordering is by
/// interning id and is only meant for associative containers. Use
/// `NameLess` where a human-stable order is required.
class Symbol {
 public:
  explicit Symbol(std::string_view name);

  static Symbol from_id(std::uint32_t id) { return Symbol(id, 0); }

  std::uint32_t id() const noexcept { return id_; }
  const std::string& name() const;

  friend bool operator==(Symbol, Symbol) = default;
  friend auto operator<=>(Symbol, Symbol) = default;

 private:
  Symbol(std::uint32_t id, int) : id_(id) {}
  std::uint32_t id_;
};

/// True when `name` may be used as a symbol token in the text formats.
bool is_valid_symbol_name(std::string_view name);

struct NameLess {
  bool operator()(Symbol a, Symbol b) const { return a.name() < b.name(); }
};

using Word = std::vector<Symbol>;
using SymbolSet = std::set<Symbol>;

/// Parses a whitespace separated token sequence; "()" denotes the empty word.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

/// Canonical word order: shorter first, then lexicographic by symbol name.
struct CanonicalLess {
  bool operator()(const Word& a, const Word& b) const;
};

std::vector<Symbol> sorted_by_name(const SymbolSet& set);

/// Symbol-to-word map applied letter by letter.
struct Homomorphism {
  std::map<Symbol, Word> images;

  SymbolSet domain() const;
  /// Every symbol occurring in some image.
  SymbolSet target_alphabet() const;
  bool is_erasing() const;

  static Homomorphism identity(const SymbolSet& on);
};

Word hom_apply(const Homomorphism& h, const Word& w);

/// Returns `base` when unused, otherwise the first free "base_k", k >= 1.
Symbol fresh_symbol(std::string_view base, const SymbolSet& used);

/// fresh_symbol followed by insertion of the result into `used`.
Symbol take_fresh(std::string_view base, SymbolSet& used);

/// Finite set of words in canonical order.
using WordSet = std::set<Word, CanonicalLess>;

using ParikhVector = std::map<Symbol, std::size_t>;

ParikhVector parikh(const Word& w);
ParikhVector operator+(const ParikhVector& a, const ParikhVector& b);

Word concat(const Word& a, const Word& b);

}  // namespace permgram

template <>
struct std::hash<permgram::Symbol> {
  std::size_t operator()(permgram::Symbol s) const noexcept { return s.id(); }
};
