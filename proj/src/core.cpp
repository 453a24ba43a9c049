#include "permgram/core.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace permgram {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::InvalidSymbol: return "InvalidSymbol";
    case ErrorCode::CapsInvalid: return "CapsInvalid";
    case ErrorCode::OverlappingAlphabets: return "OverlappingAlphabets";
    case ErrorCode::IncompleteDfa: return "IncompleteDfa";
    case ErrorCode::TerminalClash: return "TerminalClash";
    case ErrorCode::HashInAlphabet: return "HashInAlphabet";
    case ErrorCode::NotAbLanguage: return "NotAbLanguage";
    case ErrorCode::NotAbWord: return "NotAbWord";
    case ErrorCode::NotNormalForm: return "NotNormalForm";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SemanticError: return "SemanticError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

class Interner {
 public:
  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    }
    if (!is_valid_symbol_name(name))
      throw Error(ErrorCode::InvalidSymbol, "invalid symbol name '" + std::string(name) + "'");
    std::unique_lock lock(mutex_);
    auto [it, inserted] = ids_.try_emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.emplace_back(name);
    return it->second;
  }

  const std::string& name(std::uint32_t id) {
    std::shared_lock lock(mutex_);
    return names_[id];
  }

 private:
  std::shared_mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

}  // namespace

Symbol::Symbol(std::string_view name) : id_(interner().intern(name)) {}

const std::string& Symbol::name() const { return interner().name(id_); }

bool is_valid_symbol_name(std::string_view name) {
  if (name.empty()) return false;
  if (name == "->" || name == ";" || name == "()" || name == "#") return false;
  if (name.front() == '@') return false;
  return std::none_of(name.begin(), name.end(),
                      [](unsigned char c) { return std::isspace(c) != 0; });
}

Word parse_word(std::string_view text) {
  Word out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "()") continue;
    out.emplace_back(tok);
  }
  return out;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i].name();
  }
  return out;
}

bool CanonicalLess::operator()(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return a[i].name() < b[i].name();
  }
  return false;
}

std::vector<Symbol> sorted_by_name(const SymbolSet& set) {
  std::vector<Symbol> out(set.begin(), set.end());
  std::sort(out.begin(), out.end(), NameLess{});
  return out;
}

SymbolSet Homomorphism::domain() const {
  SymbolSet out;
  for (const auto& [s, _] : images) out.insert(s);
  return out;
}

SymbolSet Homomorphism::target_alphabet() const {
  SymbolSet out;
  for (const auto& [_, img] : images) out.insert(img.begin(), img.end());
  return out;
}

bool Homomorphism::is_erasing() const {
  return std::any_of(images.begin(), images.end(),
                     [](const auto& kv) { return kv.second.empty(); });
}

Homomorphism Homomorphism::identity(const SymbolSet& on) {
  Homomorphism h;
  for (Symbol s : on) h.images.emplace(s, Word{s});
  return h;
}

Word hom_apply(const Homomorphism& h, const Word& w) {
  Word out;
  for (Symbol s : w) {
    auto it = h.images.find(s);
    if (it == h.images.end())
      throw Error(ErrorCode::UnknownSymbol, "symbol '" + s.name() + "' outside homomorphism domain");
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

Symbol fresh_symbol(std::string_view base, const SymbolSet& used) {
  Symbol candidate(base);
  if (!used.contains(candidate)) return candidate;
  for (std::size_t k = 1;; ++k) {
    Symbol next(std::string(base) + "_" + std::to_string(k));
    if (!used.contains(next)) return next;
  }
}

Symbol take_fresh(std::string_view base, SymbolSet& used) {
  Symbol s = fresh_symbol(base, used);
  used.insert(s);
  return s;
}

ParikhVector parikh(const Word& w) {
  ParikhVector out;
  for (Symbol s : w) ++out[s];
  return out;
}

ParikhVector operator+(const ParikhVector& a, const ParikhVector& b) {
  ParikhVector out = a;
  for (const auto& [s, n] : b) out[s] += n;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace permgram
