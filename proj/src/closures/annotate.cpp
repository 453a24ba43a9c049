#include <algorithm>
#include <array>
#include <functional>

#include "internal.hpp"

namespace permgram {

Word AbMorphism::apply(const Word& w) const {
  Word out;
  for (Symbol s : w) {
    const Word& img = image(s);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

const Word& AbMorphism::image(Symbol s) const {
  static const Word empty;
  auto it = images.find(s);
  return it == images.end() ? empty : it->second;
}

std::vector<PhiViolation> phi_violations(const LSystem& h, const AbMorphism& phi) {
  std::vector<PhiViolation> out;
  for (Symbol t : h.terminals) {
    const Word expected = t == phi.a ? Word{phi.a} : t == phi.b ? Word{phi.b} : Word{};
    if (phi.image(t) != expected) out.push_back({"<terminals>", t, Word{t}});
  }
  for (const Table& t : h.tables)
    for (const auto& [lhs, list] : t.rules)
      for (const Word& rhs : list)
        if (phi.image(lhs) != phi.apply(rhs)) out.push_back({t.name, lhs, rhs});
  return out;
}

void check_ab_language(const LSystem& h, Symbol a, Symbol b, const AbCheck& check) {
  for (const Word& w : enumerate(h, check.caps).words) {
    const auto na = std::count(w.begin(), w.end(), a);
    const auto nb = std::count(w.begin(), w.end(), b);
    const bool ok = na == 1 && nb == 1 && std::find(w.begin(), w.end(), a) < std::find(w.begin(), w.end(), b);
    if (!ok)
      throw Error(ErrorCode::NotAbLanguage, "word '" + format_word(w) + "' is not an (" + a.name() + "," +
                                                b.name() + ")-word");
  }
}

namespace {

// Factors of ab, encoded as indices.
enum Factor : int { kEps = 0, kA = 1, kB = 2, kAB = 3 };
constexpr std::array<const char*, 4> kFactorName = {"e", "a", "b", "ab"};

/// Concatenation of two factors if it is again a factor of ab, else -1.
int join(int x, int y) {
  if (x == kEps) return y;
  if (y == kEps) return x;
  if (x == kA && y == kB) return kAB;
  return -1;
}

struct Pair {
  Symbol symbol;
  int factor;
  auto operator<=>(const Pair&) const = default;
};

}  // namespace

AnnotatedSystem annotate_ab(const LSystem& h0, Symbol a, Symbol b, const std::optional<AbCheck>& check,
                            const ConstructionLimits& limits) {
  if (!h0.terminals.contains(a) || !h0.terminals.contains(b) || a == b)
    throw Error(ErrorCode::InvalidArgument, "a and b must be distinct terminals");
  if (check) check_ab_language(h0, a, b, *check);
  const LSystem h = wrap_axioms(h0);

  auto terminal_factor = [&](Symbol t) { return t == a ? kA : t == b ? kB : kEps; };

  // Productive factor sets, one bit per factor.
  std::map<Symbol, unsigned> prod;
  for (Symbol c : h.alphabet) prod[c] = 0;
  for (Symbol t : h.terminals) prod[t] |= 1u << terminal_factor(t);
  std::map<Symbol, std::set<Word>> distinct;
  for (const Table& t : h.tables)
    for (const auto& [lhs, list] : t.rules) distinct[lhs].insert(list.begin(), list.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [lhs, rhss] : distinct)
      for (const Word& rhs : rhss) {
        unsigned reach = 1u << kEps;
        for (Symbol x : rhs) {
          unsigned next = 0;
          for (int f = 0; f < 4; ++f)
            if (reach & (1u << f))
              for (int g = 0; g < 4; ++g)
                if ((prod[x] & (1u << g)) && join(f, g) >= 0) next |= 1u << join(f, g);
          reach = next;
        }
        if ((prod[lhs] | reach) != prod[lhs]) {
          prod[lhs] |= reach;
          changed = true;
        }
      }
  }

  auto decompositions = [&](const Word& w, int target) {
    std::vector<std::vector<Pair>> out;
    std::vector<Pair> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int acc) {
      if (pos == w.size()) {
        if (acc == target) out.push_back(cur);
        return;
      }
      for (int g = 0; g < 4; ++g) {
        if (!(prod[w[pos]] & (1u << g))) continue;
        const int next = join(acc, g);
        if (next < 0) continue;
        cur.push_back({w[pos], g});
        rec(pos + 1, next);
        cur.pop_back();
      }
    };
    rec(0, kEps);
    return out;
  };

  SymbolSet used = h.alphabet;
  std::array<Symbol, 4> poison = {take_fresh("_BOT|e", used), take_fresh("_BOT|a", used),
                                  take_fresh("_BOT|b", used), take_fresh("_BOT|ab", used)};
  std::map<Pair, Symbol> names;
  std::vector<Pair> work;
  auto name_of = [&](const Pair& p) {
    auto it = names.find(p);
    if (it != names.end()) return it->second;
    Symbol s = take_fresh(p.symbol.name() + "|" + kFactorName[p.factor], used);
    names.emplace(p, s);
    work.push_back(p);
    return s;
  };
  auto to_word = [&](const std::vector<Pair>& ps) {
    Word w;
    for (const Pair& p : ps) w.push_back(name_of(p));
    return w;
  };

  AnnotatedSystem out{LSystem{}, AbMorphism{{}, a, b}};
  LSystem& sys = out.system;
  sys.kind = h.kind;
  sys.terminals = h.terminals;
  for (const Word& w : h.axioms)
    if (prod[w.front()] & (1u << kAB)) sys.axioms.insert(Word{name_of({w.front(), kAB})});

  std::map<Pair, std::vector<std::vector<Word>>> per_table;
  while (!work.empty()) {
    const Pair p = work.back();
    work.pop_back();
    auto& slots = per_table[p];
    slots.resize(h.tables.size());
    for (std::size_t i = 0; i < h.tables.size(); ++i)
      for (const Word& rhs : h.tables[i].rules_for(p.symbol))
        for (const auto& dec : decompositions(rhs, p.factor)) slots[i].push_back(to_word(dec));
  }

  for (std::size_t i = 0; i < h.tables.size(); ++i) {
    Table fixed{h.tables[i].name, {}};
    for (const auto& [p, slots] : per_table) {
      const Symbol lhs = names.at(p);
      std::vector<Word> alts = slots[i];
      std::sort(alts.begin(), alts.end());
      alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
      if (alts.empty()) {
        fixed.add(lhs, Word{poison[p.factor]});
      } else {
        if (alts.size() == 1 && alts.front() == Word{lhs}) continue;
        for (Word& w : alts) fixed.add(lhs, std::move(w));
      }
    }
    sys.tables.push_back(std::move(fixed));
  }

  // Finishing table: a pair turns into its terminal only when the stored
  // factor is the terminal's own image; every other pair is killed.
  Table finish{"fin", {}};
  for (const auto& [p, sym] : names) {
    if (h.terminals.contains(p.symbol) && terminal_factor(p.symbol) == p.factor)
      finish.add(sym, Word{p.symbol});
    else
      finish.add(sym, Word{poison[p.factor]});
  }
  sys.tables.push_back(std::move(finish));

  const std::array<Word, 4> factor_word = {Word{}, Word{a}, Word{b}, Word{a, b}};
  for (const auto& [p, sym] : names) {
    sys.alphabet.insert(sym);
    out.phi.images[sym] = factor_word[p.factor];
  }
  for (int f = 0; f < 4; ++f) {
    sys.alphabet.insert(poison[f]);
    out.phi.images[poison[f]] = factor_word[f];
  }
  for (Symbol t : sys.terminals) {
    sys.alphabet.insert(t);
    out.phi.images[t] = factor_word[terminal_factor(t)];
  }
  if (h.kind == SystemKind::EDT0L) {
    const auto typed = [&](Symbol s) {
      const Word& w = out.phi.image(s);
      return poison[w.empty() ? kEps : w.size() == 2 ? kAB : w[0] == a ? kA : kB];
    };
    sys = detail::expand_choices(sys, limits, typed);
  }
  return out;
}

}  // namespace permgram
