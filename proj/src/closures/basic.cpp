#include <algorithm>
#include <unordered_map>

#include "internal.hpp"

namespace permgram {
namespace detail {

Word map_word(const Word& w, const SymbolMap& m) {
  Word out;
  out.reserve(w.size());
  for (Symbol s : w) {
    auto it = m.find(s);
    out.push_back(it == m.end() ? s : it->second);
  }
  return out;
}

LSystem map_symbols(const LSystem& h, const SymbolMap& m) {
  auto map_one = [&](Symbol s) {
    auto it = m.find(s);
    return it == m.end() ? s : it->second;
  };
  LSystem out;
  out.kind = h.kind;
  for (Symbol s : h.alphabet) out.alphabet.insert(map_one(s));
  for (Symbol s : h.terminals) out.terminals.insert(map_one(s));
  for (const Word& w : h.axioms) out.axioms.insert(map_word(w, m));
  for (const Table& t : h.tables) {
    Table nt{t.name, {}};
    for (const auto& [lhs, list] : t.rules)
      for (const Word& rhs : list) nt.add(map_one(lhs), map_word(rhs, m));
    out.tables.push_back(std::move(nt));
  }
  return out;
}

SymbolSet productive_symbols(const LSystem& h) {
  // Counter-based fixpoint over the distinct explicit rules.
  std::unordered_map<Symbol, std::uint32_t> index;
  std::vector<Symbol> symbols;
  auto id_of = [&](Symbol s) {
    auto [it, inserted] = index.try_emplace(s, static_cast<std::uint32_t>(symbols.size()));
    if (inserted) symbols.push_back(s);
    return it->second;
  };
  for (Symbol s : h.alphabet) id_of(s);
  std::set<std::pair<std::uint32_t, std::vector<std::uint32_t>>> rules;
  for (const Table& t : h.tables)
    for (const auto& [lhs, list] : t.rules) {
      const std::uint32_t l = id_of(lhs);
      for (const Word& rhs : list) {
        std::vector<std::uint32_t> r;
        for (Symbol s : rhs) r.push_back(id_of(s));
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        if (std::find(r.begin(), r.end(), l) != r.end()) continue;
        rules.emplace(l, std::move(r));
      }
    }
  std::vector<char> productive(symbols.size(), 0);
  std::vector<std::vector<std::size_t>> waiting(symbols.size());
  std::vector<std::uint32_t> missing;
  std::vector<std::uint32_t> heads;
  std::vector<std::uint32_t> work;
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (h.terminals.contains(symbols[i])) {
      productive[i] = 1;
      work.push_back(static_cast<std::uint32_t>(i));
    }
  for (const auto& [lhs, rhs] : rules) {
    const std::size_t r = heads.size();
    heads.push_back(lhs);
    missing.push_back(static_cast<std::uint32_t>(rhs.size()));
    for (std::uint32_t s : rhs) waiting[s].push_back(r);
    if (rhs.empty() && !productive[lhs]) {
      productive[lhs] = 1;
      work.push_back(lhs);
    }
  }
  while (!work.empty()) {
    const std::uint32_t s = work.back();
    work.pop_back();
    for (std::size_t r : waiting[s]) {
      if (--missing[r] == 0 && !productive[heads[r]]) {
        productive[heads[r]] = 1;
        work.push_back(heads[r]);
      }
    }
  }
  SymbolSet out;
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (productive[i]) out.insert(symbols[i]);
  return out;
}

std::size_t choice_product(const std::vector<std::size_t>& sizes, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t n : sizes) {
    if (n == 0) return 0;
    if (total > (cap + 1) / n + 1) return cap + 1;
    total *= n;
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace detail

using detail::SymbolMap;

LSystem wrap_axioms(const LSystem& h) {
  const bool needed = std::any_of(h.axioms.begin(), h.axioms.end(),
                                  [](const Word& w) { return w.size() != 1; });
  if (!needed) return h;
  LSystem out = h;
  out.axioms.clear();
  SymbolSet used = h.alphabet;
  if (out.tables.empty()) out.tables.push_back(Table{"wrap", {}});
  for (const Word& w : h.axioms) {
    if (w.size() == 1) {
      out.axioms.insert(w);
      continue;
    }
    Symbol start = take_fresh("S_ax", used);
    out.alphabet.insert(start);
    for (Table& t : out.tables) t.add(start, w);
    out.axioms.insert(Word{start});
  }
  return out;
}

LSystem reduce(const LSystem& h) { return detail::reduce_typed(h, nullptr); }

LSystem detail::reduce_typed(const LSystem& h, const PoisonFor& poison_for) {
  const SymbolSet productive = detail::productive_symbols(h);
  auto live = [&](const Word& w) {
    return std::all_of(w.begin(), w.end(), [&](Symbol s) { return productive.contains(s); });
  };

  SymbolSet reached;
  std::vector<Symbol> work;
  auto reach = [&](Symbol s) {
    if (reached.insert(s).second) work.push_back(s);
  };
  LSystem out;
  out.kind = h.kind;
  out.terminals = h.terminals;
  for (const Word& w : h.axioms)
    if (live(w)) {
      out.axioms.insert(w);
      for (Symbol s : w) reach(s);
    }
  while (!work.empty()) {
    Symbol s = work.back();
    work.pop_back();
    for (const Table& t : h.tables)
      if (auto it = t.rules.find(s); it != t.rules.end())
        for (const Word& rhs : it->second)
          if (live(rhs))
            for (Symbol x : rhs) reach(x);
  }

  SymbolSet used = h.alphabet;
  std::optional<Symbol> poison;
  SymbolSet typed;
  std::map<std::map<Symbol, std::vector<Word>>, std::size_t> seen;
  for (const Table& t : h.tables) {
    Table nt{t.name, {}};
    for (const auto& [lhs, list] : t.rules) {
      if (!reached.contains(lhs)) continue;
      std::vector<Word> kept;
      for (const Word& rhs : list)
        if (live(rhs)) kept.push_back(rhs);
      if (kept.empty() && poison_for) {
        const Symbol p = poison_for(lhs);
        typed.insert(p);
        nt.rules[lhs] = {Word{p}};
      } else if (kept.empty()) {
        if (!poison) poison = detail::make_poison(used);
        nt.rules[lhs] = {Word{*poison}};
      } else if (!(kept.size() == 1 && kept.front() == Word{lhs})) {
        nt.rules[lhs] = std::move(kept);
      }
    }
    if (nt.rules.empty()) continue;
    if (!seen.emplace(nt.rules, out.tables.size()).second) continue;
    out.tables.push_back(std::move(nt));
  }
  out.alphabet = reached;
  out.alphabet.insert(out.terminals.begin(), out.terminals.end());
  if (poison) out.alphabet.insert(*poison);
  out.alphabet.insert(typed.begin(), typed.end());
  return out;
}

std::pair<LSystem, Homomorphism> disjoint_rename(const LSystem& h, const SymbolSet& reserved) {
  SymbolSet used = h.alphabet;
  used.insert(reserved.begin(), reserved.end());
  SymbolMap m;
  for (Symbol s : sorted_by_name(h.alphabet)) {
    if (!reserved.contains(s)) continue;
    if (h.terminals.contains(s))
      throw Error(ErrorCode::TerminalClash, "reserved symbol '" + s.name() + "' is a terminal");
    m.emplace(s, take_fresh(s.name(), used));
  }
  Homomorphism renaming;
  for (Symbol s : h.alphabet) {
    auto it = m.find(s);
    renaming.images.emplace(s, Word{it == m.end() ? s : it->second});
  }
  return {detail::map_symbols(h, m), std::move(renaming)};
}

namespace {

/// True when some table of `h` rewrites one of `foreign` non-identically.
bool rewrites_any(const LSystem& h, const SymbolSet& foreign) {
  for (const Table& t : h.tables)
    for (const auto& [lhs, list] : t.rules)
      if (foreign.contains(lhs) && !(list.size() == 1 && list.front() == Word{lhs})) return true;
  return false;
}

}  // namespace

LSystem union_systems(const LSystem& h1, const LSystem& h2) {
  LSystem a = h1;
  LSystem b = h2;
  // Terminals shared with rewriting rules of the other system would be
  // rewritten across components; isolate both behind finishing tables.
  if (rewrites_any(a, b.terminals) || rewrites_any(b, a.terminals)) {
    a = hom_image(a, Homomorphism::identity(a.terminals));
    b = hom_image(b, Homomorphism::identity(b.terminals));
  }
  // Nonterminals of a that are terminals of b move to names unused by b.
  SymbolSet avoid_in_a;
  for (Symbol s : b.alphabet)
    if (!a.alphabet.contains(s) || (b.terminals.contains(s) && !a.terminals.contains(s))) avoid_in_a.insert(s);
  a = disjoint_rename(a, avoid_in_a).first;
  SymbolSet reserved;
  for (Symbol s : a.alphabet)
    if (!b.terminals.contains(s)) reserved.insert(s);
  b = disjoint_rename(b, reserved).first;

  LSystem out;
  out.kind = (a.kind == SystemKind::EDT0L && b.kind == SystemKind::EDT0L) ? SystemKind::EDT0L
                                                                          : SystemKind::ET0L;
  out.alphabet = a.alphabet;
  out.alphabet.insert(b.alphabet.begin(), b.alphabet.end());
  out.terminals = a.terminals;
  out.terminals.insert(b.terminals.begin(), b.terminals.end());
  out.axioms = a.axioms;
  out.axioms.insert(b.axioms.begin(), b.axioms.end());
  out.tables = a.tables;
  out.tables.insert(out.tables.end(), b.tables.begin(), b.tables.end());
  return out;
}

LSystem hom_image(const LSystem& h, const Homomorphism& hom) {
  for (Symbol t : h.terminals)
    if (!hom.images.contains(t))
      throw Error(ErrorCode::UnknownSymbol, "homomorphism undefined on terminal '" + t.name() + "'");
  const SymbolSet target = hom.target_alphabet();
  SymbolSet clash;
  for (Symbol s : target)
    if (h.alphabet.contains(s) && !h.terminals.contains(s)) clash.insert(s);
  const LSystem base = clash.empty() ? h : disjoint_rename(h, clash).first;

  SymbolSet used = base.alphabet;
  used.insert(target.begin(), target.end());
  SymbolMap bar;
  for (Symbol t : sorted_by_name(base.terminals)) bar.emplace(t, take_fresh(t.name() + "'", used));
  const Symbol poison = detail::make_poison(used);

  LSystem out = detail::map_symbols(base, bar);
  out.terminals = target;
  out.alphabet.insert(target.begin(), target.end());
  out.alphabet.insert(poison);
  Table finish{"hom", {}};
  for (const auto& [t, barred] : bar) finish.add(barred, hom.images.at(t));
  for (Symbol n : base.nonterminals()) finish.add(n, Word{poison});
  out.tables.push_back(std::move(finish));
  return out;
}

std::vector<Symbol> make_hashes(std::size_t k, const SymbolSet& used) {
  SymbolSet taken = used;
  std::vector<Symbol> out;
  for (std::size_t i = 0; i <= k; ++i) out.push_back(take_fresh("#" + std::to_string(i), taken));
  return out;
}

}  // namespace permgram
