#include "permgram/indexed.hpp"

#include <algorithm>
#include <map>

namespace permgram {

Production push_production(Symbol lhs, Symbol flag, Symbol target) {
  return {ProductionKind::Push, lhs, flag, Word{target}};
}

Production pop_production(Symbol lhs, Symbol flag, Word rhs) {
  return {ProductionKind::Pop, lhs, flag, std::move(rhs)};
}

Production plain_production(Symbol lhs, Word rhs) {
  return {ProductionKind::Plain, lhs, std::nullopt, std::move(rhs)};
}

std::string format_atom(const Atom& a) {
  if (a.terminal || a.flags.empty()) return a.symbol.name();
  std::string out = a.symbol.name() + "[";
  for (std::size_t i = 0; i < a.flags.size(); ++i) {
    if (i) out += ',';
    out += a.flags[i].name();
  }
  return out + "]";
}

std::string format_form(const IndexedForm& f) {
  if (f.empty()) return "()";
  std::string out;
  for (const Atom& a : f) {
    if (!out.empty()) out += ' ';
    out += format_atom(a);
  }
  return out;
}

void IndexedCaps::check() const {
  if (max_form_len < max_word_len)
    throw Error(ErrorCode::CapsInvalid, "max_form_len (" + std::to_string(max_form_len) +
                                            ") must be >= max_word_len (" + std::to_string(max_word_len) + ")");
}

bool is_normal_form_production(const IndexedGrammar& g, const Production& p) {
  const auto nt = [&](Symbol s) { return g.nonterminals.contains(s); };
  switch (p.kind) {
    case ProductionKind::Push:
      return p.rhs.size() == 1 && nt(p.rhs[0]);
    case ProductionKind::Pop:
      return p.rhs.size() == 1 && nt(p.rhs[0]);
    case ProductionKind::Plain:
      if (p.rhs.empty()) return true;
      if (p.rhs.size() == 1) return g.terminals.contains(p.rhs[0]);
      return p.rhs.size() == 2 && nt(p.rhs[0]) && nt(p.rhs[1]);
  }
  return false;
}

namespace {

std::string describe(const Production& p) {
  std::string lhs = p.lhs.name();
  std::string rhs = format_word(p.rhs);
  if (p.kind == ProductionKind::Pop) lhs += "[" + p.flag->name() + "]";
  if (p.kind == ProductionKind::Push) rhs += "[" + p.flag->name() + "]";
  return lhs + " -> " + rhs;
}

}  // namespace

ValidationReport validate_indexed(const IndexedGrammar& g) {
  ValidationReport report;
  auto error = [&](std::string kind, std::string msg) {
    report.issues.push_back({Severity::Error, std::move(kind), std::move(msg)});
  };
  auto overlap = [&](const SymbolSet& x, const SymbolSet& y, const char* what) {
    for (Symbol s : sorted_by_name(x))
      if (y.contains(s)) error("disjointness", "'" + s.name() + "' is both " + what);
  };
  overlap(g.nonterminals, g.terminals, "nonterminal and terminal");
  overlap(g.nonterminals, g.flags, "nonterminal and flag");
  overlap(g.terminals, g.flags, "terminal and flag");
  if (!g.nonterminals.contains(g.start)) error("unknown", "start '" + g.start.name() + "' is not a nonterminal");

  for (const Production& p : g.productions) {
    const std::string where = " in '" + describe(p) + "'";
    if (!g.nonterminals.contains(p.lhs)) error("unknown", "head '" + p.lhs.name() + "' is not a nonterminal" + where);
    if (p.kind != ProductionKind::Plain) {
      if (!p.flag || !g.flags.contains(*p.flag)) error("unknown", "flag is not declared" + where);
    } else if (p.flag) {
      error("unknown", "plain production carries a flag" + where);
    }
    if (p.kind == ProductionKind::Push && (p.rhs.size() != 1 || !g.nonterminals.contains(p.rhs[0])))
      error("shape", "push must target a single nonterminal" + where);
    for (Symbol s : p.rhs)
      if (!g.nonterminals.contains(s) && !g.terminals.contains(s))
        error("unknown", "symbol '" + s.name() + "' is undeclared" + where);
    if (g.normal_form && !is_normal_form_production(g, p)) error("normal-form", "not in normal form" + where);
  }
  return report;
}

std::optional<IndexedForm> apply_production(const IndexedGrammar& g, const IndexedForm& u, std::size_t position,
                                            std::size_t index) {
  if (position >= u.size() || index >= g.productions.size()) return std::nullopt;
  const Atom& at = u[position];
  const Production& p = g.productions[index];
  if (at.terminal || at.symbol != p.lhs) return std::nullopt;

  Word inherited = at.flags;
  if (p.kind == ProductionKind::Pop) {
    if (inherited.empty() || inherited.front() != *p.flag) return std::nullopt;
    inherited.erase(inherited.begin());
  } else if (p.kind == ProductionKind::Push) {
    inherited.insert(inherited.begin(), *p.flag);
  }

  IndexedForm out(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(position));
  for (Symbol s : p.rhs) {
    if (g.terminals.contains(s))
      out.push_back({s, {}, true});
    else
      out.push_back({s, inherited, false});
  }
  out.insert(out.end(), u.begin() + static_cast<std::ptrdiff_t>(position) + 1, u.end());
  return out;
}

std::set<IndexedForm> step_indexed(const IndexedGrammar& g, const IndexedForm& u) {
  std::set<IndexedForm> out;
  for (std::size_t pos = 0; pos < u.size(); ++pos)
    for (std::size_t i = 0; i < g.productions.size(); ++i)
      if (auto v = apply_production(g, u, pos, i)) out.insert(std::move(*v));
  return out;
}

IndexedGrammar to_normal_form(const IndexedGrammar& g) {
  SymbolSet used = g.nonterminals;
  used.insert(g.terminals.begin(), g.terminals.end());
  used.insert(g.flags.begin(), g.flags.end());

  IndexedGrammar out = g;
  out.productions.clear();
  std::vector<Production> pending;
  std::map<Symbol, Symbol> lifted;

  auto fresh_nt = [&](const std::string& base) {
    Symbol s = take_fresh(base, used);
    out.nonterminals.insert(s);
    return s;
  };
  auto lift = [&](Symbol t) {
    auto it = lifted.find(t);
    if (it != lifted.end()) return it->second;
    Symbol x = fresh_nt("X_" + t.name());
    lifted.emplace(t, x);
    out.productions.push_back(plain_production(x, Word{t}));
    return x;
  };

  for (const Production& p : g.productions) {
    if (p.kind == ProductionKind::Pop && !(p.rhs.size() == 1 && g.nonterminals.contains(p.rhs[0]))) {
      Symbol x = fresh_nt("X");
      pending.push_back(pop_production(p.lhs, *p.flag, Word{x}));
      pending.push_back(plain_production(x, p.rhs));
    } else {
      pending.push_back(p);
    }
  }

  std::vector<Production> units;
  std::vector<Production> rest;
  for (Production& p : pending) {
    if (p.kind != ProductionKind::Plain) {
      rest.push_back(std::move(p));
      continue;
    }
    if (p.rhs.size() == 1 && out.nonterminals.contains(p.rhs[0])) {
      units.push_back(std::move(p));
      continue;
    }
    if (p.rhs.size() <= 1) {
      rest.push_back(std::move(p));
      continue;
    }
    Word rhs = p.rhs;
    for (Symbol& s : rhs)
      if (g.terminals.contains(s)) s = lift(s);
    Symbol head = p.lhs;
    while (rhs.size() > 2) {
      Symbol r = fresh_nt("R");
      rest.push_back(plain_production(head, Word{rhs.front(), r}));
      rhs.erase(rhs.begin());
      head = r;
    }
    rest.push_back(plain_production(head, rhs));
  }

  // Unit pairs (A, B) with A =>* B by unit steps, which leave flags alone.
  std::map<Symbol, SymbolSet> reach;
  for (Symbol a : out.nonterminals) reach[a].insert(a);
  for (bool changed = true; changed;) {
    changed = false;
    for (const Production& u : units)
      for (auto& [a, set] : reach)
        if (set.contains(u.lhs) && set.insert(u.rhs[0]).second) changed = true;
  }
  std::set<Production> seen(out.productions.begin(), out.productions.end());
  auto emit = [&](Production p) {
    if (seen.insert(p).second) out.productions.push_back(std::move(p));
  };
  for (const Production& p : rest) emit(p);
  for (const auto& [a, set] : reach)
    for (Symbol b : set) {
      if (b == a) continue;
      for (const Production& p : rest)
        if (p.lhs == b) {
          Production copy = p;
          copy.lhs = a;
          emit(std::move(copy));
        }
    }
  out.normal_form = true;
  return out;
}

CycIndexed cyc_indexed_parts(const IndexedGrammar& g) {
  if (!g.normal_form) throw Error(ErrorCode::NotNormalForm, "grammar is not marked as normal form");
  for (const Production& p : g.productions)
    if (!is_normal_form_production(g, p))
      throw Error(ErrorCode::NotNormalForm, "production '" + describe(p) + "' is not in normal form");

  SymbolSet used = g.nonterminals;
  used.insert(g.terminals.begin(), g.terminals.end());
  used.insert(g.flags.begin(), g.flags.end());

  std::map<Symbol, Symbol> hat;
  for (Symbol a : sorted_by_name(g.nonterminals)) hat.emplace(a, take_fresh("^" + a.name(), used));
  const Symbol tilde = take_fresh("~" + g.start.name(), used);
  const Symbol s0 = take_fresh("S0", used);
  const Symbol dollar = take_fresh("$", used);

  CycIndexed out{g, tilde, dollar, {}};
  IndexedGrammar& h = out.grammar;
  h.normal_form = false;
  h.start = s0;
  h.flags.insert(dollar);
  h.nonterminals.insert({tilde, s0});
  for (const auto& [_, x] : hat) {
    h.nonterminals.insert(x);
    out.hats.insert(x);
  }

  auto& P = h.productions;
  P.push_back(plain_production(s0, Word{g.start}));
  P.push_back(push_production(s0, dollar, tilde));
  P.push_back(pop_production(hat.at(g.start), dollar, Word{}));
  for (Symbol f : sorted_by_name(g.flags)) P.push_back(push_production(tilde, f, tilde));
  for (const Production& p : g.productions) {
    const Symbol A = p.lhs;
    switch (p.kind) {
      case ProductionKind::Push:
        P.push_back(pop_production(hat.at(p.rhs[0]), *p.flag, Word{hat.at(A)}));
        break;
      case ProductionKind::Pop:
        P.push_back(push_production(hat.at(p.rhs[0]), *p.flag, hat.at(A)));
        break;
      case ProductionKind::Plain:
        if (p.rhs.size() == 1) {
          P.push_back(plain_production(tilde, Word{p.rhs[0], hat.at(A)}));
        } else if (p.rhs.size() == 2) {
          const Symbol B = p.rhs[0];
          const Symbol C = p.rhs[1];
          P.push_back(plain_production(hat.at(B), Word{C, hat.at(A)}));
          P.push_back(plain_production(hat.at(C), Word{hat.at(A), B}));
        }
        break;
    }
  }
  return out;
}

IndexedGrammar cyc_indexed(const IndexedGrammar& g) { return cyc_indexed_parts(g).grammar; }

}  // namespace permgram
