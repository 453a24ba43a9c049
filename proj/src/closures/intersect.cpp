#include <algorithm>
#include <functional>
#include <unordered_map>

#include "internal.hpp"

namespace permgram {

namespace {

using StateSet = std::vector<char>;

/// (q, c, q') means: c derives a terminal word driving the automaton q -> q'.
struct Triple {
  Symbol symbol;
  std::size_t from;
  std::size_t to;
  auto operator<=>(const Triple&) const = default;
};

class Intersection {
 public:
  Intersection(const LSystem& h, const Dfa& d) : h_(h), d_(d), q_(d.state_count()) {
    for (const Table& t : h.tables)
      for (const auto& [lhs, list] : t.rules)
        for (const Word& rhs : list) distinct_rules_[lhs].insert(rhs);
    compute_productive();
  }

  bool productive(Symbol c, std::size_t from, std::size_t to) const {
    auto it = prod_.find(c);
    return it != prod_.end() && it->second[from * q_ + to];
  }

  /// All annotations of `w` starting in `from` and ending in `to`.
  std::vector<std::vector<Triple>> decompositions(const Word& w, std::size_t from, std::size_t to) const {
    std::vector<std::vector<Triple>> out;
    std::vector<Triple> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t state) {
      if (pos == w.size()) {
        if (state == to) out.push_back(cur);
        return;
      }
      for (std::size_t next = 0; next < q_; ++next) {
        if (!productive(w[pos], state, next)) continue;
        if (pos + 1 == w.size() && next != to) continue;
        cur.push_back({w[pos], state, next});
        rec(pos + 1, next);
        cur.pop_back();
      }
    };
    rec(0, from);
    return out;
  }

 private:
  void compute_productive() {
    for (Symbol c : h_.alphabet) prod_[c].assign(q_ * q_, 0);
    for (Symbol c : h_.terminals) {
      auto& row = prod_[c];
      for (std::size_t q = 0; q < q_; ++q) row[q * q_ + d_.next(q, c)] = 1;
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [lhs, set] : distinct_rules_) {
        auto& row = prod_[lhs];
        for (const Word& rhs : set) {
          for (std::size_t q = 0; q < q_; ++q) {
            StateSet cur(q_, 0);
            cur[q] = 1;
            for (Symbol x : rhs) {
              StateSet next(q_, 0);
              const auto& xr = prod_[x];
              for (std::size_t r = 0; r < q_; ++r)
                if (cur[r])
                  for (std::size_t s = 0; s < q_; ++s)
                    if (xr[r * q_ + s]) next[s] = 1;
              cur = std::move(next);
            }
            for (std::size_t s = 0; s < q_; ++s)
              if (cur[s] && !row[q * q_ + s]) {
                row[q * q_ + s] = 1;
                changed = true;
              }
          }
        }
      }
    }
  }

  const LSystem& h_;
  const Dfa& d_;
  std::size_t q_;
  std::map<Symbol, std::set<Word>> distinct_rules_;
  std::map<Symbol, StateSet> prod_;
};

}  // namespace

LSystem intersect_regular(const LSystem& h, const Dfa& d0, const ConstructionLimits& limits) {
  check_complete(d0);
  const Dfa d = extend_to_alphabet(d0, h.terminals);
  Intersection isect(h, d);

  SymbolSet used = h.alphabet;
  used.insert(d.alphabet.begin(), d.alphabet.end());
  std::map<Triple, Symbol> names;
  std::vector<Triple> work;
  auto name_of = [&](const Triple& t) {
    auto it = names.find(t);
    if (it != names.end()) return it->second;
    Symbol s = take_fresh(t.symbol.name() + "<" + d.state_names[t.from] + "," + d.state_names[t.to] + ">", used);
    names.emplace(t, s);
    work.push_back(t);
    return s;
  };
  auto to_word = [&](const std::vector<Triple>& ts) {
    Word w;
    for (const Triple& t : ts) w.push_back(name_of(t));
    return w;
  };

  LSystem out;
  out.kind = h.kind;
  out.terminals = h.terminals;
  for (const Word& w : h.axioms)
    for (std::size_t acc : d.accepting)
      for (const auto& dec : isect.decompositions(w, d.start, acc)) out.axioms.insert(to_word(dec));

  // Discover reachable triples and their per-table decompositions.
  std::map<Triple, std::vector<std::vector<Word>>> per_table;
  while (!work.empty()) {
    const Triple t = work.back();
    work.pop_back();
    auto& slots = per_table[t];
    slots.resize(h.tables.size());
    for (std::size_t i = 0; i < h.tables.size(); ++i)
      for (const Word& rhs : h.tables[i].rules_for(t.symbol))
        for (const auto& dec : isect.decompositions(rhs, t.from, t.to)) slots[i].push_back(to_word(dec));
  }

  const Symbol poison = detail::make_poison(used);
  for (std::size_t i = 0; i < h.tables.size(); ++i) {
    Table fixed{h.tables[i].name, {}};
    for (const auto& [t, slots] : per_table) {
      const Symbol lhs = names.at(t);
      std::vector<Word> alts = slots[i];
      std::sort(alts.begin(), alts.end());
      alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
      if (alts.empty()) {
        fixed.add(lhs, Word{poison});
      } else {
        if (alts.size() == 1 && alts.front() == Word{lhs}) continue;
        for (Word& w : alts) fixed.add(lhs, std::move(w));
      }
    }
    out.tables.push_back(std::move(fixed));
  }

  Table finish{"fin", {}};
  for (const auto& [t, sym] : names) {
    if (h.terminals.contains(t.symbol) && d.next(t.from, t.symbol) == t.to)
      finish.add(sym, Word{t.symbol});
    else
      finish.add(sym, Word{poison});
  }
  out.tables.push_back(std::move(finish));

  for (const auto& [_, sym] : names) out.alphabet.insert(sym);
  out.alphabet.insert(out.terminals.begin(), out.terminals.end());
  out.alphabet.insert(poison);
  return h.kind == SystemKind::EDT0L ? detail::expand_choices(out, limits) : reduce(out);
}

}  // namespace permgram
