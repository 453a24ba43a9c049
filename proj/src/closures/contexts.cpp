#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <optional>
#include <unordered_map>

#include "form_hash.hpp"
#include "internal.hpp"

namespace permgram::detail {

namespace {

using Form = std::vector<std::uint32_t>;

struct Rewrite {
  std::uint32_t to;
  std::uint32_t table;
};

}  // namespace

LSystem expand_choices(const LSystem& h, const ConstructionLimits& limits, const PoisonFor& poison_for) {
  const std::vector<Symbol> symbols(h.alphabet.begin(), h.alphabet.end());
  std::unordered_map<Symbol, std::uint32_t> dense;
  for (std::uint32_t i = 0; i < symbols.size(); ++i) dense.emplace(symbols[i], i);
  const std::size_t n = symbols.size();
  const SymbolSet productive = productive_symbols(h);

  auto encode = [&](const Word& w) {
    Form f;
    for (Symbol s : w) f.push_back(dense.at(s));
    return f;
  };
  auto live_rhs = [&](const Word& w) {
    return std::all_of(w.begin(), w.end(), [&](Symbol s) { return productive.contains(s); });
  };

  // alt[t][s]: alternatives of symbol s in table t that can still finish.
  std::vector<std::vector<std::vector<Form>>> alt(h.tables.size(), std::vector<std::vector<Form>>(n));
  for (std::size_t t = 0; t < h.tables.size(); ++t)
    for (std::uint32_t s = 0; s < n; ++s)
      for (const Word& rhs : h.tables[t].rules_for(symbols[s]))
        if (live_rhs(rhs)) alt[t][s].push_back(encode(rhs));

  std::vector<Form> states;
  std::unordered_map<Form, std::uint32_t, FormHash> state_id;
  auto intern = [&](Form f) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    auto [it, inserted] = state_id.try_emplace(f, static_cast<std::uint32_t>(states.size()));
    if (inserted) states.push_back(std::move(f));
    return it->second;
  };
  std::map<Word, std::uint32_t> axiom_state;
  for (const Word& w : h.axioms)
    if (live_rhs(w)) axiom_state.emplace(w, intern(encode(w)));

  // Distinct rewrites of every reachable context, as interned right-hand
  // sides aligned with the sorted state.
  std::vector<Form> rhs_of;
  std::unordered_map<Form, std::uint32_t, FormHash> rhs_id;
  auto intern_rhs = [&](const Form& f) {
    auto [it, inserted] = rhs_id.try_emplace(f, static_cast<std::uint32_t>(rhs_of.size()));
    if (inserted) rhs_of.push_back(f);
    return it->second;
  };
  std::vector<std::vector<std::vector<std::uint32_t>>> alt_id(h.tables.size(), std::vector<std::vector<std::uint32_t>>(n));
  for (std::size_t t = 0; t < h.tables.size(); ++t)
    for (std::uint32_t s = 0; s < n; ++s)
      for (const Form& f : alt[t][s]) alt_id[t][s].push_back(intern_rhs(f));

  std::vector<std::unordered_map<Form, Rewrite, FormHash>> rewrites;
  std::vector<std::size_t> sizes;
  std::vector<std::uint16_t> pick;
  Form key;
  for (std::uint32_t x = 0; x < states.size(); ++x) {
    rewrites.emplace_back();
    for (std::uint32_t t = 0; t < h.tables.size(); ++t) {
      const Form state = states[x];
      sizes.clear();
      bool dead = false;
      for (std::uint32_t s : state) {
        sizes.push_back(alt[t][s].size());
        dead = dead || sizes.back() == 0;
      }
      if (dead) continue;
      const std::size_t total = choice_product(sizes, limits.max_tables);
      if (total > limits.max_tables)
        throw Error(ErrorCode::TooLarge, "table " + h.tables[t].name + " has more than " +
                                             std::to_string(limits.max_tables) + " choices on one context");
      pick.assign(state.size(), 0);
      for (std::size_t k = 0; k < total; ++k) {
        key.clear();
        bool identity = true;
        for (std::size_t i = 0; i < state.size(); ++i) {
          const Form& rhs = alt[t][state[i]][pick[i]];
          key.push_back(alt_id[t][state[i]][pick[i]]);
          identity = identity && rhs.size() == 1 && rhs[0] == state[i];
        }
        if (!identity && !rewrites[x].contains(key)) {
          Form next;
          for (std::uint32_t r : key) next.insert(next.end(), rhs_of[r].begin(), rhs_of[r].end());
          const std::uint32_t to = intern(std::move(next));
          rewrites[x].emplace(key, Rewrite{to, t});
        }
        for (std::size_t i = 0; i < pick.size(); ++i) {
          if (++pick[i] < sizes[i]) break;
          pick[i] = 0;
        }
      }
    }
  }
  rewrites.resize(states.size());

  // A context is live when it is all-terminal or leads to a live context.
  std::vector<char> live(states.size(), 0);
  std::vector<std::vector<std::uint32_t>> preds(states.size());
  for (std::uint32_t x = 0; x < states.size(); ++x)
    for (const auto& [_, r] : rewrites[x]) preds[r.to].push_back(x);
  std::vector<std::uint32_t> work;
  for (std::uint32_t x = 0; x < states.size(); ++x)
    if (std::all_of(states[x].begin(), states[x].end(), [&](std::uint32_t s) { return h.is_terminal(symbols[s]); })) {
      live[x] = 1;
      work.push_back(x);
    }
  while (!work.empty()) {
    const std::uint32_t x = work.back();
    work.pop_back();
    for (std::uint32_t p : preds[x])
      if (!live[p]) {
        live[p] = 1;
        work.push_back(p);
      }
  }

  // allowed[s][r]: tables offering right-hand side r for s, as a bit set.
  const std::size_t words = (h.tables.size() + 63) / 64;
  std::vector<std::unordered_map<std::uint32_t, std::vector<std::uint64_t>>> allowed(n);
  for (std::size_t t = 0; t < h.tables.size(); ++t)
    for (std::uint32_t s = 0; s < n; ++s)
      for (std::uint32_t r : alt_id[t][s]) {
        auto& bits = allowed[s][r];
        bits.resize(words, 0);
        bits[t / 64] |= std::uint64_t{1} << (t % 64);
      }
  std::vector<std::vector<std::uint32_t>> states_with(n);
  for (std::uint32_t x = 0; x < states.size(); ++x)
    for (std::uint32_t s : states[x]) states_with[s].push_back(x);

  // Greedy first-fit merge of the kept rewrites into total tables. A merged
  // table must act on every context inside its domain as some input table
  // could, so no new forms become reachable.
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::vector<std::uint32_t>> groups;
  std::vector<std::uint32_t> first_table;
  std::vector<std::uint32_t> stamp(states.size(), 0);
  std::uint32_t clock = 0;
  std::vector<std::uint64_t> acc(words);
  auto consistent = [&](const std::vector<std::uint32_t>& g, std::uint32_t c) {
    const Form& state = states[c];
    bool identity = true;
    for (std::uint32_t s : state) {
      if (g[s] == kUnset) return true;
      const Form& r = rhs_of[g[s]];
      identity = identity && r.size() == 1 && r[0] == s;
    }
    if (identity) return true;
    std::fill(acc.begin(), acc.end(), ~std::uint64_t{0});
    for (std::uint32_t s : state) {
      auto it = allowed[s].find(g[s]);
      if (it == allowed[s].end()) return false;
      bool any = false;
      for (std::size_t w = 0; w < words; ++w) any |= (acc[w] &= it->second[w]) != 0;
      if (!any) return false;
    }
    return true;
  };

  std::vector<std::uint32_t> order;
  for (std::uint32_t x = 0; x < states.size(); ++x)
    if (live[x]) order.push_back(x);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t l, std::uint32_t r) { return rewrites[l].size() > rewrites[r].size(); });
  std::vector<std::uint32_t> added;
  for (std::uint32_t x : order) {
    std::vector<std::pair<const Form*, std::uint32_t>> keys;
    for (const auto& [k, r] : rewrites[x])
      if (live[r.to]) keys.emplace_back(&k, r.table);
    std::sort(keys.begin(), keys.end(), [](const auto& l, const auto& r) { return *l.first < *r.first; });
    const Form& state = states[x];
    for (const auto& [k, table] : keys) {
      bool placed = false;
      for (auto& g : groups) {
        added.clear();
        bool fits = true;
        for (std::size_t i = 0; i < state.size() && fits; ++i) {
          if (g[state[i]] == kUnset)
            added.push_back(state[i]);
          else
            fits = g[state[i]] == (*k)[i];
        }
        if (!fits) continue;
        for (std::size_t i = 0; i < state.size(); ++i) g[state[i]] = (*k)[i];
        ++clock;
        for (std::uint32_t s : added) {
          for (std::uint32_t c : states_with[s]) {
            if (stamp[c] == clock) continue;
            stamp[c] = clock;
            if (!consistent(g, c)) {
              fits = false;
              break;
            }
          }
          if (!fits) break;
        }
        if (!fits) {
          for (std::uint32_t s : added) g[s] = kUnset;
          continue;
        }
        placed = true;
        break;
      }
      if (!placed) {
        groups.emplace_back(n, kUnset);
        first_table.push_back(table);
        for (std::size_t i = 0; i < state.size(); ++i) groups.back()[state[i]] = (*k)[i];
        if (groups.size() > limits.max_tables)
          throw Error(ErrorCode::TooLarge, "choice expansion exceeds " + std::to_string(limits.max_tables) + " tables");
      }
    }
  }

  LSystem out;
  out.kind = SystemKind::EDT0L;
  out.terminals = h.terminals;
  out.alphabet = h.alphabet;
  SymbolSet used = h.alphabet;
  std::optional<Symbol> poison;
  if (!poison_for) {
    poison = make_poison(used);
    out.alphabet.insert(*poison);
  }
  for (const auto& [w, x] : axiom_state)
    if (live[x]) out.axioms.insert(w);

  auto decode = [&](const Form& f) {
    Word w;
    for (std::uint32_t s : f) w.push_back(symbols[s]);
    return w;
  };
  std::map<std::uint32_t, std::size_t> per_source;
  for (std::uint32_t t : first_table) ++per_source[t];
  std::map<std::uint32_t, std::size_t> numbering;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& g = groups[k];
    const std::string& name = h.tables[first_table[k]].name;
    const std::size_t index = numbering[first_table[k]]++;
    Table table{per_source[first_table[k]] == 1 ? name : name + "." + std::to_string(index), {}};
    for (std::uint32_t s = 0; s < n; ++s) {
      if (g[s] == kUnset) {
        table.add(symbols[s], Word{poison ? *poison : poison_for(symbols[s])});
        continue;
      }
      const Form& rhs = rhs_of[g[s]];
      if (!(rhs.size() == 1 && rhs[0] == s)) table.add(symbols[s], decode(rhs));
    }
    out.tables.push_back(std::move(table));
  }
  return reduce_typed(out, poison_for);
}

}  // namespace permgram::detail
