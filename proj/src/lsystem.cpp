#include "permgram/lsystem.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "form_hash.hpp"

namespace permgram {

void Table::add(Symbol lhs, Word rhs) {
  auto& list = rules[lhs];
  auto it = std::lower_bound(list.begin(), list.end(), rhs);
  if (it == list.end() || *it != rhs) list.insert(it, std::move(rhs));
}

std::vector<Word> Table::rules_for(Symbol c) const {
  if (auto it = rules.find(c); it != rules.end()) return it->second;
  return {Word{c}};
}

std::size_t Table::rule_count() const {
  std::size_t n = 0;
  for (const auto& [_, list] : rules) n += list.size();
  return n;
}

std::size_t Table::max_rhs_length() const {
  std::size_t m = 0;
  for (const auto& [_, list] : rules)
    for (const Word& w : list) m = std::max(m, w.size());
  return m;
}

SymbolSet LSystem::nonterminals() const {
  SymbolSet out;
  std::set_difference(alphabet.begin(), alphabet.end(), terminals.begin(), terminals.end(),
                      std::inserter(out, out.end()));
  return out;
}

std::size_t LSystem::max_rhs_length() const {
  std::size_t m = alphabet.empty() ? 0 : 1;
  for (const Table& t : tables) m = std::max(m, t.max_rhs_length());
  return m;
}

std::size_t LSystem::rule_count() const {
  std::size_t n = 0;
  for (const Table& t : tables) n += t.rule_count();
  return n;
}

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(),
                      [](const Issue& i) { return i.severity == Severity::Error; });
}

bool ValidationReport::has(std::string_view kind) const {
  return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.kind == kind; });
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const Issue& i : issues)
    out << (i.severity == Severity::Error ? "error" : "info") << " [" << i.kind << "] " << i.message
        << '\n';
  if (ok()) out << "valid\n";
  return out.str();
}

ValidationReport validate(const LSystem& h) {
  ValidationReport report;
  auto error = [&](std::string kind, std::string msg) {
    report.issues.push_back({Severity::Error, std::move(kind), std::move(msg)});
  };
  for (Symbol t : h.terminals)
    if (!h.alphabet.contains(t)) error("alphabet", "terminal '" + t.name() + "' not in alphabet");
  auto check_word = [&](const Word& w, const std::string& where) {
    for (Symbol s : w)
      if (!h.alphabet.contains(s)) error("alphabet", "symbol '" + s.name() + "' in " + where + " not in alphabet");
  };
  for (const Word& w : h.axioms) check_word(w, "axiom '" + format_word(w) + "'");
  for (const Table& t : h.tables) {
    for (const auto& [lhs, list] : t.rules) {
      if (!h.alphabet.contains(lhs))
        error("alphabet", "rule head '" + lhs.name() + "' in table " + t.name + " not in alphabet");
      for (const Word& rhs : list) check_word(rhs, "table " + t.name);
      if (h.kind == SystemKind::EDT0L && list.size() > 1)
        error("determinism", "table " + t.name + " has " + std::to_string(list.size()) +
                                 " rules for '" + lhs.name() + "'");
    }
  }

  SymbolSet reached;
  std::vector<Symbol> work;
  auto reach = [&](Symbol s) {
    if (reached.insert(s).second) work.push_back(s);
  };
  for (const Word& w : h.axioms)
    for (Symbol s : w) reach(s);
  while (!work.empty()) {
    Symbol s = work.back();
    work.pop_back();
    for (const Table& t : h.tables)
      if (auto it = t.rules.find(s); it != t.rules.end())
        for (const Word& rhs : it->second)
          for (Symbol x : rhs) reach(x);
  }
  for (Symbol s : sorted_by_name(h.alphabet))
    if (!reached.contains(s))
      report.issues.push_back({Severity::Info, "unreachable", "symbol '" + s.name() + "' is unreachable"});
  return report;
}

std::set<Word> step(const LSystem& h, const Word& u, std::size_t table_index) {
  if (table_index >= h.tables.size())
    throw Error(ErrorCode::InvalidArgument, "table index out of range");
  const Table& table = h.tables[table_index];
  std::set<Word> out;
  Word buffer;
  std::vector<std::vector<Word>> options;
  options.reserve(u.size());
  for (Symbol c : u) options.push_back(table.rules_for(c));
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == u.size()) {
      out.insert(buffer);
      return;
    }
    for (const Word& rhs : options[pos]) {
      const std::size_t mark = buffer.size();
      buffer.insert(buffer.end(), rhs.begin(), rhs.end());
      rec(pos + 1);
      buffer.erase(buffer.begin() + static_cast<std::ptrdiff_t>(mark), buffer.end());
    }
  };
  rec(0);
  return out;
}

void EnumerationCaps::check() const {
  if (max_form_len < max_word_len)
    throw Error(ErrorCode::CapsInvalid, "max_form_len (" + std::to_string(max_form_len) +
                                            ") must be >= max_word_len (" +
                                            std::to_string(max_word_len) + ")");
}

namespace {

using Form = std::vector<std::uint32_t>;
using RuleList = std::vector<Form>;

constexpr std::size_t kInfYield = SIZE_MAX / 4;

/// Dense, read-only encoding of a system used by the breadth-first search.
class CompiledSystem {
 public:
  explicit CompiledSystem(const LSystem& h) {
    for (Symbol s : h.alphabet) dense_of(s);
    for (const Word& w : h.axioms)
      for (Symbol s : w) dense_of(s);
    for (const Table& t : h.tables)
      for (const auto& [lhs, list] : t.rules) {
        dense_of(lhs);
        for (const Word& rhs : list)
          for (Symbol s : rhs) dense_of(s);
      }
    const std::size_t n = symbols_.size();
    terminal_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) terminal_[i] = h.terminals.contains(symbols_[i]);
    compute_productive(h);
    compute_yield(h);

    std::map<RuleList, std::uint32_t> interned;
    auto intern = [&](RuleList list) {
      auto [it, inserted] = interned.try_emplace(list, static_cast<std::uint32_t>(lists_.size()));
      if (inserted) {
        std::size_t min_len = SIZE_MAX;
        std::size_t min_yield = SIZE_MAX;
        for (const Form& f : list) {
          min_len = std::min(min_len, f.size());
          min_yield = std::min(min_yield, yield_of(f));
        }
        min_len_.push_back(list.empty() ? 0 : min_len);
        min_yield_.push_back(list.empty() ? 0 : min_yield);
        lists_.push_back(std::move(list));
      }
      return it->second;
    };
    identity_.resize(n);
    for (std::uint32_t s = 0; s < n; ++s) identity_[s] = intern(RuleList{Form{s}});
    tables_.resize(h.tables.size());
    for (std::size_t t = 0; t < h.tables.size(); ++t) {
      auto& entries = tables_[t];
      for (const auto& [lhs, list] : h.tables[t].rules) {
        RuleList live;
        for (const Word& rhs : list) {
          Form f = encode(rhs);
          if (std::none_of(f.begin(), f.end(), [&](std::uint32_t x) { return !productive_[x]; }))
            live.push_back(std::move(f));
        }
        std::sort(live.begin(), live.end());
        entries.emplace_back(dense_.at(lhs.id()), intern(std::move(live)));
      }
      std::sort(entries.begin(), entries.end());
    }

    words_ = (tables_.size() + 63) / 64;
    usable_.assign(n, std::vector<std::uint64_t>(words_, ~std::uint64_t{0}));
    for (std::size_t t = 0; t < tables_.size(); ++t)
      for (const auto& [lhs, list] : tables_[t])
        if (lists_[list].empty()) usable_[lhs][t / 64] &= ~(std::uint64_t{1} << (t % 64));
    deterministic_ = std::all_of(lists_.begin(), lists_.end(), [](const RuleList& l) { return l.size() <= 1; });
  }

  std::size_t table_count() const { return tables_.size(); }
  std::size_t table_words() const { return words_; }
  /// Bit set of the tables that leave symbol `s` alive.
  const std::vector<std::uint64_t>& usable(std::uint32_t s) const { return usable_[s]; }
  /// At most one live right-hand side per symbol and table.
  bool deterministic() const { return deterministic_; }
  std::size_t symbol_count() const { return symbols_.size(); }
  bool productive(std::uint32_t s) const { return productive_[s]; }
  bool terminal(std::uint32_t s) const { return terminal_[s]; }
  std::uint32_t identity(std::uint32_t s) const { return identity_[s]; }
  const RuleList& list(std::uint32_t id) const { return lists_[id]; }
  std::size_t min_len(std::uint32_t id) const { return min_len_[id]; }
  std::size_t min_yield(std::uint32_t id) const { return min_yield_[id]; }

  /// Lower bound on the length of any terminal word derivable from `f`.
  std::size_t yield_of(const Form& f) const {
    std::size_t n = 0;
    for (std::uint32_t x : f) n = std::min(n + yield_[x], kInfYield);
    return n;
  }

  std::uint32_t list_of(std::size_t table, std::uint32_t s) const {
    const auto& entries = tables_[table];
    auto it = std::lower_bound(entries.begin(), entries.end(), std::pair<std::uint32_t, std::uint32_t>{s, 0});
    if (it != entries.end() && it->first == s) return it->second;
    return identity_[s];
  }

  Form encode(const Word& w) const {
    Form f;
    f.reserve(w.size());
    for (Symbol s : w) f.push_back(dense_.at(s.id()));
    return f;
  }

  Word decode(const Form& f) const {
    Word w;
    w.reserve(f.size());
    for (std::uint32_t x : f) w.push_back(symbols_[x]);
    return w;
  }

 private:
  std::uint32_t dense_of(Symbol s) {
    auto [it, inserted] = dense_.try_emplace(s.id(), static_cast<std::uint32_t>(symbols_.size()));
    if (inserted) symbols_.push_back(s);
    return it->second;
  }

  void compute_productive(const LSystem& h) {
    productive_ = terminal_;
    std::vector<std::pair<std::uint32_t, Form>> rules;
    for (const Table& t : h.tables)
      for (const auto& [lhs, list] : t.rules)
        for (const Word& rhs : list) rules.emplace_back(dense_.at(lhs.id()), encode(rhs));
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [lhs, rhs] : rules) {
        if (productive_[lhs]) continue;
        if (std::all_of(rhs.begin(), rhs.end(), [&](std::uint32_t x) { return productive_[x] != 0; })) {
          productive_[lhs] = 1;
          changed = true;
        }
      }
    }
  }

  // Shortest terminal word per symbol when every occurrence may pick its own
  // table sequence; a lower bound on the synchronized value.
  void compute_yield(const LSystem& h) {
    yield_.assign(symbols_.size(), kInfYield);
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (terminal_[i]) yield_[i] = 1;
    std::vector<std::pair<std::uint32_t, Form>> rules;
    for (const Table& t : h.tables)
      for (const auto& [lhs, list] : t.rules)
        for (const Word& rhs : list) rules.emplace_back(dense_.at(lhs.id()), encode(rhs));
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [lhs, rhs] : rules) {
        const std::size_t y = yield_of(rhs);
        if (y < yield_[lhs]) {
          yield_[lhs] = y;
          changed = true;
        }
      }
    }
  }

  std::vector<Symbol> symbols_;
  std::unordered_map<std::uint32_t, std::uint32_t> dense_;
  std::vector<char> terminal_;
  std::vector<char> productive_;
  std::vector<RuleList> lists_;
  std::vector<std::size_t> min_len_;
  std::vector<std::size_t> min_yield_;
  std::vector<std::size_t> yield_;
  std::vector<std::uint32_t> identity_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> tables_;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> usable_;
  bool deterministic_ = false;
};

/// Tables restricted to one set of distinct symbols, deduplicated.
struct Behaviour {
  std::vector<std::uint32_t> lists;  // aligned with the symbol key
  std::size_t table;
};

class Search {
 public:
  Search(const CompiledSystem& sys, const EnumerationCaps& caps, bool record_parents)
      : sys_(sys), caps_(caps), record_parents_(record_parents) {}

  EnumerationResult run(const LSystem& h, const Form* target = nullptr) {
    EnumerationResult result;
    std::vector<Form> axioms;
    for (const Word& w : h.axioms) {
      Form f = sys_.encode(w);
      if (!all_productive(f) || sys_.yield_of(f) > caps_.max_word_len) continue;
      if (f.size() > caps_.max_form_len) {
        result.truncated = true;
        continue;
      }
      axioms.push_back(std::move(f));
    }
    if (sys_.deterministic() && !caps_.max_steps) result.truncated = mark_live_counts(axioms) || result.truncated;

    std::vector<Form> frontier;
    for (Form& f : axioms)
      if (admit(f) && visited_.insert(f).second) {
        note_word(f, result);
        frontier.push_back(std::move(f));
      }
    std::size_t depth = 0;
    while (!frontier.empty()) {
      if (target && visited_.contains(*target)) break;
      if (caps_.max_steps && depth >= *caps_.max_steps) {
        result.truncated = true;
        break;
      }
      std::vector<Form> next;
      for (const Form& form : frontier) expand(form, next, result);
      frontier = std::move(next);
      ++depth;
    }
    result.explored = visited_.size();
    return result;
  }

  const std::unordered_map<Form, std::pair<Form, std::size_t>, FormHash>& parents() const {
    return parents_;
  }

 private:
  bool all_productive(const Form& f) const {
    return std::all_of(f.begin(), f.end(), [&](std::uint32_t x) { return sys_.productive(x); });
  }

  bool all_terminal(const Form& f) const {
    return std::all_of(f.begin(), f.end(), [&](std::uint32_t x) { return sys_.terminal(x); });
  }

  void note_word(const Form& f, EnumerationResult& result) const {
    if (f.size() <= caps_.max_word_len && all_terminal(f)) result.words.insert(sys_.decode(f));
  }

  static Form symbol_key(const Form& form) {
    Form key = form;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    return key;
  }

  /// Symbol, count pairs of `form`, sorted by symbol.
  static Form counts_of(const Form& form) {
    Form sorted = form;
    std::sort(sorted.begin(), sorted.end());
    Form out;
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      out.push_back(sorted[i]);
      out.push_back(static_cast<std::uint32_t>(j - i));
      i = j;
    }
    return out;
  }

  bool admit(const Form& f) const { return !prune_by_counts_ || live_counts_.contains(counts_of(f)); }

  /// With one right-hand side per symbol, the symbol counts of a successor
  /// depend only on the counts of the form, and so does the length of every
  /// word it can reach. Explores the count vectors within the caps and keeps
  /// those that reach a terminal one; returns whether a cap cut anything off.
  bool mark_live_counts(const std::vector<Form>& axioms) {
    bool truncated = false;
    std::vector<Form> nodes;
    std::unordered_map<Form, std::uint32_t, FormHash> ids;
    std::vector<std::vector<std::uint32_t>> preds;
    auto intern = [&](Form c) {
      auto [it, inserted] = ids.try_emplace(c, static_cast<std::uint32_t>(nodes.size()));
      if (inserted) {
        nodes.push_back(std::move(c));
        preds.emplace_back();
      }
      return it->second;
    };
    for (const Form& f : axioms) intern(counts_of(f));

    std::vector<std::uint32_t> scratch(sys_.symbol_count(), 0);
    Form touched;
    Form key;
    for (std::uint32_t x = 0; x < nodes.size(); ++x) {
      key.clear();
      for (std::size_t i = 0; i < nodes[x].size(); i += 2) key.push_back(nodes[x][i]);
      const std::vector<Behaviour> options = distinct_behaviours(key);
      for (const Behaviour& b : options) {
        const Form& c = nodes[x];
        std::size_t size = 0;
        std::size_t yield = 0;
        for (std::size_t i = 0; i < key.size(); ++i) {
          const std::size_t m = c[2 * i + 1];
          size += m * sys_.min_len(b.lists[i]);
          yield = std::min(yield + m * sys_.min_yield(b.lists[i]), kInfYield);
        }
        if (yield > caps_.max_word_len) continue;
        if (size > caps_.max_form_len) {
          truncated = true;
          continue;
        }
        touched.clear();
        for (std::size_t i = 0; i < key.size(); ++i)
          for (std::uint32_t y : sys_.list(b.lists[i]).front()) {
            if (scratch[y] == 0) touched.push_back(y);
            scratch[y] += c[2 * i + 1];
          }
        std::sort(touched.begin(), touched.end());
        Form next;
        for (std::uint32_t y : touched) {
          next.push_back(y);
          next.push_back(scratch[y]);
          scratch[y] = 0;
        }
        const std::uint32_t to = intern(std::move(next));
        preds[to].push_back(x);
      }
    }

    std::vector<char> live(nodes.size(), 0);
    std::vector<std::uint32_t> work;
    for (std::uint32_t x = 0; x < nodes.size(); ++x) {
      bool terminal = true;
      for (std::size_t i = 0; i < nodes[x].size(); i += 2) terminal = terminal && sys_.terminal(nodes[x][i]);
      if (terminal) {
        live[x] = 1;
        work.push_back(x);
      }
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
    for (std::uint32_t x = 0; x < nodes.size(); ++x)
      if (live[x]) live_counts_.insert(std::move(nodes[x]));
    prune_by_counts_ = true;
    return truncated;
  }

  const std::vector<Behaviour>& behaviours(const Form& key) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, distinct_behaviours(key)).first->second;
  }

  std::vector<Behaviour> distinct_behaviours(const Form& key) const {
    std::vector<Behaviour> out;
    std::unordered_set<Form, FormHash> seen;
    std::vector<std::uint64_t> usable(sys_.table_words(), ~std::uint64_t{0});
    for (std::uint32_t s : key) {
      const auto& bits = sys_.usable(s);
      for (std::size_t w = 0; w < usable.size(); ++w) usable[w] &= bits[w];
    }
    Form sig(key.size());
    for (std::size_t w = 0; w < usable.size(); ++w) {
      for (std::uint64_t bits = usable[w]; bits; bits &= bits - 1) {
        const std::size_t t = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        if (t >= sys_.table_count()) break;
        bool identity = true;
        for (std::size_t i = 0; i < key.size(); ++i) {
          sig[i] = sys_.list_of(t, key[i]);
          identity = identity && sig[i] == sys_.identity(key[i]);
        }
        if (!identity && seen.insert(sig).second) out.push_back({sig, t});
      }
    }
    return out;
  }

  void expand(const Form& form, std::vector<Form>& next, EnumerationResult& result) {
    const Form key = symbol_key(form);
    const auto& options = behaviours(key);
    std::vector<std::uint32_t> pos_list(form.size());
    std::vector<std::size_t> suffix_min(form.size() + 1);
    std::vector<std::size_t> suffix_yield(form.size() + 1);
    Form buffer;
    for (const Behaviour& b : options) {
      for (std::size_t i = 0; i < form.size(); ++i) {
        auto k = std::lower_bound(key.begin(), key.end(), form[i]) - key.begin();
        pos_list[i] = b.lists[static_cast<std::size_t>(k)];
      }
      suffix_min[form.size()] = 0;
      suffix_yield[form.size()] = 0;
      for (std::size_t i = form.size(); i-- > 0;) {
        suffix_min[i] = suffix_min[i + 1] + sys_.min_len(pos_list[i]);
        suffix_yield[i] = std::min(suffix_yield[i + 1] + sys_.min_yield(pos_list[i]), kInfYield);
      }
      if (suffix_yield[0] > caps_.max_word_len) continue;
      if (suffix_min[0] > caps_.max_form_len) {
        result.truncated = true;
        continue;
      }
      buffer.clear();
      Bounds bounds{suffix_min, suffix_yield};
      build(form, 0, pos_list, bounds, buffer, 0, b.table, next, result);
    }
  }

  struct Bounds {
    const std::vector<std::size_t>& len;
    const std::vector<std::size_t>& yield;
  };

  void build(const Form& form, std::size_t pos, const std::vector<std::uint32_t>& pos_list, const Bounds& bounds,
             Form& buffer, std::size_t buffer_yield, std::size_t table, std::vector<Form>& next,
             EnumerationResult& result) {
    if (pos == form.size()) {
      if (!admit(buffer)) return;
      if (visited_.insert(buffer).second) {
        note_word(buffer, result);
        if (record_parents_) parents_.emplace(buffer, std::make_pair(form, table));
        next.push_back(buffer);
      }
      return;
    }
    for (const Form& rhs : sys_.list(pos_list[pos])) {
      const std::size_t y = buffer_yield + sys_.yield_of(rhs);
      if (y + bounds.yield[pos + 1] > caps_.max_word_len) continue;
      if (buffer.size() + rhs.size() + bounds.len[pos + 1] > caps_.max_form_len) {
        result.truncated = true;
        continue;
      }
      const std::size_t mark = buffer.size();
      buffer.insert(buffer.end(), rhs.begin(), rhs.end());
      build(form, pos + 1, pos_list, bounds, buffer, y, table, next, result);
      buffer.resize(mark);
    }
  }

  const CompiledSystem& sys_;
  EnumerationCaps caps_;
  bool record_parents_;
  bool prune_by_counts_ = false;
  std::unordered_set<Form, FormHash> live_counts_;
  std::unordered_set<Form, FormHash> visited_;
  std::unordered_map<Form, std::vector<Behaviour>, FormHash> cache_;
  std::unordered_map<Form, std::pair<Form, std::size_t>, FormHash> parents_;
};

}  // namespace

EnumerationResult enumerate(const LSystem& h, const EnumerationCaps& caps) {
  caps.check();
  CompiledSystem sys(h);
  Search search(sys, caps, false);
  return search.run(h);
}

std::optional<Witness> find_witness(const LSystem& h, const Word& w, const EnumerationCaps& caps) {
  caps.check();
  CompiledSystem sys(h);
  Search search(sys, caps, true);
  for (Symbol s : w)
    if (!h.alphabet.contains(s)) return std::nullopt;
  const Form target = sys.encode(w);
  EnumerationResult result = search.run(h, &target);
  if (!result.words.contains(w)) return std::nullopt;
  Witness witness;
  Form cur = target;
  const auto& parents = search.parents();
  while (true) {
    auto it = parents.find(cur);
    if (it == parents.end()) break;
    witness.steps.push_back({it->second.second, sys.decode(cur)});
    cur = it->second.first;
  }
  witness.axiom = sys.decode(cur);
  std::reverse(witness.steps.begin(), witness.steps.end());
  return witness;
}

Membership contains_bounded(const LSystem& h, const Word& w, const EnumerationCaps& caps) {
  caps.check();
  if (w.size() > caps.max_word_len)
    throw Error(ErrorCode::CapsInvalid, "word longer than max_word_len");
  return enumerate(h, caps).words.contains(w) ? Membership::Yes : Membership::NoWithinCaps;
}

}  // namespace permgram
