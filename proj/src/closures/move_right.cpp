#include <algorithm>
#include <array>

#include "internal.hpp"

namespace permgram {

namespace {

enum Klass : int { kEps = 0, kA = 1, kB = 2, kAB = 3 };

struct SplitRule {
  Symbol lhs;
  Word fused_part;  // x A B y
  Word middle;      // w
};

struct SideRule {
  Symbol lhs;
  Word kept;   // x A' (resp. B' y)
  Word moved;  // u (resp. v)
};

/// With `erase_markers`, the finishing table sends the phase symbols straight
/// to the empty word instead of to the terminals p and q.
MarkedMoveSystem build_marked(const AnnotatedSystem& annotated, const MoveRightOptions& options, bool erase_markers) {
  const LSystem& h = annotated.system;
  const AbMorphism& phi = annotated.phi;
  const bool guard = options.phase_guard;

  auto klass = [&](Symbol s) {
    const Word& img = phi.image(s);
    if (img.empty()) return kEps;
    if (img.size() == 2) return kAB;
    return img.front() == phi.a ? kA : kB;
  };
  auto find_klass = [&](const Word& w, Klass k) {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (klass(w[i]) == k) return static_cast<std::ptrdiff_t>(i);
    return std::ptrdiff_t{-1};
  };

  SymbolSet used = h.alphabet;
  const Symbol p = take_fresh("p", used);
  const Symbol q = take_fresh("q", used);
  const Symbol p_wait = guard ? take_fresh("p!w", used) : p;
  const Symbol p_done = guard ? take_fresh("p!d", used) : p;
  const Symbol q_open = guard ? take_fresh("q!", used) : q;
  std::array<Symbol, 4> poison = {p, p, p, p};
  if (guard)
    poison = {take_fresh("_BOT|e", used), take_fresh("_BOT|a", used), take_fresh("_BOT|b", used),
              take_fresh("_BOT|ab", used)};

  MarkedMoveSystem out{LSystem{}, phi, p, q};
  LSystem& sys = out.system;
  sys.kind = h.kind;
  sys.terminals = h.terminals;
  sys.alphabet = h.alphabet;
  if (!erase_markers) {
    sys.terminals.insert({p, q});
    sys.alphabet.insert({p, q});
  }
  sys.alphabet.insert({p_wait, p_done, q_open});
  if (guard) sys.alphabet.insert(poison.begin(), poison.end());
  for (Symbol s : {p, q, p_wait, p_done, q_open}) out.phi.images[s] = Word{};
  const std::array<Word, 4> klass_word = {Word{}, Word{phi.a}, Word{phi.b}, Word{phi.a, phi.b}};
  if (guard)
    for (int k = 0; k < 4; ++k) out.phi.images[poison[k]] = klass_word[k];

  for (const Word& w : h.axioms) {
    const auto c = find_klass(w, kAB);
    Word marked;
    if (c >= 0) {
      marked = w;
      marked.insert(marked.end(), {p_wait, q_open});
    } else {
      const auto ia = find_klass(w, kA);
      const auto ib = find_klass(w, kB);
      if (ia < 0 || ib < ia) throw Error(ErrorCode::NotAbLanguage, "axiom '" + format_word(w) + "' is not an (a,b)-form");
      marked.assign(w.begin(), w.begin() + ia + 1);
      marked.insert(marked.end(), w.begin() + ib, w.end());
      marked.push_back(p_done);
      marked.insert(marked.end(), w.begin() + ia + 1, w.begin() + ib);
      marked.push_back(q_open);
    }
    sys.axioms.insert(std::move(marked));
  }

  // Poisons every symbol of `klasses` (and listed extras) left without rules.
  auto close = [&](Table& t, std::initializer_list<int> klasses, std::initializer_list<Symbol> extra) {
    if (!guard) return;
    for (Symbol s : h.alphabet) {
      const int k = klass(s);
      if (std::find(klasses.begin(), klasses.end(), k) == klasses.end()) continue;
      if (!t.has_rules_for(s)) t.add(s, Word{poison[k]});
    }
    for (Symbol s : extra)
      if (sys.alphabet.contains(s) && !t.has_rules_for(s)) t.add(s, Word{poison[kEps]});
  };
  auto add_rule = [](Table& t, Symbol lhs, const Word& rhs) {
    if (!(rhs.size() == 1 && rhs.front() == lhs)) t.add(lhs, rhs);
    else if (!t.has_rules_for(lhs)) t.rules[lhs] = {rhs};
  };

  for (const Table& table : h.tables) {
    Table eps_rules{"", {}};
    std::vector<std::pair<Symbol, Word>> fused;
    std::vector<SplitRule> split;
    std::vector<SideRule> a_rules;
    std::vector<SideRule> b_rules;
    for (Symbol s : h.alphabet) {
      const int k = klass(s);
      for (const Word& rhs : table.rules_for(s)) {
        switch (k) {
          case kEps:
            if (!(rhs.size() == 1 && rhs.front() == s)) eps_rules.add(s, rhs);
            break;
          case kAB: {
            if (find_klass(rhs, kAB) >= 0) {
              fused.emplace_back(s, rhs);
            } else {
              const auto ia = find_klass(rhs, kA);
              const auto ib = find_klass(rhs, kB);
              if (ia < 0 || ib < ia) break;  // not phi-preserving; cannot occur
              Word kept(rhs.begin(), rhs.begin() + ia + 1);
              kept.insert(kept.end(), rhs.begin() + ib, rhs.end());
              split.push_back({s, std::move(kept), Word(rhs.begin() + ia + 1, rhs.begin() + ib)});
            }
            break;
          }
          case kA: {
            const auto i = find_klass(rhs, kA);
            if (i < 0) break;
            a_rules.push_back({s, Word(rhs.begin(), rhs.begin() + i + 1), Word(rhs.begin() + i + 1, rhs.end())});
            break;
          }
          case kB: {
            const auto i = find_klass(rhs, kB);
            if (i < 0) break;
            b_rules.push_back({s, Word(rhs.begin() + i, rhs.end()), Word(rhs.begin(), rhs.begin() + i)});
            break;
          }
        }
      }
    }

    // Fused to fused.
    {
      Table t = eps_rules;
      t.name = table.name + "'";
      for (const auto& [lhs, rhs] : fused) add_rule(t, lhs, rhs);
      close(t, {kA, kB, kAB}, {p_done, p, q});
      sys.tables.push_back(std::move(t));
    }

    // Fused to split, moving the middle factor w behind the marker.
    std::set<Word> middles;
    for (const SplitRule& r : split) middles.insert(r.middle);
    std::size_t n = 0;
    for (const Word& w : middles) {
      Table t = eps_rules;
      t.name = table.name + "'w" + std::to_string(n++);
      for (const SplitRule& r : split)
        if (r.middle == w) add_rule(t, r.lhs, r.fused_part);
      t.add(p_wait, concat(Word{p_done}, w));
      close(t, {kA, kB, kAB}, {p_done, p, q});
      sys.tables.push_back(std::move(t));
    }

    // Split to split: u produced right of A and v left of B move to the
    // ends of the marked factor.
    std::set<Word> us, vs;
    for (const SideRule& r : a_rules) us.insert(r.moved);
    for (const SideRule& r : b_rules) vs.insert(r.moved);
    n = 0;
    for (const Word& u : us)
      for (const Word& v : vs) {
        Table t = eps_rules;
        t.name = table.name + "'uv" + std::to_string(n++);
        for (const SideRule& r : a_rules)
          if (r.moved == u) add_rule(t, r.lhs, r.kept);
        for (const SideRule& r : b_rules)
          if (r.moved == v) add_rule(t, r.lhs, r.kept);
        if (!(u.empty() && !guard)) t.add(p_done, concat(Word{p_done}, u));
        if (!(v.empty() && !guard)) t.add(q_open, concat(v, Word{q_open}));
        close(t, {kA, kB, kAB}, {p_wait, p, q});
        sys.tables.push_back(std::move(t));
      }
  }

  if (guard) {
    Table finish{"mark", {}};
    finish.add(p_done, erase_markers ? Word{} : Word{p});
    finish.add(q_open, erase_markers ? Word{} : Word{q});
    finish.add(p_wait, Word{poison[kEps]});
    // Nothing can follow this table, so it only fires on otherwise
    // terminal forms.
    if (erase_markers)
      for (Symbol s : h.nonterminals())
        if (!finish.has_rules_for(s)) finish.add(s, Word{poison[klass(s)]});
    sys.tables.push_back(std::move(finish));
  }

  // Explicit identities were only kept to block the poisoning pass.
  for (Table& t : sys.tables)
    for (auto it = t.rules.begin(); it != t.rules.end();) {
      if (it->second.size() == 1 && it->second.front() == Word{it->first})
        it = t.rules.erase(it);
      else
        ++it;
    }
  return out;
}

}  // namespace

MarkedMoveSystem marked_move_system(const AnnotatedSystem& annotated, const MoveRightOptions& options) {
  return build_marked(annotated, options, false);
}

LSystem move_right(const LSystem& h, Symbol a, Symbol b, const MoveRightOptions& options) {
  const AnnotatedSystem annotated = annotate_ab(h, a, b, options.check, options.limits);
  if (options.phase_guard) {
    LSystem out = build_marked(annotated, options, true).system;
    return h.kind == SystemKind::EDT0L ? detail::expand_choices(out, options.limits) : reduce(out);
  }
  const MarkedMoveSystem marked = build_marked(annotated, options, false);
  Homomorphism erase = Homomorphism::identity(marked.system.terminals);
  erase.images[marked.p] = Word{};
  erase.images[marked.q] = Word{};
  return reduce(hom_image(marked.system, erase));
}

}  // namespace permgram
