#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "form_hash.hpp"
#include "permgram/indexed.hpp"

namespace permgram {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

/// Shortest terminal yield per nonterminal with flags ignored. Flags only
/// restrict derivations, so this bounds the true yield from below; kInf marks
/// nonterminals that can never finish.
std::map<Symbol, std::size_t> min_yield(const IndexedGrammar& g) {
  std::map<Symbol, std::size_t> best;
  for (Symbol a : g.nonterminals) best[a] = kInf;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Production& p : g.productions) {
      std::size_t n = 0;
      for (Symbol s : p.rhs) n += g.terminals.contains(s) ? 1 : best[s];
      n = std::min(n, kInf);
      if (n < best[p.lhs]) {
        best[p.lhs] = n;
        changed = true;
      }
    }
  }
  return best;
}

std::vector<std::uint32_t> encode(const IndexedForm& f) {
  std::vector<std::uint32_t> key;
  for (const Atom& a : f) {
    key.push_back(a.symbol.id());
    key.push_back(a.terminal ? std::numeric_limits<std::uint32_t>::max() : static_cast<std::uint32_t>(a.flags.size()));
    for (Symbol x : a.flags) key.push_back(x.id());
  }
  return key;
}

struct Node {
  IndexedForm form;
  std::size_t parent;
  IndexedStep step;
};

class IndexedSearch {
 public:
  IndexedSearch(const IndexedGrammar& g, const IndexedCaps& caps) : g_(g), caps_(caps), yield_(min_yield(g)) {
    caps.check();
  }

  /// Runs until exhaustion, or until `stop` returns true for a node.
  template <class Stop>
  std::optional<std::size_t> run(const FormVisitor& visit, Stop stop) {
    IndexedForm init{{g_.start, {}, false}};
    if (!admit(init)) return std::nullopt;
    nodes_.push_back({std::move(init), 0, {0, 0}});
    seen_.emplace(encode(nodes_.back().form), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const IndexedForm form = nodes_[i].form;
      if (visit) visit(form);
      if (stop(i)) return i;
      if (std::all_of(form.begin(), form.end(), [](const Atom& a) { return a.terminal; })) {
        words_.insert(to_word(form));
        continue;
      }
      // Nonterminals derive independently of each other, so rewriting only
      // the leftmost one reaches every word.
      const std::size_t pos = static_cast<std::size_t>(
          std::find_if(form.begin(), form.end(), [](const Atom& a) { return !a.terminal; }) - form.begin());
      for (std::size_t k = 0; k < g_.productions.size(); ++k) {
        auto next = apply_production(g_, form, pos, k);
        if (!next || !admit(*next)) continue;
        auto key = encode(*next);
        if (seen_.contains(key)) continue;
        seen_.emplace(std::move(key), nodes_.size());
        nodes_.push_back({std::move(*next), i, {pos, k}});
      }
    }
    return std::nullopt;
  }

  EnumerationResult result() const { return {words_, truncated_, nodes_.size()}; }

  IndexedDerivation path_to(std::size_t i) const {
    IndexedDerivation d;
    for (; i != 0; i = nodes_[i].parent) d.push_back(nodes_[i].step);
    std::reverse(d.begin(), d.end());
    return d;
  }

  const IndexedForm& form(std::size_t i) const { return nodes_[i].form; }

 private:
  static Word to_word(const IndexedForm& f) {
    Word w;
    for (const Atom& a : f) w.push_back(a.symbol);
    return w;
  }

  bool admit(const IndexedForm& f) {
    std::size_t terminals = 0;
    std::size_t bound = 0;
    std::size_t depth = 0;
    for (const Atom& a : f) {
      if (a.terminal) {
        ++terminals;
        ++bound;
      } else {
        const std::size_t y = yield_.at(a.symbol);
        if (y >= kInf) return false;
        bound += y;
        depth = std::max(depth, a.flags.size());
      }
    }
    if (terminals > caps_.max_word_len || bound > caps_.max_word_len) return false;
    if (f.size() > caps_.max_form_len || depth > caps_.max_flag_depth) {
      truncated_ = true;
      return false;
    }
    return true;
  }

  const IndexedGrammar& g_;
  IndexedCaps caps_;
  std::map<Symbol, std::size_t> yield_;
  std::vector<Node> nodes_;
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, FormHash> seen_;
  WordSet words_;
  bool truncated_ = false;
};

}  // namespace

EnumerationResult enumerate_indexed(const IndexedGrammar& g, const IndexedCaps& caps, const FormVisitor& visit) {
  IndexedSearch search(g, caps);
  search.run(visit, [](std::size_t) { return false; });
  return search.result();
}

std::optional<IndexedDerivation> find_indexed_derivation(const IndexedGrammar& g, const Word& w,
                                                         const IndexedCaps& caps) {
  IndexedSearch search(g, caps);
  auto hit = search.run(nullptr, [&](std::size_t i) {
    const IndexedForm& f = search.form(i);
    if (f.size() != w.size()) return false;
    for (std::size_t k = 0; k < f.size(); ++k)
      if (!f[k].terminal || f[k].symbol != w[k]) return false;
    return true;
  });
  if (!hit) return std::nullopt;
  return search.path_to(*hit);
}

std::string export_parse_trace(const IndexedGrammar& g, const IndexedDerivation& d,
                               std::optional<std::size_t> skeleton_leaf) {
  std::vector<std::string> label;
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::size_t>> children;
  auto add_node = [&](std::string text, std::size_t up) {
    label.push_back(std::move(text));
    parent.push_back(up);
    children.emplace_back();
    if (up != label.size() - 1) children[up].push_back(label.size() - 1);
    return label.size() - 1;
  };

  IndexedForm form{{g.start, {}, false}};
  std::vector<std::size_t> node_of{add_node(format_atom(form[0]), 0)};
  for (std::size_t n = 0; n < d.size(); ++n) {
    const IndexedStep& s = d[n];
    auto next = apply_production(g, form, s.position, s.production);
    if (!next)
      throw Error(ErrorCode::InvalidWitness, "step " + std::to_string(n + 1) + " (production " +
                                                 std::to_string(s.production) + " at position " +
                                                 std::to_string(s.position) + ") does not apply");
    const std::size_t width = next->size() + 1 - form.size();
    const std::size_t up = node_of[s.position];
    std::vector<std::size_t> fresh;
    for (std::size_t k = 0; k < width; ++k) fresh.push_back(add_node(format_atom((*next)[s.position + k]), up));
    if (width == 0) add_node("()", up);
    node_of.erase(node_of.begin() + static_cast<std::ptrdiff_t>(s.position));
    node_of.insert(node_of.begin() + static_cast<std::ptrdiff_t>(s.position), fresh.begin(), fresh.end());
    form = std::move(*next);
  }

  std::vector<char> keep(label.size(), 1);
  if (skeleton_leaf) {
    if (*skeleton_leaf >= node_of.size())
      throw Error(ErrorCode::InvalidArgument, "leaf " + std::to_string(*skeleton_leaf) + " out of range");
    std::fill(keep.begin(), keep.end(), 0);
    for (std::size_t v = node_of[*skeleton_leaf];; v = parent[v]) {
      keep[v] = 1;
      for (std::size_t c : children[v]) keep[c] = 1;
      if (v == 0) break;
    }
  }

  std::ostringstream out;
  out << "digraph derivation {\n  node [shape=plaintext];\n";
  for (std::size_t v = 0; v < label.size(); ++v) {
    if (!keep[v]) continue;
    std::string text;
    for (char c : label[v]) {
      if (c == '"' || c == '\\') text += '\\';
      text += c;
    }
    out << "  n" << v << " [label=\"" << text << "\"];\n";
  }
  for (std::size_t v = 1; v < label.size(); ++v)
    if (keep[v] && keep[parent[v]]) out << "  n" << parent[v] << " -> n" << v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace permgram
