#include "permgram/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>
#include <sstream>

namespace permgram {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(begin, end - begin);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      std::string tok(raw.substr(i, j - i));
      if (tok == "#") break;
      line.tokens.push_back({std::move(tok), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    begin = end + 1;
  }
  return out;
}

[[noreturn]] void syntax_error(std::size_t line, std::size_t column, const std::string& msg) {
  throw Error(ErrorCode::SyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

Symbol symbol_at(const Line& line, const Token& t) {
  if (!is_valid_symbol_name(t.text)) syntax_error(line.number, t.column, "invalid symbol '" + t.text + "'");
  return Symbol(t.text);
}

/// Tokens [from, to) as a word; "()" tokens are skipped.
Word word_at(const Line& line, std::size_t from, std::size_t to) {
  Word w;
  for (std::size_t i = from; i < to; ++i) {
    if (line.tokens[i].text == "()") continue;
    w.push_back(symbol_at(line, line.tokens[i]));
  }
  return w;
}

SymbolSet symbols_after_keyword(const Line& line) {
  SymbolSet out;
  for (std::size_t i = 1; i < line.tokens.size(); ++i) out.insert(symbol_at(line, line.tokens[i]));
  return out;
}

std::size_t arrow_index(const Line& line) {
  for (std::size_t i = 0; i < line.tokens.size(); ++i)
    if (line.tokens[i].text == "->") return i;
  syntax_error(line.number, line.tokens.front().column, "expected '->'");
}

std::string rest_of_line(const Line& line, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < line.tokens.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += line.tokens[i].text;
  }
  return out;
}

void expect_header(const std::vector<Line>& lines, std::initializer_list<std::string_view> allowed) {
  if (lines.empty()) throw Error(ErrorCode::SyntaxError, "line 1, column 1: empty file");
  const Line& first = lines.front();
  const std::string& h = first.tokens.front().text;
  if (std::find(allowed.begin(), allowed.end(), h) == allowed.end() || first.tokens.size() != 1)
    syntax_error(first.number, first.tokens.front().column, "unexpected header '" + h + "'");
}

std::string join_names(const std::vector<Symbol>& syms) {
  std::string out;
  for (Symbol s : syms) out += " " + s.name();
  return out;
}

std::string word_text(const Word& w) { return w.empty() ? "()" : format_word(w); }

bool name_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), NameLess{});
}

/// Splits "A[f]" into (A, f).
std::optional<std::pair<std::string, std::string>> split_flagged(const std::string& tok) {
  if (tok.size() < 4 || tok.back() != ']') return std::nullopt;
  const auto open = tok.find('[');
  if (open == std::string::npos || open == 0 || open + 2 > tok.size() - 1) return std::nullopt;
  return std::make_pair(tok.substr(0, open), tok.substr(open + 1, tok.size() - open - 2));
}

}  // namespace

LSystem parse_lsystem(std::string_view text) {
  const auto lines = lex(text);
  expect_header(lines, {"@etol", "@edt0l"});
  LSystem h;
  h.kind = lines.front().tokens.front().text == "@edt0l" ? SystemKind::EDT0L : SystemKind::ET0L;
  SymbolSet nonterminals;
  bool saw_axioms = false;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string& head = line.tokens.front().text;
    if (head == "@terminals") {
      h.terminals.merge(symbols_after_keyword(line));
    } else if (head == "@nonterminals") {
      nonterminals.merge(symbols_after_keyword(line));
    } else if (head == "@axioms") {
      saw_axioms = true;
      std::size_t from = 1;
      for (std::size_t i = 1; i <= line.tokens.size(); ++i) {
        if (i == line.tokens.size() || line.tokens[i].text == ";") {
          if (i == from) syntax_error(line.number, i < line.tokens.size() ? line.tokens[i].column : 1,
                                      "empty axiom, write () for the empty word");
          h.axioms.insert(word_at(line, from, i));
          from = i + 1;
        }
      }
    } else if (head == "@table") {
      if (line.tokens.size() < 2) syntax_error(line.number, line.tokens.front().column, "table needs a name");
      h.tables.push_back({rest_of_line(line, 1), {}});
    } else if (head.front() == '@') {
      syntax_error(line.number, line.tokens.front().column, "unknown section '" + head + "'");
    } else {
      if (h.tables.empty()) syntax_error(line.number, line.tokens.front().column, "rule outside of a table");
      const std::size_t arrow = arrow_index(line);
      if (arrow != 1) syntax_error(line.number, line.tokens.front().column, "rule needs exactly one left-hand symbol");
      h.tables.back().add(symbol_at(line, line.tokens[0]), word_at(line, 2, line.tokens.size()));
    }
  }
  if (!saw_axioms) throw Error(ErrorCode::SyntaxError, "missing @axioms");
  for (Symbol s : sorted_by_name(nonterminals))
    if (h.terminals.contains(s))
      throw Error(ErrorCode::SemanticError, "'" + s.name() + "' declared both terminal and nonterminal");
  h.alphabet = h.terminals;
  h.alphabet.merge(nonterminals);
  return h;
}

IndexedGrammar parse_indexed(std::string_view text) {
  const auto lines = lex(text);
  expect_header(lines, {"@indexed"});
  IndexedGrammar g;
  bool in_productions = false;
  bool saw_start = false;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string& head = line.tokens.front().text;
    if (head == "@terminals") {
      g.terminals.merge(symbols_after_keyword(line));
    } else if (head == "@nonterminals") {
      g.nonterminals.merge(symbols_after_keyword(line));
    } else if (head == "@flags") {
      g.flags.merge(symbols_after_keyword(line));
    } else if (head == "@start") {
      if (line.tokens.size() != 2) syntax_error(line.number, line.tokens.front().column, "@start takes one symbol");
      g.start = symbol_at(line, line.tokens[1]);
      saw_start = true;
    } else if (head == "@normal-form") {
      g.normal_form = true;
    } else if (head == "@productions") {
      in_productions = true;
    } else if (head.front() == '@') {
      syntax_error(line.number, line.tokens.front().column, "unknown section '" + head + "'");
    } else {
      if (!in_productions) syntax_error(line.number, line.tokens.front().column, "production before @productions");
      const std::size_t arrow = arrow_index(line);
      if (arrow != 1) syntax_error(line.number, line.tokens.front().column, "production needs one left-hand atom");
      const Token& lhs = line.tokens[0];
      auto sym = [&](const std::string& name, std::size_t col) { return symbol_at(line, Token{name, col}); };
      if (auto pop = split_flagged(lhs.text)) {
        for (std::size_t i = 2; i < line.tokens.size(); ++i)
          if (split_flagged(line.tokens[i].text))
            syntax_error(line.number, line.tokens[i].column, "flagged atom on the right of a pop");
        g.productions.push_back(pop_production(sym(pop->first, lhs.column), sym(pop->second, lhs.column),
                                               word_at(line, 2, line.tokens.size())));
        continue;
      }
      const Symbol a = symbol_at(line, lhs);
      if (line.tokens.size() == 3) {
        if (auto push = split_flagged(line.tokens[2].text)) {
          const std::size_t col = line.tokens[2].column;
          g.productions.push_back(push_production(a, sym(push->second, col), sym(push->first, col)));
          continue;
        }
      }
      for (std::size_t i = 2; i < line.tokens.size(); ++i)
        if (split_flagged(line.tokens[i].text))
          syntax_error(line.number, line.tokens[i].column, "a push must have a single flagged atom on the right");
      g.productions.push_back(plain_production(a, word_at(line, 2, line.tokens.size())));
    }
  }
  if (!saw_start) throw Error(ErrorCode::SyntaxError, "missing @start");
  return g;
}

Dfa parse_dfa(std::string_view text) {
  const auto lines = lex(text);
  expect_header(lines, {"@dfa"});
  Dfa d;
  std::optional<std::string> start;
  std::vector<std::string> accept;
  std::vector<std::pair<const Line*, std::array<std::string, 3>>> moves;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string& head = line.tokens.front().text;
    if (head == "@alphabet") {
      d.alphabet.merge(symbols_after_keyword(line));
    } else if (head == "@states") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i) d.state_names.push_back(line.tokens[i].text);
    } else if (head == "@start") {
      if (line.tokens.size() != 2) syntax_error(line.number, line.tokens.front().column, "@start takes one state");
      start = line.tokens[1].text;
    } else if (head == "@accept") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i) accept.push_back(line.tokens[i].text);
    } else if (head.front() == '@') {
      syntax_error(line.number, line.tokens.front().column, "unknown section '" + head + "'");
    } else {
      if (line.tokens.size() != 3) syntax_error(line.number, line.tokens.front().column, "expected 'state symbol state'");
      symbol_at(line, line.tokens[1]);
      moves.push_back({&line, {line.tokens[0].text, line.tokens[1].text, line.tokens[2].text}});
    }
  }
  auto index = [&](const std::string& name, std::size_t line_no) {
    auto it = std::find(d.state_names.begin(), d.state_names.end(), name);
    if (it == d.state_names.end())
      throw Error(ErrorCode::SemanticError, "line " + std::to_string(line_no) + ": unknown state '" + name + "'");
    return static_cast<std::size_t>(it - d.state_names.begin());
  };
  if (!start) throw Error(ErrorCode::SyntaxError, "missing @start");
  d.start = index(*start, 0);
  for (const auto& s : accept) d.accepting.insert(index(s, 0));
  d.delta.resize(d.state_names.size());
  for (const auto& [line, m] : moves) {
    const Symbol s(m[1]);
    if (!d.alphabet.contains(s))
      throw Error(ErrorCode::SemanticError,
                  "line " + std::to_string(line->number) + ": symbol '" + m[1] + "' not in the alphabet");
    d.delta[index(m[0], line->number)][s] = index(m[2], line->number);
  }
  return d;
}

ParsedFile parse_system_file(std::string_view text) {
  const auto lines = lex(text);
  if (lines.empty()) throw Error(ErrorCode::SyntaxError, "line 1, column 1: empty file");
  const std::string& h = lines.front().tokens.front().text;
  if (h == "@etol" || h == "@edt0l") return parse_lsystem(text);
  if (h == "@indexed") return parse_indexed(text);
  if (h == "@dfa") return parse_dfa(text);
  syntax_error(lines.front().number, 1, "unknown header '" + h + "'");
}

WordSet parse_word_list(std::string_view text) {
  WordSet out;
  for (const Line& line : lex(text)) out.insert(word_at(line, 0, line.tokens.size()));
  return out;
}

Homomorphism parse_hom_map(std::string_view text) {
  Homomorphism h;
  for (const Line& line : lex(text)) {
    if (arrow_index(line) != 1) syntax_error(line.number, line.tokens.front().column, "expected 'sym -> tokens'");
    const Symbol s = symbol_at(line, line.tokens[0]);
    if (h.images.contains(s)) syntax_error(line.number, line.tokens[0].column, "second image for '" + s.name() + "'");
    h.images[s] = word_at(line, 2, line.tokens.size());
  }
  return h;
}

std::string serialize(const LSystem& h) {
  std::ostringstream out;
  out << (h.kind == SystemKind::EDT0L ? "@edt0l" : "@etol") << '\n';
  out << "@terminals" << join_names(sorted_by_name(h.terminals)) << '\n';
  out << "@nonterminals" << join_names(sorted_by_name(h.nonterminals())) << '\n';
  std::vector<Word> axioms(h.axioms.begin(), h.axioms.end());
  std::sort(axioms.begin(), axioms.end(), CanonicalLess{});
  out << "@axioms";
  for (std::size_t i = 0; i < axioms.size(); ++i) out << (i ? " ; " : " ") << word_text(axioms[i]);
  out << '\n';
  for (const Table& t : h.tables) {
    out << "@table " << t.name << '\n';
    std::vector<std::pair<Symbol, Word>> rules;
    for (const auto& [lhs, list] : t.rules)
      for (const Word& rhs : list) rules.emplace_back(lhs, rhs);
    std::sort(rules.begin(), rules.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first.name() < y.first.name();
      return name_less(x.second, y.second);
    });
    for (const auto& [lhs, rhs] : rules) {
      out << lhs.name() << " ->";
      for (Symbol s : rhs) out << ' ' << s.name();
      out << '\n';
    }
  }
  return out.str();
}

std::string serialize(const IndexedGrammar& g) {
  std::ostringstream out;
  out << "@indexed\n";
  out << "@terminals" << join_names(sorted_by_name(g.terminals)) << '\n';
  out << "@nonterminals" << join_names(sorted_by_name(g.nonterminals)) << '\n';
  out << "@flags" << join_names(sorted_by_name(g.flags)) << '\n';
  out << "@start " << g.start.name() << '\n';
  if (g.normal_form) out << "@normal-form\n";
  out << "@productions\n";
  for (const Production& p : g.productions) {
    out << p.lhs.name();
    if (p.kind == ProductionKind::Pop) out << '[' << p.flag->name() << ']';
    out << " ->";
    if (p.kind == ProductionKind::Push) {
      out << ' ' << p.rhs.at(0).name() << '[' << p.flag->name() << ']';
    } else {
      for (Symbol s : p.rhs) out << ' ' << s.name();
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize(const Dfa& d) {
  std::ostringstream out;
  out << "@dfa\n";
  out << "@alphabet" << join_names(sorted_by_name(d.alphabet)) << '\n';
  out << "@states";
  for (const auto& s : d.state_names) out << ' ' << s;
  out << "\n@start " << d.state_names.at(d.start) << '\n';
  out << "@accept";
  for (std::size_t q : d.accepting) out << ' ' << d.state_names.at(q);
  out << '\n';
  for (std::size_t q = 0; q < d.delta.size(); ++q) {
    std::vector<std::pair<Symbol, std::size_t>> row(d.delta[q].begin(), d.delta[q].end());
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first.name() < y.first.name(); });
    for (const auto& [s, to] : row) out << d.state_names[q] << ' ' << s.name() << ' ' << d.state_names[to] << '\n';
  }
  return out.str();
}

std::string serialize(const WordSet& ws) {
  std::string out;
  for (const Word& w : ws) out += word_text(w) + '\n';
  return out;
}

std::string serialize(const ParsedFile& f) {
  return std::visit([](const auto& v) { return serialize(v); }, f);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace permgram
