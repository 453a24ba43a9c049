#pragma once

#include <initializer_list>
#include <string>
#include <variant>

#include "permgram/io.hpp"

namespace permgram::test {

inline std::string fixture(const std::string& name) { return std::string(PERMGRAM_FIXTURES) + "/" + name; }

inline ParsedFile load(const std::string& name) { return parse_system_file(read_text_file(fixture(name))); }

inline LSystem load_lsystem(const std::string& name) { return std::get<LSystem>(load(name)); }

inline IndexedGrammar load_indexed(const std::string& name) { return std::get<IndexedGrammar>(load(name)); }

inline WordSet words(std::initializer_list<const char*> texts) {
  WordSet out;
  for (const char* t : texts) out.insert(parse_word(t));
  return out;
}

inline Word w(const char* text) { return parse_word(text); }

inline Symbol sym(const char* name) { return Symbol(name); }

}  // namespace permgram::test
