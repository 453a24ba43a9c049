#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "permgram/core.hpp"
#include "permgram/indexed.hpp"
#include "permgram/lsystem.hpp"
#include "permgram/regular.hpp"

namespace permgram {

// Line-oriented text formats. Tokens are whitespace separated, a lone "#"
// token comments out the rest of its line, and "()" writes the empty word.

using ParsedFile = std::variant<LSystem, IndexedGrammar, Dfa>;

/// Dispatches on the header line (@etol, @edt0l, @indexed, @dfa).
ParsedFile parse_system_file(std::string_view text);

LSystem parse_lsystem(std::string_view text);
IndexedGrammar parse_indexed(std::string_view text);
Dfa parse_dfa(std::string_view text);
/// One word per line.
WordSet parse_word_list(std::string_view text);
/// Lines "sym -> tokens".
Homomorphism parse_hom_map(std::string_view text);

std::string serialize(const LSystem& h);
std::string serialize(const IndexedGrammar& g);
std::string serialize(const Dfa& d);
std::string serialize(const WordSet& ws);
std::string serialize(const ParsedFile& f);

/// Throws Error(IoError) when the file cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace permgram
