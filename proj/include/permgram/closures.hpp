#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permgram/core.hpp"
#include "permgram/lsystem.hpp"
#include "permgram/regular.hpp"

namespace permgram {

struct ConstructionLimits {
  /// Upper bound on tables emitted by choice-function table families.
  std::size_t max_tables = 1'000'000;
};

/// Morphism onto {a, b}* that is invariant along derivation steps.
struct AbMorphism {
  std::map<Symbol, Word> images;
  Symbol a;
  Symbol b;

  Word apply(const Word& w) const;
  /// Image of a single symbol; symbols outside the domain map to the empty word.
  const Word& image(Symbol s) const;
};

struct AnnotatedSystem {
  LSystem system;
  AbMorphism phi;
};

struct PhiViolation {
  std::string table;
  Symbol lhs;
  Word rhs;
};

/// Rules c -> v with phi(c) != phi(v), plus terminal-image mismatches.
std::vector<PhiViolation> phi_violations(const LSystem& h, const AbMorphism& phi);

/// Replaces every axiom that is not a single symbol by a fresh start symbol
/// S with S -> w in every table.
LSystem wrap_axioms(const LSystem& h);

/// Drops symbols that are unreachable or can never reach a terminal word.
/// Rule sets left empty by the removal become c -> poison(c), identical
/// tables are merged and tables acting as the identity are removed.
LSystem reduce(const LSystem& h);

std::pair<LSystem, Homomorphism> disjoint_rename(const LSystem& h, const SymbolSet& reserved);

LSystem union_systems(const LSystem& h1, const LSystem& h2);

LSystem hom_image(const LSystem& h, const Homomorphism& hom);

LSystem intersect_regular(const LSystem& h, const Dfa& d, const ConstructionLimits& limits = {});

LSystem insert_one_hash(const LSystem& h, Symbol hash);

LSystem insert_hashes(const LSystem& h, const std::vector<Symbol>& hashes,
                      const ConstructionLimits& limits = {});

struct AbCheck {
  EnumerationCaps caps{6, 10, std::nullopt};
};

/// Throws NotAbLanguage when the bounded check finds a word that is not an
/// (a,b)-word.
void check_ab_language(const LSystem& h, Symbol a, Symbol b, const AbCheck& check);

AnnotatedSystem annotate_ab(const LSystem& h, Symbol a, Symbol b,
                            const std::optional<AbCheck>& check = std::nullopt,
                            const ConstructionLimits& limits = {});

struct MoveRightOptions {
  /// Tag the marker p with its phase and poison out-of-phase tables. Turning
  /// this off reproduces the unguarded tables, which over-generate.
  bool phase_guard = true;
  std::optional<AbCheck> check;
  ConstructionLimits limits;
};

/// System for the marked language {x a b z p y q : x a y b z in L(h)} with
/// p, q terminal; `p` and `q` receive the chosen marker names.
struct MarkedMoveSystem {
  LSystem system;
  AbMorphism phi;  // extended to the phase and poison symbols
  Symbol p;
  Symbol q;
};

MarkedMoveSystem marked_move_system(const AnnotatedSystem& annotated, const MoveRightOptions& options = {});

/// L(result) = {x a b z y : x a y b z in L(h)}.
LSystem move_right(const LSystem& h, Symbol a, Symbol b, const MoveRightOptions& options = {});

struct CkOptions {
  ConstructionLimits limits;
  /// Print per-stage size reports to this stream when set.
  std::ostream* log = nullptr;
};

/// Fresh hash symbols "#0".."#k" avoiding `used`.
std::vector<Symbol> make_hashes(std::size_t k, const SymbolSet& used);

LSystem ck(const LSystem& h, int k, const CkOptions& options = {});

LSystem cyc_etol(const LSystem& h, const CkOptions& options = {});

}  // namespace permgram
