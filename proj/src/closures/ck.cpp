#include <algorithm>
#include <numeric>
#include <ostream>

#include "internal.hpp"

namespace permgram {

namespace {

void report(std::ostream* log, const std::string& stage, const LSystem& h) {
  if (!log) return;
  *log << stage << ": " << h.alphabet.size() << " symbols, " << h.tables.size() << " tables, " << h.rule_count()
       << " rules\n";
}

}  // namespace

LSystem ck(const LSystem& h, int k, const CkOptions& options) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const std::vector<Symbol> hashes = make_hashes(static_cast<std::size_t>(k), h.alphabet);
  const LSystem hashed = insert_hashes(h, hashes, options.limits);
  report(options.log, "hashed", hashed);

  Homomorphism erase = Homomorphism::identity(h.terminals);
  for (Symbol s : hashes) erase.images[s] = Word{};

  MoveRightOptions move;
  move.limits = options.limits;

  std::vector<int> sigma(static_cast<std::size_t>(k));
  std::iota(sigma.begin(), sigma.end(), 1);
  std::optional<LSystem> result;
  // Permutations come in lexicographic order, so the systems for the
  // prefixes of the previous one can be reused.
  std::vector<int> done;
  std::vector<LSystem> prefix{hashed};
  do {
    std::size_t common = 0;
    while (common < done.size() && common + 1 < sigma.size() && done[common] == sigma[common]) ++common;
    prefix.resize(common + 1);
    std::string label = "sigma";
    for (std::size_t i = 0; i < common; ++i) label += " " + std::to_string(sigma[i]);
    for (std::size_t i = common; i < sigma.size(); ++i) {
      const auto j = static_cast<std::size_t>(sigma[i]);
      prefix.push_back(move_right(prefix.back(), hashes[j - 1], hashes[j], move));
      label += " " + std::to_string(sigma[i]);
      report(options.log, label, prefix.back());
    }
    done = sigma;
    LSystem cur = std::move(prefix.back());
    prefix.pop_back();
    cur = reduce(hom_image(cur, erase));
    result = result ? union_systems(*result, cur) : cur;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  report(options.log, "union", *result);
  return *result;
}

LSystem cyc_etol(const LSystem& h, const CkOptions& options) { return ck(h, 2, options); }

}  // namespace permgram
