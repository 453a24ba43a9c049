#include "permgram/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace permgram {

WordSet word_rotations(const Word& w) {
  WordSet out{w};
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word r(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    out.insert(std::move(r));
  }
  return out;
}

namespace {

/// Calls f(cuts) for every non-decreasing cut vector 0 = c0 <= ... <= ck = n.
template <class F>
void for_each_factorization(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> cuts(k + 1, 0);
  cuts[k] = n;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      f(cuts);
      return;
    }
    for (std::size_t c = cuts[i - 1]; c <= n; ++c) {
      cuts[i] = c;
      self(self, i + 1);
    }
  };
  if (k == 0) return;
  rec(rec, 1);
}

}  // namespace

WordSet word_ck(const Word& w, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const auto kk = static_cast<std::size_t>(k);
  WordSet out;
  std::vector<std::size_t> sigma(kk);
  for_each_factorization(w.size(), kk, [&](const std::vector<std::size_t>& cuts) {
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      Word v;
      v.reserve(w.size());
      for (std::size_t i : sigma)
        v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(cuts[i]),
                 w.begin() + static_cast<std::ptrdiff_t>(cuts[i + 1]));
      out.insert(std::move(v));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  });
  return out;
}

Word word_pi(const Word& w, Symbol a, Symbol b) {
  const auto na = std::count(w.begin(), w.end(), a);
  const auto nb = std::count(w.begin(), w.end(), b);
  const auto ia = std::find(w.begin(), w.end(), a);
  const auto ib = std::find(w.begin(), w.end(), b);
  if (na != 1 || nb != 1 || ib < ia)
    throw Error(ErrorCode::NotAbWord, "'" + format_word(w) + "' is not an (" + a.name() + "," + b.name() + ")-word");
  Word out(w.begin(), ia + 1);
  out.insert(out.end(), ib, w.end());
  out.insert(out.end(), ia + 1, ib);
  return out;
}

WordSet word_insert_hashes(const Word& w, const std::vector<Symbol>& hashes) {
  WordSet out;
  if (hashes.empty()) return out;
  const std::size_t k = hashes.size() - 1;
  if (k == 0) {
    if (w.empty()) out.insert(Word{hashes[0]});
    return out;
  }
  for_each_factorization(w.size(), k, [&](const std::vector<std::size_t>& cuts) {
    Word v{hashes[0]};
    for (std::size_t i = 0; i < k; ++i) {
      v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(cuts[i]),
               w.begin() + static_cast<std::ptrdiff_t>(cuts[i + 1]));
      v.push_back(hashes[i + 1]);
    }
    out.insert(std::move(v));
  });
  return out;
}

OracleOp OracleOp::rotations() { return {}; }

OracleOp OracleOp::ck(int k) {
  OracleOp op;
  op.kind = Kind::Ck;
  op.k = k;
  return op;
}

OracleOp OracleOp::insert_hash(Symbol hash) {
  OracleOp op;
  op.kind = Kind::InsertHash;
  op.symbols = {hash};
  return op;
}

OracleOp OracleOp::insert_hashes(std::vector<Symbol> hashes) {
  OracleOp op;
  op.kind = Kind::InsertHashes;
  op.symbols = std::move(hashes);
  return op;
}

OracleOp OracleOp::pi(Symbol a, Symbol b) {
  OracleOp op;
  op.kind = Kind::Pi;
  op.symbols = {a, b};
  return op;
}

OracleOp OracleOp::homomorphism(Homomorphism h) {
  OracleOp op;
  op.kind = Kind::Hom;
  op.hom = std::move(h);
  return op;
}

WordSet set_closure(const WordSet& ws, const OracleOp& op) {
  WordSet out;
  for (const Word& w : ws) {
    switch (op.kind) {
      case OracleOp::Kind::Rotations:
        out.merge(word_rotations(w));
        break;
      case OracleOp::Kind::Ck:
        out.merge(word_ck(w, op.k));
        break;
      case OracleOp::Kind::InsertHash:
        for (std::size_t i = 0; i <= w.size(); ++i) {
          Word v = w;
          v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), op.symbols.at(0));
          out.insert(std::move(v));
        }
        break;
      case OracleOp::Kind::InsertHashes:
        out.merge(word_insert_hashes(w, op.symbols));
        break;
      case OracleOp::Kind::Pi:
        out.insert(word_pi(w, op.symbols.at(0), op.symbols.at(1)));
        break;
      case OracleOp::Kind::Hom: {
        Word v;
        for (Symbol s : w) {
          auto it = op.hom.images.find(s);
          if (it == op.hom.images.end())
            throw Error(ErrorCode::UnknownSymbol, "no image for '" + s.name() + "'");
          v.insert(v.end(), it->second.begin(), it->second.end());
        }
        out.insert(std::move(v));
        break;
      }
    }
  }
  return out;
}

DiffReport diff(const WordSet& left, const WordSet& right) {
  DiffReport r;
  std::set_difference(left.begin(), left.end(), right.begin(), right.end(),
                      std::inserter(r.only_in_left, r.only_in_left.end()), CanonicalLess{});
  std::set_difference(right.begin(), right.end(), left.begin(), left.end(),
                      std::inserter(r.only_in_right, r.only_in_right.end()), CanonicalLess{});
  r.equal = r.only_in_left.empty() && r.only_in_right.empty();
  return r;
}

std::string DiffReport::to_text() const {
  std::ostringstream out;
  out << "equal: " << (equal ? "yes" : "no") << '\n';
  out << "stabilized: " << (stabilized ? "yes" : "no") << '\n';
  if (!caps_used.empty()) out << "caps: " << caps_used << '\n';
  out << "only in construction: " << only_in_left.size() << '\n';
  for (const Word& w : only_in_left) out << "  " << format_word(w) << '\n';
  out << "only in oracle: " << only_in_right.size() << '\n';
  for (const Word& w : only_in_right) out << "  " << format_word(w) << '\n';
  return out.str();
}

WordSet truncate(const WordSet& ws, std::size_t n) {
  WordSet out;
  for (const Word& w : ws)
    if (w.size() <= n) out.insert(w);
  return out;
}

}  // namespace permgram
