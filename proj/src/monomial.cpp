#include "gradenorm/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradenorm {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Tensor: return "tensor";
    case Kind::Symmetric: return "symmetric";
    case Kind::Antisymmetric: return "antisymmetric";
    case Kind::Super: return "super";
    case Kind::Paired: return "paired";
  }
  return "?";
}

Kind kind_from_name(std::string_view name) {
  if (name == "tensor") return Kind::Tensor;
  if (name == "symmetric") return Kind::Symmetric;
  if (name == "antisymmetric" || name == "grassmann") return Kind::Antisymmetric;
  if (name == "super") return Kind::Super;
  if (name == "paired" || name == "clifford") return Kind::Paired;
  throw std::invalid_argument("unknown algebra kind: " + std::string(name));
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
  return std::lexicographical_compare(a.word.begin(), a.word.end(), b.word.begin(),
                                      b.word.end());
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  // FNV-1a over the letters; words are short.
  std::size_t h = 1469598103934665603ULL;
  for (int g : m.word) {
    h ^= static_cast<std::size_t>(g);
    h *= 1099511628211ULL;
  }
  return h;
}

bool AlgebraShape::odd_letter(int g) const {
  switch (kind) {
    case Kind::Tensor:
    case Kind::Symmetric: return false;
    case Kind::Antisymmetric: return true;
    case Kind::Super: return g > even_count;
    case Kind::Paired: return chi == 1;
  }
  return false;
}

Kind AlgebraShape::carrier() const {
  if (kind == Kind::Paired) return chi == 1 ? Kind::Antisymmetric : Kind::Symmetric;
  return kind;
}

namespace {

// Insertion sort that counts the transpositions performed; returns -1 when
// a duplicate shows up (checked by the caller for odd letters only).
int sort_counting_swaps(std::vector<int>& v) {
  int swaps = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && v[j - 1] > v[j]) {
      std::swap(v[j - 1], v[j]);
      ++swaps;
      --j;
    }
  }
  return swaps;
}

bool has_adjacent_duplicate(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] == v[i]) return true;
  return false;
}

}  // namespace

CanonicalWord canonicalize_word(const AlgebraShape& shape, std::vector<int> word) {
  switch (shape.carrier()) {
    case Kind::Tensor:
      return {1, std::move(word)};
    case Kind::Symmetric:
      std::sort(word.begin(), word.end());
      return {1, std::move(word)};
    case Kind::Antisymmetric: {
      int swaps = sort_counting_swaps(word);
      if (has_adjacent_duplicate(word)) return {0, {}};
      return {(swaps % 2 == 0) ? 1 : -1, std::move(word)};
    }
    case Kind::Super: {
      // Evens commute with everything; only odd-odd transpositions count.
      std::vector<int> evens, odds;
      for (int g : word)
        (shape.odd_letter(g) ? odds : evens).push_back(g);
      std::sort(evens.begin(), evens.end());
      int swaps = sort_counting_swaps(odds);
      if (has_adjacent_duplicate(odds)) return {0, {}};
      evens.insert(evens.end(), odds.begin(), odds.end());
      return {(swaps % 2 == 0) ? 1 : -1, std::move(evens)};
    }
    case Kind::Paired: break;  // unreachable, carrier() resolves it
  }
  throw std::logic_error("canonicalize_word: unhandled kind");
}

int word_parity(const AlgebraShape& shape, const Monomial& m) {
  int odd = 0;
  for (int g : m.word)
    if (shape.odd_letter(g)) ++odd;
  return odd % 2;
}

namespace {

constexpr std::size_t kBasisCap = 2'000'000;

void tensor_words(int d, int n, std::vector<int>& cur, std::vector<Monomial>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(Monomial{cur});
    return;
  }
  for (int g = 1; g <= d; ++g) {
    cur.push_back(g);
    tensor_words(d, n, cur, out);
    cur.pop_back();
  }
}

void nondecreasing_words(int lo, int hi, int n, std::vector<int>& cur,
                         std::vector<Monomial>& out) {
  if (n == 0) {
    out.push_back(Monomial{cur});
    return;
  }
  for (int g = lo; g <= hi; ++g) {
    cur.push_back(g);
    nondecreasing_words(g, hi, n - 1, cur, out);
    cur.pop_back();
  }
}

void increasing_words(int lo, int hi, int n, std::vector<int>& cur,
                      std::vector<Monomial>& out) {
  if (n == 0) {
    out.push_back(Monomial{cur});
    return;
  }
  for (int g = lo; g <= hi; ++g) {
    cur.push_back(g);
    increasing_words(g + 1, hi, n - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Monomial> degree_basis(const AlgebraShape& shape, int degree) {
  if (degree < 0) throw std::invalid_argument("degree_basis: negative degree");
  std::vector<Monomial> out;
  std::vector<int> cur;
  const int d = shape.generators;
  switch (shape.carrier()) {
    case Kind::Tensor: {
      double count = 1;
      for (int i = 0; i < degree; ++i) count *= d;
      if (count > static_cast<double>(kBasisCap))
        throw std::length_error("degree_basis: tensor basis too large");
      tensor_words(d, degree, cur, out);
      break;
    }
    case Kind::Symmetric:
      nondecreasing_words(1, d, degree, cur, out);
      break;
    case Kind::Antisymmetric:
      increasing_words(1, d, degree, cur, out);
      break;
    case Kind::Super: {
      const int e = shape.even_count;
      for (int k = degree; k >= 0; --k) {
        std::vector<Monomial> evens, odds;
        std::vector<int> tmp;
        nondecreasing_words(1, e, k, tmp, evens);
        increasing_words(e + 1, d, degree - k, tmp, odds);
        for (const auto& ev : evens)
          for (const auto& od : odds) {
            Monomial m = ev;
            m.word.insert(m.word.end(), od.word.begin(), od.word.end());
            out.push_back(std::move(m));
          }
      }
      break;
    }
    case Kind::Paired:
      break;  // unreachable
  }
  std::sort(out.begin(), out.end());
  if (out.size() > kBasisCap) throw std::length_error("degree_basis: basis too large");
  return out;
}

std::string to_string(const Monomial& m) {
  if (m.word.empty()) return "e0";
  std::string s = "e[";
  for (std::size_t i = 0; i < m.word.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(m.word[i]);
  }
  s += ']';
  return s;
}

}  // namespace gradenorm
