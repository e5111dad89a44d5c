#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gradenorm {

enum class Kind { Tensor, Symmetric, Antisymmetric, Super, Paired };

std::string_view kind_name(Kind k);
Kind kind_from_name(std::string_view name);  // throws std::invalid_argument

/// Canonical basis word over generator indices (1-based).  The owning
/// algebra's kind decides what "canonical" means; see canonicalize_word.
struct Monomial {
  std::vector<int> word;

  int degree() const { return static_cast<int>(word.size()); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Strict weak order: total degree first, then lexicographic on the word.
bool operator<(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

/// Outcome of bringing a word into canonical order.  sign == 0 means the
/// word vanishes (a repeated antisymmetric/odd letter).
struct CanonicalWord {
  int sign = 1;
  std::vector<int> word;
};

/// Combinatorial data of an algebra needed for word manipulation.
struct AlgebraShape {
  Kind kind = Kind::Antisymmetric;
  int generators = 1;
  int even_count = 0;  // Super: generators 1..even_count are even
  int chi = 1;         // Paired: carrier selector; class-1 commutation sign otherwise

  /// Letter parity: true when the generator anticommutes with itself.
  bool odd_letter(int g) const;
  /// The class-1 carrier of the word rules (Paired resolves through chi).
  Kind carrier() const;
};

/// Sort a word into canonical order, tracking the sign picked up from
/// transpositions of odd/antisymmetric letters.
CanonicalWord canonicalize_word(const AlgebraShape& shape, std::vector<int> word);

/// Z2 parity of a canonical monomial: #odd letters mod 2 for Super,
/// degree mod 2 for antisymmetric carriers, 0 for symmetric carriers.
int word_parity(const AlgebraShape& shape, const Monomial& m);

/// All canonical monomials of the given degree, sorted by the Monomial
/// order.  Throws std::length_error when the count would exceed the
/// desk-scale cap (relevant for the Tensor kind, which grows as d^n).
std::vector<Monomial> degree_basis(const AlgebraShape& shape, int degree);

std::string to_string(const Monomial& m);

}  // namespace gradenorm
