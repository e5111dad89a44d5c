#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gradenorm/monomial.hpp"
#include "gradenorm/scalar.hpp"

namespace gradenorm {

/// Full description of a finite truncated graded algebra: the product rules
/// (kind, chi, pairing) plus the generator count d and truncation degree N.
/// The pairing omega is present exactly for the Paired kind and is plain
/// bilinear data; no symmetry is assumed.
template <class S>
struct AlgebraSpec {
  Kind kind = Kind::Antisymmetric;
  int generators = 1;       // d >= 1
  int truncation = 0;       // N >= 0
  int chi = 1;              // parity factor (Paired; fixed by kind otherwise)
  int even_count = 0;       // Super: generators 1..even_count are even
  std::vector<S> pairing;   // d*d row-major, Paired only

  static constexpr Field field = ScalarTraits<S>::field;

  AlgebraShape shape() const { return AlgebraShape{kind, generators, even_count, chi}; }
  bool is_class1() const { return kind != Kind::Paired; }

  const S& omega(int i, int j) const {  // 1-based generator indices
    return pairing[static_cast<std::size_t>(i - 1) * generators + (j - 1)];
  }

  void validate() const {
    if (generators < 1) throw std::invalid_argument("AlgebraSpec: generators must be >= 1");
    if (truncation < 0) throw std::invalid_argument("AlgebraSpec: truncation must be >= 0");
    if (kind == Kind::Super && (even_count < 0 || even_count > generators))
      throw std::invalid_argument("AlgebraSpec: even_count out of range");
    if (kind == Kind::Paired) {
      if (chi != 0 && chi != 1) throw std::invalid_argument("AlgebraSpec: chi must be 0 or 1");
      if (pairing.size() != static_cast<std::size_t>(generators) * generators)
        throw std::invalid_argument("AlgebraSpec: pairing must be d x d");
    } else if (!pairing.empty()) {
      throw std::invalid_argument("AlgebraSpec: pairing only allowed for the Paired kind");
    }
  }

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

template <class S>
using SpecPtr = std::shared_ptr<const AlgebraSpec<S>>;

template <class S>
SpecPtr<S> make_spec(AlgebraSpec<S> spec) {
  switch (spec.kind) {
    case Kind::Tensor:
    case Kind::Symmetric: spec.chi = 0; break;
    case Kind::Antisymmetric:
    case Kind::Super: spec.chi = 1; break;
    case Kind::Paired: break;
  }
  if (spec.kind != Kind::Super) spec.even_count = 0;
  spec.validate();
  return std::make_shared<const AlgebraSpec<S>>(std::move(spec));
}

/// Sparse element of a truncated graded algebra: canonical monomials mapped
/// to nonzero coefficients.  The truncated flag records that some product
/// term above the truncation degree was discarded; analyzer operations
/// refuse flagged elements when certifying inequalities.
template <class S>
class Element {
 public:
  using Traits = ScalarTraits<S>;

  Element() = default;
  explicit Element(SpecPtr<S> spec) : spec_(std::move(spec)) {}

  const SpecPtr<S>& spec() const { return spec_; }
  const std::map<Monomial, S>& terms() const { return terms_; }
  bool truncated() const { return truncated_; }
  void set_truncated(bool flag) { truncated_ = flag; }

  bool is_zero() const { return terms_.empty(); }
  int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  /// Accumulate a coefficient onto a canonical monomial, keeping the
  /// no-stored-zeros invariant.
  void add_term(const Monomial& m, const S& c) {
    if (Traits::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  Element& operator+=(const Element& rhs) {
    require_same_spec(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    truncated_ = truncated_ || rhs.truncated_;
    return *this;
  }

  Element& operator-=(const Element& rhs) {
    require_same_spec(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, S(-1) * c);
    truncated_ = truncated_ || rhs.truncated_;
    return *this;
  }

  Element& operator*=(const S& scale) {
    if (Traits::is_zero(scale)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= scale;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const S& s, Element a) { return a *= s; }
  friend Element operator*(Element a, const S& s) { return a *= s; }

  friend bool operator==(const Element& a, const Element& b) {
    return *a.spec_ == *b.spec_ && a.terms_ == b.terms_;
  }

  void require_same_spec(const Element& rhs) const {
    if (!spec_ || !rhs.spec_ || !(*spec_ == *rhs.spec_))
      throw std::invalid_argument("elements belong to different algebra specs");
  }

 private:
  SpecPtr<S> spec_;
  std::map<Monomial, S> terms_;
  bool truncated_ = false;
};

/// The two-sided multiplicative identity: the empty word with coefficient 1.
template <class S>
Element<S> unit(const SpecPtr<S>& spec) {
  Element<S> e(spec);
  e.add_term(Monomial{}, S(1));
  return e;
}

/// Canonicalized basis monomial from a raw generator word.  The sign rules
/// of the kind apply; a repeated antisymmetric/odd letter yields the zero
/// element.
template <class S>
Element<S> monomial(const SpecPtr<S>& spec, const std::vector<int>& word) {
  for (int g : word)
    if (g < 1 || g > spec->generators)
      throw std::out_of_range("monomial: generator index out of range");
  if (static_cast<int>(word.size()) > spec->truncation)
    throw std::invalid_argument("monomial: degree exceeds truncation");
  Element<S> e(spec);
  CanonicalWord cw = canonicalize_word(spec->shape(), word);
  if (cw.sign != 0) e.add_term(Monomial{std::move(cw.word)}, S(cw.sign));
  return e;
}

namespace detail {

template <class S>
class TermAccumulator {
 public:
  void add(Monomial m, const S& c) {
    auto [it, fresh] = acc_.try_emplace(std::move(m), c);
    if (!fresh) it->second += c;
  }

  Element<S> finish(const SpecPtr<S>& spec, bool truncated) {
    Element<S> out(spec);
    for (auto& [m, c] : acc_) out.add_term(m, c);
    out.set_truncated(truncated);
    return out;
  }

  void reserve(std::size_t n) { acc_.reserve(n); }

 private:
  std::unordered_map<Monomial, S, MonomialHash> acc_;
};

}  // namespace detail

/// Class-1 product (Tensor, Symmetric, Antisymmetric, Super): bilinear
/// extension of signed word concatenation.  Terms of degree > N are
/// discarded and the result is flagged as truncated.
template <class S>
Element<S> mul(const Element<S>& a, const Element<S>& b) {
  a.require_same_spec(b);
  const auto& spec = *a.spec();
  if (!spec.is_class1())
    throw std::invalid_argument("mul: use mul_twisted for the Paired kind");

  const AlgebraShape shape = spec.shape();
  bool truncated = a.truncated() || b.truncated();
  detail::TermAccumulator<S> acc;
  acc.reserve(a.terms().size() * b.terms().size() / 2 + 4);
  std::vector<int> word;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      word.assign(ma.word.begin(), ma.word.end());
      word.insert(word.end(), mb.word.begin(), mb.word.end());
      CanonicalWord cw = canonicalize_word(shape, std::move(word));
      if (cw.sign == 0) continue;
      if (static_cast<int>(cw.word.size()) > spec.truncation) {
        truncated = true;
        continue;
      }
      acc.add(Monomial{std::move(cw.word)}, S(cw.sign) * ca * cb);
    }
  }
  return acc.finish(a.spec(), truncated);
}

namespace detail {

// Left multiplication by a single generator in the Paired algebra:
//   e_g o M = (signed union) + sum_k (-1)^(chi*k) omega(g, m_k) * (M minus slot k)
template <class S>
Element<S> paired_generator_lmul(int g, const Element<S>& x) {
  const auto& spec = *x.spec();
  const AlgebraShape shape = spec.shape();
  bool truncated = x.truncated();
  TermAccumulator<S> acc;
  std::vector<int> word;
  for (const auto& [m, c] : x.terms()) {
    word.clear();
    word.push_back(g);
    word.insert(word.end(), m.word.begin(), m.word.end());
    CanonicalWord cw = canonicalize_word(shape, word);
    if (cw.sign != 0) {
      if (static_cast<int>(cw.word.size()) > spec.truncation)
        truncated = true;
      else
        acc.add(Monomial{std::move(cw.word)}, S(cw.sign) * c);
    }
    for (std::size_t k = 0; k < m.word.size(); ++k) {
      const S& w = spec.omega(g, m.word[k]);
      if (ScalarTraits<S>::is_zero(w)) continue;
      int sign = (spec.chi == 1 && k % 2 == 1) ? -1 : 1;
      Monomial reduced;
      reduced.word.reserve(m.word.size() - 1);
      for (std::size_t j = 0; j < m.word.size(); ++j)
        if (j != k) reduced.word.push_back(m.word[j]);
      acc.add(std::move(reduced), S(sign) * w * c);
    }
  }
  return acc.finish(x.spec(), truncated);
}

// Left multiplication by a canonical monomial word I, by recursion on the
// identity M_I = e_g o M_I' - sum_k (-1)^(chi*k) omega(g, I'_k) M_(I' minus k).
template <class S>
Element<S> paired_monomial_lmul(const std::vector<int>& word, const Element<S>& x) {
  if (word.empty()) return x;
  const auto& spec = *x.spec();
  const int g = word.front();
  std::vector<int> rest(word.begin() + 1, word.end());

  Element<S> out = paired_generator_lmul(g, paired_monomial_lmul(rest, x));
  for (std::size_t k = 0; k < rest.size(); ++k) {
    const S& w = spec.omega(g, rest[k]);
    if (ScalarTraits<S>::is_zero(w)) continue;
    int sign = (spec.chi == 1 && k % 2 == 1) ? -1 : 1;
    std::vector<int> reduced;
    reduced.reserve(rest.size() - 1);
    for (std::size_t j = 0; j < rest.size(); ++j)
      if (j != k) reduced.push_back(rest[j]);
    out -= S(sign) * w * paired_monomial_lmul(reduced, x);
  }
  return out;
}

}  // namespace detail

/// Paired (class-2) product: the associative bilinear product on the class-1
/// carrier determined by e_i o e_j = (class-1 product) + omega(e_i, e_j) e0,
/// computed by iterated single-generator left multiplication.  The result
/// mixes degrees p+q, p+q-2, ...; terms above N are discarded and flagged.
template <class S>
Element<S> mul_twisted(const Element<S>& a, const Element<S>& b) {
  a.require_same_spec(b);
  if (a.spec()->kind != Kind::Paired)
    throw std::invalid_argument("mul_twisted: spec kind must be Paired");
  Element<S> out(a.spec());
  out.set_truncated(a.truncated() || b.truncated());
  for (const auto& [m, c] : a.terms())
    out += c * detail::paired_monomial_lmul(m.word, b);
  return out;
}

/// Kind-dispatching product.
template <class S>
Element<S> product(const Element<S>& a, const Element<S>& b) {
  return a.spec()->kind == Kind::Paired ? mul_twisted(a, b) : mul(a, b);
}

/// The degree-n component a_n.  Out-of-range degrees yield zero.
template <class S>
Element<S> project_degree(const Element<S>& a, int n) {
  Element<S> out(a.spec());
  out.set_truncated(a.truncated());
  for (const auto& [m, c] : a.terms())
    if (m.degree() == n) out.add_term(m, c);
  return out;
}

/// Flat coefficient l2 norm, used for residual checks independent of any
/// weighted norm machinery.
template <class S>
double l2_norm(const Element<S>& a) {
  auto acc = typename ScalarTraits<S>::RealType(0);
  for (const auto& [m, c] : a.terms()) acc += ScalarTraits<S>::abs_sq(c);
  return std::sqrt(ScalarTraits<S>::to_double(acc));
}

template <class S>
double l2_distance(const Element<S>& a, const Element<S>& b) {
  Element<S> d = a;
  d -= b;
  return l2_norm(d);
}

/// A unit direction f in A_1 satisfying the no-go hypotheses
/// (e0|f) = (f|f^2) = 0 and (e0|f^2) >= 0, when one exists.  For class-1
/// kinds any generator works.  For the Paired kind over R the symmetric part
/// of omega must not be negative definite; over C a phase rotation always
/// succeeds.  Absence is a valid return.
std::optional<Element<double>> find_nogo_witness(const SpecPtr<double>& spec);
std::optional<Element<std::complex<double>>> find_nogo_witness(
    const SpecPtr<std::complex<double>>& spec);

template <class S>
std::string to_string(const Element<S>& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")" << to_string(m);
  }
  return os.str();
}

}  // namespace gradenorm
