#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gradenorm/norms.hpp"
#include "gradenorm/oracles.hpp"
#include "gradenorm/rng.hpp"

using namespace gradenorm;

namespace {

template <class S = double>
SpecPtr<S> spec_of(Kind kind, int d, int n, int even = 0) {
  AlgebraSpec<S> spec;
  spec.kind = kind;
  spec.generators = d;
  spec.truncation = n;
  spec.even_count = even;
  return make_spec(std::move(spec));
}

NormSpec<double> plain(WeightSpec w, Gram g = Gram::Normalized) {
  return NormSpec<double>{std::move(w), g, std::nullopt};
}

}  // namespace

TEST_CASE("permanent: pinned values") {
  CHECK(permanent<double>({{1, 0}, {0, 1}}) == 1.0);
  CHECK(permanent<double>({{1, 1}, {1, 1}}) == 2.0);
  CHECK(permanent<double>({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}) == 6.0);
  CHECK(permanent<double>({}) == 1.0);
  CHECK_THROWS_AS((void)permanent<double>(std::vector<std::vector<double>>(
                      21, std::vector<double>(21, 1.0))),
                  std::invalid_argument);
}

TEST_CASE("permanent agrees with the naive expansion on integer matrices") {
  for (int n = 1; n <= 7; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      TrialRng rng(17, static_cast<std::uint64_t>(n) * 1000 + rep);
      std::vector<std::vector<double>> m(n, std::vector<double>(n));
      for (auto& row : m)
        for (auto& v : row) v = rng.uniform_int(-3, 3);
      REQUIRE(permanent(m) == naive_permanent(m));
    }
  }
}

TEST_CASE("degree_inner: pinned Gram values") {
  const auto gr = spec_of(Kind::Antisymmetric, 3, 2);
  const auto e12 = monomial(gr, {1, 2});
  CHECK(degree_inner(e12, e12, Gram::Normalized) == doctest::Approx(0.5));
  CHECK(degree_inner(e12, e12, Gram::Standard) == doctest::Approx(1.0));
  CHECK(degree_inner(e12, monomial(gr, {1, 3}), Gram::Normalized) == 0.0);

  const auto sym = spec_of(Kind::Symmetric, 2, 2);
  const auto e11 = monomial(sym, {1, 1});
  // (1/2!) per([[1,1],[1,1]]) = 1
  CHECK(degree_inner(e11, e11, Gram::Normalized) ==
        doctest::Approx(permanent<double>({{1, 1}, {1, 1}}) / 2.0));
  CHECK_THROWS_AS((void)degree_inner(e11, unit(sym), Gram::Normalized),
                  std::invalid_argument);
}

TEST_CASE("gram_diag matches the permanent of the letter Gram matrix") {
  const auto sym = spec_of(Kind::Symmetric, 3, 5);
  TrialRng rng(23, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const int deg = rng.uniform_int(1, 5);
    std::vector<int> word(static_cast<std::size_t>(deg));
    for (auto& g : word) g = rng.uniform_int(1, 3);
    const auto elem = monomial(sym, word);
    const Monomial& m = elem.terms().begin()->first;
    std::vector<std::vector<double>> gram(static_cast<std::size_t>(deg),
                                          std::vector<double>(static_cast<std::size_t>(deg)));
    for (int i = 0; i < deg; ++i)
      for (int j = 0; j < deg; ++j) gram[i][j] = m.word[i] == m.word[j] ? 1.0 : 0.0;
    const double expect = permanent(gram) / factorial(deg);
    REQUIRE(gram_diag(sym->shape(), m, Gram::Normalized) == doctest::Approx(expect));
  }
}

TEST_CASE("super gram reduces to the pure cases") {
  const auto su = spec_of(Kind::Super, 4, 4, 2);
  // purely even word: symmetric rule
  CHECK(gram_diag(su->shape(), Monomial{{1, 1}}, Gram::Normalized) == doctest::Approx(1.0));
  // purely odd word: antisymmetric rule
  CHECK(gram_diag(su->shape(), Monomial{{3, 4}}, Gram::Normalized) == doctest::Approx(0.5));
  // mixed word x1 x1 theta3: 2!/3!
  CHECK(gram_diag(su->shape(), Monomial{{1, 1, 3}}, Gram::Normalized) ==
        doctest::Approx(2.0 / 6.0));
}

TEST_CASE("weight families") {
  CHECK(WeightSpec::sigma_rho_s(-1, 0, 0).weight(3) == doctest::Approx(1.0 / 6.0));
  CHECK(WeightSpec::factorial_inv_shift().weight(1) == 1.0);
  for (const auto& w :
       {WeightSpec::factorial_inv(), WeightSpec::factorial_inv_shift(),
        WeightSpec::standard_factorial(), WeightSpec::sigma_rho_s(2, -1, 3),
        WeightSpec::explicit_list({1, 0.5, 0.25})}) {
    CHECK(w.weight(0) == 1.0);
  }
  CHECK(WeightSpec::flat().weight(7) == 1.0);
  // log-space route stays consistent with the direct one across the switch
  const auto w = WeightSpec::sigma_rho_s(-1.5, 0.25, -2);
  for (int n : {1, 5, 19, 20, 21, 40})
    CHECK(std::exp(w.log_weight(n)) == doctest::Approx(w.weight(n)).epsilon(1e-12));
  CHECK_THROWS_AS((void)WeightSpec::explicit_list({1, 0.5}).weight(5), std::out_of_range);
  CHECK_THROWS_AS(WeightSpec::explicit_list({1, -0.5}).validate(1), std::invalid_argument);
}

TEST_CASE("norm: pinned values") {
  const auto gr = spec_of(Kind::Antisymmetric, 2, 2);
  SUBCASE("||e0 + lambda e1||^2 = 1 + lambda^2 when w1 g1 = 1") {
    const auto ns = plain(WeightSpec::factorial_inv());
    const double lambda = 1.25;
    const auto a = unit(gr) + lambda * monomial(gr, {1});
    CHECK(norm(a, ns) == doctest::Approx(std::sqrt(1.0 + lambda * lambda)));
  }
  SUBCASE("unit norm is 1 for every weight family") {
    for (const auto& w : {WeightSpec::factorial_inv(), WeightSpec::factorial_inv_shift(),
                          WeightSpec::standard_factorial(), WeightSpec::flat()})
      for (Gram g : {Gram::Normalized, Gram::Standard})
        CHECK(norm(unit(gr), NormSpec<double>{w, g, std::nullopt}) == 1.0);
  }
  SUBCASE("||e1^e2||^2 = w2 / 2 under the normalized gram") {
    const auto ns = plain(WeightSpec::factorial_inv_shift());
    const double w2 = WeightSpec::factorial_inv_shift().weight(2);
    CHECK(norm(monomial(gr, {1, 2}), ns) == doctest::Approx(std::sqrt(w2 / 2.0)));
  }
  SUBCASE("truncated elements are rejected") {
    const auto sym = spec_of(Kind::Symmetric, 2, 2);
    const auto flagged = mul(monomial(sym, {1, 1}), monomial(sym, {2}));
    CHECK_THROWS_AS((void)norm(flagged, plain(WeightSpec::factorial_inv())),
                    std::invalid_argument);
  }
}

TEST_CASE("a gamma twist replaces the 2^(rho n) factor of sigma_rho_s weights") {
  const auto gr = spec_of(Kind::Antisymmetric, 1, 1);
  const auto e1 = monomial(gr, {1});
  GammaTwist<double> twist{GammaOperator<double>::diagonal({4.0}), 0.5};
  // untwisted: w_1 = (1!)^-1 2^3 (1+1)^0 = 8
  const auto loud = plain(WeightSpec::sigma_rho_s(-1, 3, 0));
  CHECK(norm(e1, loud) == doctest::Approx(std::sqrt(8.0)));
  // twisted: the 2^(rho n) factor drops, the slot scale 4^(1/2) = 2 remains
  const NormSpec<double> twisted{WeightSpec::sigma_rho_s(-1, 3, 0), Gram::Normalized, twist};
  CHECK(norm(e1, twisted) == doctest::Approx(2.0));
  CHECK(norm(unit(gr), twisted) == 1.0);
}

TEST_CASE("per-degree submultiplicativity under the normalized gram") {
  for (const auto& spec : {spec_of(Kind::Symmetric, 3, 8), spec_of(Kind::Antisymmetric, 6, 8),
                           spec_of(Kind::Super, 5, 8, 2), spec_of(Kind::Tensor, 2, 8)}) {
    const AlgebraShape shape = spec->shape();
    std::uint64_t stream = 0;
    for (int trial = 0; trial < 300; ++trial) {
      TrialRng rng(29, stream++);
      const int p = rng.uniform_int(0, 4);
      const int q = rng.uniform_int(0, 4);
      Element<double> a(spec), b(spec);
      for (const auto& m : degree_basis(shape, p)) a.add_term(m, rng.normal());
      for (const auto& m : degree_basis(shape, q)) b.add_term(m, rng.normal());
      const auto ab = mul(a, b);
      REQUIRE(degree_norm(ab, Gram::Normalized) <=
              degree_norm(a, Gram::Normalized) * degree_norm(b, Gram::Normalized) + 1e-12);
    }
  }
}

TEST_CASE("the standard gram violates per-degree submultiplicativity") {
  const auto gr = spec_of(Kind::Antisymmetric, 6, 6);
  Element<double> a(gr);
  a.add_term(Monomial{{1, 2}}, 1.0);
  a.add_term(Monomial{{3, 4}}, 1.0);
  a.add_term(Monomial{{5, 6}}, 1.0);
  const auto sq = mul(a, a);
  // a^a = 2(e1234 + e1256 + e3456)
  CHECK(sq.coefficient(Monomial{{1, 2, 3, 4}}) == doctest::Approx(2.0));
  CHECK(sq.coefficient(Monomial{{1, 2, 5, 6}}) == doctest::Approx(2.0));
  CHECK(sq.coefficient(Monomial{{3, 4, 5, 6}}) == doctest::Approx(2.0));
  const double ratio = degree_norm(sq, Gram::Standard) /
                       (degree_norm(a, Gram::Standard) * degree_norm(a, Gram::Standard));
  CHECK(ratio == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(ratio > 1.0);
}

TEST_CASE("norm monotonicity in the weights") {
  const auto spec = spec_of(Kind::Symmetric, 3, 4);
  const auto lo = plain(WeightSpec::sigma_rho_s(-1.5, -0.5, -1));
  const auto hi = plain(WeightSpec::sigma_rho_s(-1, 0, 0));
  TrialRng rng(31, 0);
  for (int trial = 0; trial < 200; ++trial) {
    Element<double> a(spec);
    for (int n = 0; n <= 4; ++n)
      for (const auto& m : degree_basis(spec->shape(), n)) a.add_term(m, rng.normal());
    REQUIRE(norm(a, lo) <= norm(a, hi) + 1e-12);
  }
}

TEST_CASE("Cauchy-Schwarz and definiteness") {
  const auto spec = spec_of(Kind::Antisymmetric, 4, 4);
  const auto ns = plain(WeightSpec::factorial_inv());
  TrialRng rng(37, 0);
  for (int trial = 0; trial < 200; ++trial) {
    Element<double> a(spec), b(spec);
    for (int n = 0; n <= 4; ++n)
      for (const auto& m : degree_basis(spec->shape(), n)) {
        a.add_term(m, rng.normal());
        b.add_term(m, rng.normal());
      }
    REQUIRE(std::abs(inner(a, b, ns)) <= norm(a, ns) * norm(b, ns) + 1e-12);
    REQUIRE(norm(a, ns) > 0.0);
  }
  CHECK(norm(Element<double>(spec), ns) == 0.0);
}

TEST_CASE("complex scalars: sesquilinear inner product") {
  using C = std::complex<double>;
  AlgebraSpec<C> raw;
  raw.kind = Kind::Antisymmetric;
  raw.generators = 2;
  raw.truncation = 2;
  const auto spec = make_spec(std::move(raw));
  NormSpec<C> ns{WeightSpec::factorial_inv(), Gram::Normalized, std::nullopt};
  Element<C> a(spec);
  a.add_term(Monomial{{1}}, C(0, 1));  // i e1
  CHECK(norm(a, ns) == doctest::Approx(1.0));
  Element<C> b(spec);
  b.add_term(Monomial{{1}}, C(1, 0));
  const C ip = inner(a, b, ns);  // conj(i) * 1 = -i
  CHECK(ip.real() == doctest::Approx(0.0));
  CHECK(ip.imag() == doctest::Approx(-1.0));
}
