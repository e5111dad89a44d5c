#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gradenorm/algebra.hpp"
#include "gradenorm/rational.hpp"
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

template <class S = double>
SpecPtr<S> paired_of(int d, int n, int chi, std::vector<S> omega) {
  AlgebraSpec<S> spec;
  spec.kind = Kind::Paired;
  spec.generators = d;
  spec.truncation = n;
  spec.chi = chi;
  spec.pairing = std::move(omega);
  return make_spec(std::move(spec));
}

template <class S>
Element<S> random_element(const SpecPtr<S>& spec, int max_degree, TrialRng& rng) {
  Element<S> a(spec);
  for (int n = 0; n <= max_degree; ++n)
    for (const auto& m : degree_basis(spec->shape(), n))
      a.add_term(m, S(rng.uniform_int(-3, 3)));
  return a;
}

double rel_distance(const Element<double>& a, const Element<double>& b) {
  const double den = std::max(l2_norm(a), l2_norm(b));
  return den == 0.0 ? l2_distance(a, b) : l2_distance(a, b) / den;
}

}  // namespace

TEST_CASE("unit is a two-sided multiplicative identity") {
  for (auto spec : {spec_of(Kind::Tensor, 2, 4), spec_of(Kind::Symmetric, 3, 4),
                    spec_of(Kind::Antisymmetric, 4, 4), spec_of(Kind::Super, 4, 4, 2)}) {
    const auto e0 = unit(spec);
    CHECK(mul(e0, e0) == e0);
    TrialRng rng(1, 0);
    const auto x = random_element(spec, 2, rng);
    CHECK(mul(e0, x) == x);
    CHECK(mul(x, e0) == x);
  }
  const auto cl = paired_of<double>(2, 4, 1, {1, 0, 0, 1});
  TrialRng rng(1, 1);
  const auto x = random_element(cl, 2, rng);
  CHECK(mul_twisted(unit(cl), x) == x);
  CHECK(mul_twisted(x, unit(cl)) == x);
}

TEST_CASE("monomial canonicalization") {
  const auto gr = spec_of(Kind::Antisymmetric, 3, 3);
  SUBCASE("one transposition flips the sign") {
    const auto m = monomial(gr, {2, 1});
    CHECK(m.coefficient(Monomial{{1, 2}}) == -1.0);
    CHECK(m.terms().size() == 1);
  }
  SUBCASE("repeated antisymmetric letter vanishes") {
    CHECK(monomial(gr, {1, 1}).is_zero());
  }
  SUBCASE("symmetric words sort without sign") {
    const auto sym = spec_of(Kind::Symmetric, 3, 3);
    CHECK(monomial(sym, {2, 1}).coefficient(Monomial{{1, 2}}) == 1.0);
  }
  SUBCASE("super: evens commute freely, odds anticommute") {
    const auto su = spec_of(Kind::Super, 4, 4, 2);  // 1,2 even; 3,4 odd
    CHECK(monomial(su, {3, 1}).coefficient(Monomial{{1, 3}}) == 1.0);
    CHECK(monomial(su, {4, 3}).coefficient(Monomial{{3, 4}}) == -1.0);
    CHECK(monomial(su, {3, 3}).is_zero());
    CHECK(monomial(su, {2, 1, 2}).coefficient(Monomial{{1, 2, 2}}) == 1.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS((void)monomial(gr, {4}), std::out_of_range);
    CHECK_THROWS_AS((void)monomial(gr, {1, 2, 3, 1}), std::invalid_argument);
  }
}

TEST_CASE("grassmann squares match the binomial expansion") {
  const auto gr = spec_of(Kind::Antisymmetric, 2, 2);
  const double lambda = 0.75;
  const auto a = unit(gr) + lambda * monomial(gr, {1});
  const auto sq = mul(a, a);
  auto expected = unit(gr) + (2 * lambda) * monomial(gr, {1});
  CHECK(sq == expected);  // f^2 = 0 kills the quadratic term
}

TEST_CASE("disjoint blades multiply by concatenation") {
  const auto gr = spec_of(Kind::Antisymmetric, 4, 4);
  const auto ab = mul(monomial(gr, {1, 2}), monomial(gr, {3, 4}));
  CHECK(ab.coefficient(Monomial{{1, 2, 3, 4}}) == 1.0);
  CHECK(ab.terms().size() == 1);
}

TEST_CASE("super even/odd products") {
  const auto su = spec_of(Kind::Super, 2, 4, 1);  // 1 even, 2 odd
  const auto theta = monomial(su, {2});
  CHECK(mul(theta, theta).is_zero());
  const auto x = monomial(su, {1});
  CHECK(mul(x, theta) == mul(theta, x));
}

TEST_CASE("clifford generator relations (chi = 1, omega = id)") {
  const auto cl = paired_of<double>(2, 4, 1, {1, 0, 0, 1});
  CHECK(mul_twisted(monomial(cl, {1}), monomial(cl, {1})) == unit(cl));
  const auto anti = mul_twisted(monomial(cl, {1}), monomial(cl, {2})) +
                    mul_twisted(monomial(cl, {2}), monomial(cl, {1}));
  CHECK(anti.is_zero());  // off-diagonal omega is zero
}

TEST_CASE("paired product mixes degrees p+q, p+q-2, ...") {
  const auto cl = paired_of<double>(3, 4, 1, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const auto p = mul_twisted(monomial(cl, {1, 2}), monomial(cl, {2, 3}));
  // (e1 e2)(e2 e3) = e1 e3 in the Clifford algebra
  CHECK(p.coefficient(Monomial{{1, 3}}) == 1.0);
  CHECK(p.terms().size() == 1);
  const auto q = mul_twisted(monomial(cl, {1, 2}), monomial(cl, {1, 2}));
  CHECK(q == -1.0 * unit(cl));
}

TEST_CASE("associativity: exact zero residual in rational arithmetic, d <= 4, N <= 4") {
  std::vector<SpecPtr<Rational>> specs = {
      spec_of<Rational>(Kind::Tensor, 2, 4),
      spec_of<Rational>(Kind::Symmetric, 4, 4),
      spec_of<Rational>(Kind::Antisymmetric, 4, 4),
      spec_of<Rational>(Kind::Super, 4, 4, 2),
      paired_of<Rational>(4, 4, 1,
                          {Rational(1), Rational(2), Rational(0), Rational(-1), Rational(2),
                           Rational(1), Rational(3), Rational(0), Rational(0), Rational(3),
                           Rational(1), Rational(2), Rational(-1), Rational(0), Rational(2),
                           Rational(1)}),
      paired_of<Rational>(3, 4, 0,
                          {Rational(2), Rational(1), Rational(-1), Rational(1), Rational(1),
                           Rational(0), Rational(-1), Rational(0), Rational(3)}),
  };
  std::uint64_t stream = 0;
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 60; ++trial) {
      TrialRng rng(42, stream++);
      const auto a = random_element(spec, 1, rng);
      const auto b = random_element(spec, 1, rng);
      const auto c = random_element(spec, 2, rng);
      const auto left = product(product(a, b), c);
      const auto right = product(a, product(b, c));
      REQUIRE(left == right);
    }
  }
}

TEST_CASE("associativity: 1e-10 relative in floating point") {
  std::vector<SpecPtr<double>> specs = {
      spec_of(Kind::Tensor, 2, 6), spec_of(Kind::Symmetric, 3, 6),
      spec_of(Kind::Antisymmetric, 4, 6), spec_of(Kind::Super, 4, 6, 2),
      paired_of<double>(3, 6, 1, {1, 0.5, 0, 0.5, 1, -0.25, 0, -0.25, 1})};
  std::uint64_t stream = 100;
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 100; ++trial) {
      TrialRng rng(7, stream++);
      const auto a = random_element(spec, 2, rng);
      const auto b = random_element(spec, 2, rng);
      const auto c = random_element(spec, 2, rng);
      const auto left = product(product(a, b), c);
      const auto right = product(a, product(b, c));
      REQUIRE(rel_distance(left, right) <= 1e-10);
    }
  }
}

TEST_CASE("graded commutativity with the kind's parity") {
  struct Case {
    SpecPtr<double> spec;
  };
  for (const auto& spec : {spec_of(Kind::Symmetric, 3, 6), spec_of(Kind::Antisymmetric, 4, 6),
                           spec_of(Kind::Super, 4, 6, 2)}) {
    const AlgebraShape shape = spec->shape();
    std::uint64_t stream = 0;
    for (int trial = 0; trial < 200; ++trial) {
      TrialRng rng(11, stream++);
      const int p = rng.uniform_int(0, 3);
      const int q = rng.uniform_int(0, 3);
      const int pa = rng.uniform_int(0, 1);
      const int pb = rng.uniform_int(0, 1);
      Element<double> a(spec), b(spec);
      for (const auto& m : degree_basis(shape, p))
        if (word_parity(shape, m) == pa) a.add_term(m, rng.normal());
      for (const auto& m : degree_basis(shape, q))
        if (word_parity(shape, m) == pb) b.add_term(m, rng.normal());
      if (a.is_zero() || b.is_zero()) continue;
      const double sign = (spec->chi == 1 && pa * pb % 2 == 1) ? -1.0 : 1.0;
      REQUIRE(rel_distance(mul(a, b), sign * mul(b, a)) <= 1e-12);
    }
  }
}

TEST_CASE("degree additivity for class-1 products") {
  const auto spec = spec_of(Kind::Symmetric, 3, 6);
  TrialRng rng(3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = rng.uniform_int(0, 3);
    const int q = rng.uniform_int(0, 3);
    Element<double> a(spec), b(spec);
    for (const auto& m : degree_basis(spec->shape(), p)) a.add_term(m, rng.normal());
    for (const auto& m : degree_basis(spec->shape(), q)) b.add_term(m, rng.normal());
    const auto ab = mul(a, b);
    for (int n = 0; n <= 6; ++n) {
      if (n != p + q) CHECK(project_degree(ab, n).is_zero());
    }
  }
}

TEST_CASE("project_degree splits and reassembles") {
  const auto spec = spec_of(Kind::Antisymmetric, 3, 3);
  const auto a = unit(spec) + 2.0 * monomial(spec, {1});
  CHECK(project_degree(a, 0) == unit(spec));
  CHECK(project_degree(a, 1) == 2.0 * monomial(spec, {1}));
  CHECK(project_degree(a, 2).is_zero());
  Element<double> sum(spec);
  for (int n = 0; n <= 3; ++n) sum += project_degree(a, n);
  CHECK(sum == a);
}

TEST_CASE("truncation flags products above N but not vanishing words") {
  const auto sym = spec_of(Kind::Symmetric, 2, 2);
  const auto over = mul(monomial(sym, {1, 1}), monomial(sym, {2}));
  CHECK(over.truncated());
  CHECK(over.is_zero());

  // degree-5 words in Grassmann d=3 vanish identically, no truncation event
  const auto gr = spec_of(Kind::Antisymmetric, 3, 4);
  const auto zero = mul(monomial(gr, {1, 2, 3}), monomial(gr, {1, 2}));
  CHECK_FALSE(zero.truncated());
  CHECK(zero.is_zero());

  // within the degree budget nothing is lost
  const auto ok = mul(monomial(sym, {1}), monomial(sym, {2}));
  CHECK_FALSE(ok.truncated());
  CHECK(ok.coefficient(Monomial{{1, 2}}) == 1.0);
}

TEST_CASE("find_nogo_witness") {
  SUBCASE("class-1 kinds return a generator") {
    const auto w = find_nogo_witness(spec_of(Kind::Antisymmetric, 3, 3));
    REQUIRE(w.has_value());
    CHECK(w->coefficient(Monomial{{1}}) == 1.0);
  }
  SUBCASE("negative definite pairing over R has no witness") {
    const auto spec = paired_of<double>(2, 2, 0, {-1, 0, 0, -1});
    CHECK_FALSE(find_nogo_witness(spec).has_value());
  }
  SUBCASE("indefinite pairing over R picks a nonnegative direction") {
    const auto spec = paired_of<double>(2, 2, 0, {-1, 2, 2, -1});
    const auto w = find_nogo_witness(spec);
    REQUIRE(w.has_value());
    const auto f2 = mul_twisted(*w, *w);
    CHECK(f2.coefficient(Monomial{}) >= -1e-12);  // omega(f,f) >= 0
  }
  SUBCASE("phase rotation fixes any complex pairing") {
    using C = std::complex<double>;
    const auto spec = paired_of<C>(2, 2, 0, {C(-1), C(0), C(0), C(-1)});
    const auto w = find_nogo_witness(spec);
    REQUIRE(w.has_value());
    const auto f2 = mul_twisted(*w, *w);
    const C omega_ff = f2.coefficient(Monomial{});
    CHECK(std::abs(omega_ff.imag()) <= 1e-12);
    CHECK(omega_ff.real() >= -1e-12);
    CHECK(omega_ff.real() == doctest::Approx(1.0));  // |omega(f,f)| = 1 after rotation
  }
}

TEST_CASE("mismatched specs are rejected") {
  const auto a = unit(spec_of(Kind::Antisymmetric, 2, 2));
  const auto b = unit(spec_of(Kind::Antisymmetric, 3, 2));
  CHECK_THROWS_AS((void)mul(a, b), std::invalid_argument);
  CHECK_THROWS_AS((void)mul(unit(paired_of<double>(2, 2, 1, {1, 0, 0, 1})),
                            unit(paired_of<double>(2, 2, 1, {1, 0, 0, 1}))),
                  std::invalid_argument);  // Paired kind must use mul_twisted
}
