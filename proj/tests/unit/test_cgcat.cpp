#include <doctest.h>

#include "coarsegrp/cgcat.hpp"
#include "coarsegrp/errors.hpp"
#include "coarsegrp/literals.hpp"
#include "generators.hpp"

using namespace cg;
using namespace cg::cgcat;
using intlat::IntMatrix;

namespace {

intlat::IntVector iv(std::initializer_list<long> xs) {
  intlat::IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

const FgAbGroup Z = FgAbGroup::free(1);

Span halving() { return literals::parse_span("span{apex: Z, left: [[2]] -> Z, right: [[1]] -> Z}"); }

RationalMap scalar(const Rational& q) {
  RationalMap m(1, 1);
  m(0, 0) = q;
  return m;
}

}  // namespace

TEST_CASE("rational forms") {
  CHECK(rationalize(Hom(Z, Z, IntMatrix{{2}})) == scalar(2));
  const FgAbGroup zz2(1, iv({2}));
  CHECK(rationalize(Hom(zz2, Z, IntMatrix{{1, 0}})) == scalar(1));
  CHECK(rationalize(halving()) == scalar(Rational(1, 2)));
  CHECK(rationalize(compose_spans(halving(), halving())) == scalar(Rational(1, 4)));
  CHECK(rationalize(compose_spans(halving(), Span::from_hom(Hom(Z, Z, IntMatrix{{4}})))) == scalar(2));
  CHECK(rationalize(compose_spans(Span::identity(Z), Span::identity(Z))) == scalar(1));
}

TEST_CASE("spans need an equivalence on the left") {
  CHECK_THROWS_AS(Span(Hom::zero(Z, Z), Hom::identity(Z)), DomainError);
  CHECK_THROWS_AS(Span(Hom::identity(Z), Hom::identity(FgAbGroup::free(2))), DomainError);
}

TEST_CASE("span equivalence") {
  const Span s = halving();
  CHECK(spans_equivalent(s, s).verdict == Equivalence::Equivalent);
  const auto r = spans_equivalent(s, Span::identity(Z));
  CHECK(r.verdict == Equivalence::NotEquivalent);
  CHECK_FALSE(r.rational_equal);
  CHECK_FALSE(r.witness);

  // Apex replaced by apex + Z/6 with legs extended by zero.
  const FgAbGroup big(1, iv({6}));
  const Span t(Hom(big, Z, IntMatrix{{2, 0}}), Hom(big, Z, IntMatrix{{1, 0}}), false);
  const auto e = spans_equivalent(s, t);
  CHECK(e.verdict == Equivalence::Equivalent);
  REQUIRE(e.witness);
  CHECK(verify_witness(s, t, *e.witness));
}

TEST_CASE("ore squares") {
  auto sq = ore_square(Hom(Z, Z, IntMatrix{{2}}), Hom(Z, Z, IntMatrix{{3}}));
  CHECK(sq.apex == Z);
  CHECK(is_weak_equivalence(sq.w_prime));
  CHECK(fgab::compose(Hom(Z, Z, IntMatrix{{2}}), sq.f_prime) == fgab::compose(Hom(Z, Z, IntMatrix{{3}}), sq.w_prime));

  const Hom f(Z, Z, IntMatrix{{5}});
  sq = ore_square(Hom::identity(Z), f);
  CHECK(is_weak_equivalence(sq.w_prime));
  CHECK(rationalize(sq.w_prime) == scalar(1));
  CHECK(rationalize(sq.f_prime) == scalar(5));

  const FgAbGroup zz2(1, iv({2}));
  const Hom proj(zz2, Z, IntMatrix{{1, 0}});
  sq = ore_square(proj, Hom::identity(Z));
  CHECK(sq.apex == zz2);
  CHECK(is_weak_equivalence(sq.w_prime));
  CHECK_THROWS_AS(ore_square(Hom::zero(Z, Z), Hom::identity(Z)), DomainError);
}

TEST_CASE("homotopical axioms on explicit data") {
  const FgAbGroup zz2(1, iv({2}));
  const Hom w(zz2, zz2, IntMatrix{{2, 0}, {0, 1}});
  const Hom f = Hom::identity(zz2);
  const Hom g(zz2, zz2, IntMatrix{{1, 0}, {1, 1}});
  CHECK(is_weak_equivalence(w));
  CHECK(same_class({fgab::compose(w, f)}, {fgab::compose(w, g)}));
  CHECK(same_class({f}, {g}));

  const Hom x2(Z, Z, IntMatrix{{2}}), x3(Z, Z, IntMatrix{{3}}), x5(Z, Z, IntMatrix{{5}});
  CHECK(is_weak_equivalence(fgab::compose(x3, x2)));
  CHECK(is_weak_equivalence(fgab::compose(x5, x3)));
  for (const auto* h : {&x2, &x3, &x5}) CHECK(is_weak_equivalence(*h));

  const auto rep = check_homotopical_axioms(3, 100);
  CHECK(rep.violations.empty());
  CHECK(rep.cancellation_premises > 0);
  CHECK(rep.two_of_six_premises > 0);
}

TEST_CASE("rational maps") {
  RationalMap m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 1;
  CHECK(m * m.inverse() == RationalMap::identity(2));
  RationalMap sing(2, 2);
  sing(0, 0) = 1;
  sing(1, 0) = 2;
  CHECK_FALSE(sing.is_invertible());
  CHECK_THROWS_AS(sing.inverse(), DomainError);
}

TEST_CASE("composition of random spans is associative up to equivalence") {
  Rng rng(61);
  for (int c = 0; c < 30; ++c) {
    const auto x = gen::with_free_rank(rng, 1), y = gen::with_free_rank(rng, 2), z = gen::with_free_rank(rng, 1);
    const auto a = gen::span(rng, x, y), b = gen::span(rng, y, z), d = gen::span(rng, z, x);
    const auto lhs = compose_spans(compose_spans(a, b), d);
    const auto rhs = compose_spans(a, compose_spans(b, d));
    CHECK(spans_equivalent(lhs, rhs).verdict == Equivalence::Equivalent);
    CHECK(rationalize(compose_spans(a, b)) == rationalize(b) * rationalize(a));
  }
}
