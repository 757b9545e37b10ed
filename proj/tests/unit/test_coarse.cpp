#include <doctest.h>

#include "coarsegrp/coarse.hpp"
#include "coarsegrp/errors.hpp"
#include "coarsegrp/random.hpp"
#include "coarsegrp/sample.hpp"

using namespace cg;
using namespace cg::coarse;

namespace {

using intlat::IntMatrix;
using intlat::IntVector;

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

const FgAbGroup Z = FgAbGroup::free(1);
const FgAbGroup Z2 = FgAbGroup::free(2);

FiniteSubset ints(std::initializer_list<long> xs) {
  std::vector<Element> e;
  for (long x : xs) e.push_back(iv({x}));
  return FiniteSubset(Z, e);
}

}  // namespace

TEST_CASE("membership") {
  CHECK(ideal_contains(GroupIdeal::finitary(Z), ints({-3, 0, 7})));
  CHECK_FALSE(ideal_contains(GroupIdeal::finitary(Z), Subgroup(Z, {iv({2})})));
  const auto lin = GroupIdeal::linear(Subgroup(Z2, {iv({1, 0})}));
  CHECK(ideal_contains(lin, Subgroup(Z2, {iv({1, 0})})));
  CHECK_FALSE(ideal_contains(lin, Subgroup(Z2, {iv({1, 1})})));
  CHECK(ideal_contains(GroupIdeal::bounded(Z), Subgroup::whole(Z)));
  CHECK_FALSE(ideal_contains(GroupIdeal::discrete(Z), ints({0, 1})));
  CHECK(ideal_contains(GroupIdeal::discrete(Z), ints({0})));
  CHECK(ideal_contains(GroupIdeal::finitary(FgAbGroup::cyclic(6)), Subgroup::whole(FgAbGroup::cyclic(6))));
}

TEST_CASE("connectedness") {
  CHECK(is_connected(GroupIdeal::finitary(Z)));
  CHECK(is_connected(GroupIdeal::bounded(Z)));
  CHECK_FALSE(is_connected(GroupIdeal::discrete(Z)));
  CHECK(is_connected(GroupIdeal::discrete(FgAbGroup::trivial())));
  CHECK_FALSE(is_connected(GroupIdeal::linear(Subgroup(Z, {iv({2})}))));
}

TEST_CASE("ideal axioms hold for the built-in kinds") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    CHECK(audit_ideal_axioms(GroupIdeal::finitary(Z), 200, seed).passed);
    CHECK(audit_ideal_axioms(GroupIdeal::linear(Subgroup(Z, {iv({2})})), 200, seed).passed);
    CHECK(audit_ideal_axioms(GroupIdeal::bounded(FgAbGroup(1, iv({4}))), 200, seed).passed);
    CHECK(audit_ideal_axioms(GroupIdeal::discrete(Z2), 200, seed).passed);
  }
}

TEST_CASE("an adversarial family fails at sums") {
  SubsetFamily fam;
  fam.name = "subsets of {0,1}";
  fam.ambient = Z;
  fam.contains = [](const FiniteSubset& k) {
    for (const auto& e : k.elements())
      if (e[0] != 0 && e[0] != 1) return false;
    return true;
  };
  fam.sample = [](Rng& rng) {
    std::vector<Element> e{iv({0})};
    if (rng.coin()) e.push_back(iv({1}));
    return FiniteSubset(Z, e);
  };
  const auto audit = audit_ideal_axioms(fam, 100, 7);
  CHECK_FALSE(audit.passed);
  REQUIRE(audit.counterexample);
}

TEST_CASE("closeness") {
  const Hom id = Hom::identity(Z);
  const auto same = are_close(id, id, GroupIdeal::finitary(Z));
  CHECK(same.close);
  CHECK(same.difference_image.is_trivial());
  CHECK_FALSE(are_close(id, Hom(Z, Z, IntMatrix{{2}}), GroupIdeal::finitary(Z)).close);
  const FgAbGroup zz2(1, iv({2}));
  const FgAbGroup z2 = FgAbGroup::cyclic(2);
  const Hom f(zz2, z2, IntMatrix{{0, 0}});
  const Hom g(zz2, z2, IntMatrix{{0, 1}});
  CHECK(are_close(f, g, GroupIdeal::finitary(z2)).close);
}

TEST_CASE("entourage balls") {
  CHECK(entourage_ball(ints({-1, 0, 1}), iv({5})) == ints({4, 5, 6}));
  CHECK(entourage_ball(ints({0}), iv({-9})) == ints({-9}));
  const FiniteSubset k(Z2, {iv({0, 0}), iv({1, 0})});
  CHECK(entourage_ball(k, iv({2, 3})) == FiniteSubset(Z2, {iv({2, 3}), iv({3, 3})}));
  CHECK_THROWS_AS(entourage_ball(Subgroup::whole(Z), iv({0})), DomainError);
  CHECK(entourage_ball(Subgroup::whole(FgAbGroup::cyclic(3)), iv({1})).size() == 3);
}

TEST_CASE("product ideals") {
  CHECK(product_ideal({GroupIdeal::finitary(Z), GroupIdeal::finitary(Z)}).ideal.kind() == IdealKind::Finitary);
  const auto lin = product_ideal({GroupIdeal::linear(Subgroup(Z, {iv({2})})), GroupIdeal::linear(Subgroup(Z, {iv({3})}))});
  REQUIRE(lin.ideal.as_linear());
  CHECK(*lin.ideal.as_linear() == Subgroup(Z2, {iv({2, 0}), iv({0, 3})}));
  const auto bd = product_ideal({GroupIdeal::bounded(Z), GroupIdeal::discrete(Z)});
  REQUIRE(bd.ideal.as_linear());
  CHECK(*bd.ideal.as_linear() == Subgroup(Z2, {iv({1, 0})}));
  CHECK_THROWS_AS(product_ideal({GroupIdeal::finitary(Z), GroupIdeal::bounded(Z)}), DomainError);
}

TEST_CASE("finite-rank and kappa ideals on finitely generated groups") {
  CHECK_THROWS_AS(GroupIdeal::finite_rank(Z), DomainError);
  CHECK(GroupIdeal::kappa(Z, "omega").kind() == IdealKind::Finitary);
  CHECK_THROWS_AS(GroupIdeal::kappa(Z, "aleph1"), DomainError);
}

TEST_CASE("closeness is an equivalence relation on random homs") {
  Rng rng(31);
  for (int c = 0; c < 60; ++c) {
    const auto g = sample::group(rng, 2, 6), h = sample::group(rng, 2, 6);
    const auto ideal = GroupIdeal::finitary(h);
    const Hom f1 = sample::hom(rng, g, h, 3), f2 = sample::hom(rng, g, h, 3), f3 = sample::hom(rng, g, h, 3);
    CHECK(are_close(f1, f1, ideal).close);
    CHECK(are_close(f1, f2, ideal).close == are_close(f2, f1, ideal).close);
    if (are_close(f1, f2, ideal).close && are_close(f2, f3, ideal).close) CHECK(are_close(f1, f3, ideal).close);
  }
}
