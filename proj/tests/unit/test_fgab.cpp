#include <doctest.h>

#include "coarsegrp/errors.hpp"
#include "coarsegrp/fgab.hpp"
#include "coarsegrp/random.hpp"
#include "coarsegrp/sample.hpp"

using namespace cg;
using namespace cg::fgab;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

const FgAbGroup Z = FgAbGroup::free(1);
const FgAbGroup Z2 = FgAbGroup::free(2);

}  // namespace

TEST_CASE("group normal form") {
  CHECK(FgAbGroup::from_cyclic_orders(iv({2, 3})) == FgAbGroup::cyclic(6));
  CHECK(FgAbGroup::from_cyclic_orders(iv({2, 2})).torsion() == iv({2, 2}));
  CHECK(FgAbGroup::from_cyclic_orders(iv({0, 0})) == Z2);
  CHECK(FgAbGroup::from_cyclic_orders(iv({4, 6, 0})).to_string() == "Z + Z/2 + Z/12");
  CHECK_THROWS_AS(FgAbGroup(0, iv({4, 6})), DomainError);
  CHECK(FgAbGroup::trivial().to_string() == "0");
}

TEST_CASE("homomorphisms must be well defined") {
  CHECK_THROWS_AS(Hom(FgAbGroup::cyclic(2), Z, IntMatrix{{1}}), DomainError);
  CHECK_NOTHROW(Hom(FgAbGroup::cyclic(2), FgAbGroup::cyclic(4), IntMatrix{{2}}));
  CHECK_THROWS_AS(Hom(FgAbGroup::cyclic(2), FgAbGroup::cyclic(4), IntMatrix{{1}}), DomainError);
  CHECK_THROWS_AS(Hom(Z, Z, IntMatrix{{1, 2}}), DomainError);
}

TEST_CASE("kernels") {
  CHECK(kernel(Hom(Z, Z, IntMatrix{{2}})).group.is_trivial());
  const FgAbGroup zz2(1, iv({2}));
  CHECK(kernel(Hom(zz2, Z, IntMatrix{{1, 0}})).group == FgAbGroup::cyclic(2));
  const auto k = kernel(Hom(Z2, Z, IntMatrix{{1, 2}}));
  CHECK(k.group == Z);
  const Subgroup ks = kernel_subgroup(Hom(Z2, Z, IntMatrix{{1, 2}}));
  CHECK(ks == Subgroup(Z2, {iv({-2, 1})}));
  // Solutions with small coordinates are exactly the multiples of (-2, 1).
  for (long x = -4; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y) CHECK(ks.contains(iv({x, y})) == (x + 2 * y == 0));
}

TEST_CASE("images and indices") {
  CHECK(image_subgroup(Hom(Z, Z, IntMatrix{{2}})) == Subgroup(Z, {iv({2})}));
  CHECK(image_subgroup(Hom::zero(Z2, Z)).is_trivial());
  const Subgroup im = image_subgroup(Hom(Z2, Z2, IntMatrix{{2, 0}, {0, 3}}));
  CHECK(subgroup_index(im) == ExtNat(6));
  CHECK(subgroup_index(Subgroup(Z, {iv({2})})) == ExtNat(2));
  CHECK_FALSE(subgroup_index(Subgroup(Z2, {iv({1, 0})})).is_finite());
  const auto z4 = FgAbGroup::cyclic(4);
  CHECK(subgroup_index(Subgroup(z4, {iv({2})})) == ExtNat(2));
  CHECK_THROWS_AS(Subgroup(z4, {iv({1, 0})}), DomainError);
}

TEST_CASE("quotients") {
  CHECK(quotient(Z, Subgroup(Z, {iv({2})})).group == FgAbGroup::cyclic(2));
  const FgAbGroup zz2(1, iv({2}));
  CHECK(quotient(zz2, Subgroup::torsion(zz2)).group == Z);
  const auto q = quotient(Z2, Subgroup(Z2, {iv({2, 0}), iv({0, 3})}));
  CHECK(q.group == FgAbGroup::cyclic(6));
  CHECK(q.group.order() == ExtNat(6));
  CHECK(kernel_subgroup(q.projection) == Subgroup(Z2, {iv({2, 0}), iv({0, 3})}));
}

TEST_CASE("direct sums") {
  CHECK(direct_sum({Z, Z}).group == Z2);
  CHECK(direct_sum({FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)}).group == FgAbGroup::cyclic(6));
  CHECK(direct_sum({FgAbGroup::cyclic(2), FgAbGroup::cyclic(2)}).group.torsion() == iv({2, 2}));
  const auto s = direct_sum({FgAbGroup::cyclic(2), FgAbGroup::cyclic(3)});
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(compose(s.projections[i], s.injections[i]) == Hom::identity(s.projections[i].target()));
}

TEST_CASE("pullbacks") {
  auto pb = pullback(Hom::identity(Z), Hom::identity(Z));
  CHECK(pb.apex == Z);
  pb = pullback(Hom(Z, Z, IntMatrix{{2}}), Hom(Z, Z, IntMatrix{{3}}));
  CHECK(pb.apex == Z);
  // P = {(x, y) : 3x = 2y} = <(2, 3)>, x from the source of g.
  const auto gen = iv({1});
  CHECK(abs(pb.to_x.apply(gen)[0]) == 2);
  CHECK(abs(pb.to_y.apply(gen)[0]) == 3);
  pb = pullback(Hom::zero(Z, FgAbGroup::trivial()), Hom::zero(Z, FgAbGroup::trivial()));
  CHECK(pb.apex == Z2);
}

TEST_CASE("pullback squares commute and are universal on small elements") {
  Rng rng(21);
  for (int c = 0; c < 100; ++c) {
    const auto x = sample::group(rng, 2, 6), y = sample::group(rng, 2, 6), z = sample::group(rng, 2, 6);
    const Hom g = sample::hom(rng, x, z, 3), f = sample::hom(rng, y, z, 3);
    const auto pb = pullback(f, g);
    CHECK(compose(g, pb.to_x) == compose(f, pb.to_y));
    // Every compatible pair (a, b) is hit.
    for (int t = 0; t < 5; ++t) {
      const auto a = sample::element(rng, x, 3);
      const auto b = sample::element(rng, y, 3);
      if (!(g.apply(a) == f.apply(b))) continue;
      const auto pair = direct_sum({x, y});
      const Hom both(pb.apex, pair.group,
                     (compose(pair.injections[0], pb.to_x) + compose(pair.injections[1], pb.to_y)).matrix());
      const auto target = pair.group.add(pair.injections[0].apply(a), pair.injections[1].apply(b));
      CHECK(image_subgroup(both).contains(target));
    }
  }
}

TEST_CASE("exactness of kernel, image and quotient") {
  Rng rng(22);
  for (int c = 0; c < 100; ++c) {
    const auto g = sample::group(rng, 3, 8), h = sample::group(rng, 3, 8);
    const Hom f = sample::hom(rng, g, h, 4);
    const auto k = kernel(f);
    CHECK(compose(f, k.inclusion) == Hom::zero(k.group, h));
    CHECK(kernel_subgroup(k.inclusion).is_trivial());
    CHECK(image_subgroup(k.inclusion) == kernel_subgroup(f));
    const auto q = quotient(h, image_subgroup(f));
    CHECK(compose(q.projection, f) == Hom::zero(g, q.group));
    CHECK(image_subgroup(q.projection).is_whole());
    // Ranks add up: r0(G) = r0(ker) + r0(im).
    CHECK(g.free_rank() == k.group.free_rank() + subgroup_free_rank(image_subgroup(f)));
  }
}

TEST_CASE("invariants") {
  const FgAbGroup g(2, iv({6}));
  const auto inv = invariants(g, {5});
  CHECK(inv.r0 == 2);
  CHECK(inv.r_p.at(2) == 1);
  CHECK(inv.r_p.at(3) == 1);
  CHECK(inv.r_p.at(5) == 0);
  CHECK(inv.r_d == ExtNat(2));
  CHECK_FALSE(inv.w_d.is_finite());

  const auto z8 = invariants(FgAbGroup::cyclic(8));
  CHECK(z8.r0 == 0);
  CHECK(z8.r_p.at(2) == 1);
  REQUIRE(z8.ell);
  CHECK(*z8.ell == doctest::Approx(3.0));
  CHECK(z8.w_d == ExtNat(1));

  const auto triv = invariants(FgAbGroup::trivial());
  CHECK(triv.r0 == 0);
  CHECK(triv.r == ExtNat(0));
  REQUIRE(triv.ell);
  CHECK(*triv.ell == 0.0);
}
