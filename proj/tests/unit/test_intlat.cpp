#include <doctest.h>

#include "coarsegrp/errors.hpp"
#include "coarsegrp/intlat.hpp"
#include "coarsegrp/random.hpp"
#include "coarsegrp/sample.hpp"
#include "oracles.hpp"

using namespace cg;
using namespace cg::intlat;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

bool same_row_lattice(const IntMatrix& a, const IntMatrix& b) {
  for (const auto& r : a.row_list())
    if (!lattice_membership(r, b)) return false;
  for (const auto& r : b.row_list())
    if (!lattice_membership(r, a)) return false;
  return true;
}

}  // namespace

TEST_CASE("hermite normal form examples") {
  auto h = hermite_normal_form(IntMatrix{{2, 0}, {0, 3}});
  CHECK(h.H == IntMatrix{{2, 0}, {0, 3}});
  CHECK(h.U == IntMatrix::identity(2));

  h = hermite_normal_form(IntMatrix{{0, 0}, {0, 0}});
  CHECK(h.H.is_zero());
  CHECK(h.U == IntMatrix::identity(2));
  CHECK(h.rank == 0);

  const IntMatrix a{{4, 6}, {2, 2}};
  h = hermite_normal_form(a);
  CHECK(h.H(0, 0) == 2);
  CHECK(h.U * a == h.H);
  CHECK(same_row_lattice(a, h.H));
}

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(IntMatrix::identity(3)).D == IntMatrix::identity(3));
  CHECK(smith_normal_form(IntMatrix{{2, 4}, {6, 8}}).invariant_factors() == iv({2, 4}));
  CHECK(smith_normal_form(IntMatrix{{6, 0}, {0, 4}}).invariant_factors() == iv({2, 12}));
}

TEST_CASE("normal forms agree with the brute-force oracles") {
  Rng rng(11);
  for (int c = 0; c < 300; ++c) {
    const auto a = sample::matrix(rng, static_cast<std::size_t>(rng.uniform(1, 4)),
                                  static_cast<std::size_t>(rng.uniform(1, 4)), 10);
    const auto snf = smith_normal_form(a);
    CHECK(snf.invariant_factors() == oracle::invariant_factors(a));
    CHECK(snf.U * snf.D * snf.V == a);
    CHECK(snf.P * a * snf.Q == snf.D);
    const auto h = hermite_normal_form(a);
    CHECK(oracle::is_row_hermite(h.H));
    CHECK(h.U * a == h.H);
    CHECK(abs(oracle::det(h.U)) == 1);
    CHECK(same_row_lattice(a, h.H));
    CHECK(rank(a) == h.rank);
    // Left kernel: x a = 0, and the kernel has the right dimension.
    const auto k = left_kernel(a);
    CHECK(k.rows() + h.rank == a.rows());
    for (const auto& row : k.row_list())
      for (const auto& v : row * a) CHECK(v == 0);
  }
}

TEST_CASE("lattice membership") {
  auto c = lattice_membership(iv({2, 0}), IntMatrix{{1, 0}, {0, 1}});
  REQUIRE(c);
  CHECK(*c == iv({2, 0}));
  CHECK_FALSE(lattice_membership(iv({1, 0}), IntMatrix{{2, 0}}));
  c = lattice_membership(iv({3, 3}), IntMatrix{{1, 2}, {0, 3}});
  REQUIRE(c);
  CHECK(*c == iv({3, -1}));
  CHECK_THROWS_AS(lattice_membership(iv({1, 2, 3}), IntMatrix{{1, 0}}), DomainError);
}

TEST_CASE("lattice index") {
  CHECK(lattice_index(IntMatrix{{2, 0}, {0, 2}}, 2) == ExtNat(4));
  CHECK(lattice_index(IntMatrix{{1, 0}, {0, 1}}, 2) == ExtNat(1));
  CHECK_FALSE(lattice_index(IntMatrix{{1, 0}}, 2).is_finite());
  CHECK(oracle::coset_count(IntMatrix{{2, 0}, {0, 2}}, 64) == std::optional<std::size_t>(4));

  Rng rng(12);
  int seen = 0;
  while (seen < 100) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto b = sample::matrix(rng, n, n, 3);
    const Integer d = abs(oracle::det(b));
    if (d == 0 || d > 64) continue;
    ++seen;
    const auto idx = lattice_index(b, n);
    REQUIRE(idx.is_finite());
    CHECK(idx.value() == d);
    CHECK(oracle::coset_count(b, 64) == std::optional<std::size_t>(d.get_ui()));
  }
}

TEST_CASE("big entries stay exact") {
  const IntMatrix a{{1000000007, 0}, {0, 998244353}};
  const auto snf = smith_normal_form(a * a);
  CHECK(snf.invariant_factors() == oracle::invariant_factors(a * a));
}

TEST_CASE("floor division") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_mod(-7, 2) == 1);
  CHECK(floor_div(7, -2) == -4);
  CHECK(floor_mod(7, -2) == -1);
}

TEST_CASE("extended naturals") {
  CHECK(ExtNat(3) < ExtNat::infinite());
  CHECK_FALSE(ExtNat::infinite() < ExtNat::infinite());
  CHECK(ExtNat::infinite().to_string("ALEPH0") == "ALEPH0");
  CHECK_THROWS_AS(ExtNat::infinite().value(), DomainError);
}
