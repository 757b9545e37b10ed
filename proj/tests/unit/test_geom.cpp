#include <doctest.h>

#include "coarsegrp/errors.hpp"
#include "coarsegrp/geom.hpp"
#include "coarsegrp/random.hpp"
#include "oracles.hpp"

using namespace cg;
using namespace cg::geom;

namespace {

const fgab::FgAbGroup Z = fgab::FgAbGroup::free(1);

CoverWitness intervals(long length, long window, long rho, std::size_t families) {
  CoverWitness w;
  w.dim = 1;
  w.window = window;
  w.families.resize(families);
  w.bound = {length - 1};
  w.separation = cube(1, rho);
  long j = 0;
  for (long lo = -window - (length - 1); lo <= window; lo += length, ++j)
    w.families[static_cast<std::size_t>(j) % families].push_back(Box{{lo}, {lo + length - 1}});
  return w;
}

}  // namespace

TEST_CASE("hand-made covers") {
  CHECK(check_cover(intervals(10, 100, 3, 2)).ok);
  const auto one = check_cover(intervals(10, 100, 3, 1));
  CHECK_FALSE(one.ok);
  CHECK_FALSE(one.violation.empty());

  CoverWitness whole;
  whole.dim = 1;
  whole.window = 50;
  whole.families = {{Box{{-50}, {50}}}};
  whole.bound = {100};
  whole.separation = cube(1, 1);
  const auto r = check_cover(whole);
  CHECK(r.ok);
  CHECK(r.unbounded_suspect);
}

TEST_CASE("constructed witnesses") {
  auto w = make_asdim_witness(1, cube(1, 1), 100);
  CHECK(w.families.size() == 2);
  CHECK(check_cover(w).ok);
  w = make_asdim_witness(1, cube(1, 0), 10);
  CHECK(w.bound == Point{1});
  CHECK(check_cover(w).ok);
  w = make_asdim_witness(2, cube(2, 2), 60);
  CHECK(w.families.size() == 3);
  CHECK(check_cover(w).ok);
  CHECK_FALSE(check_cover(merge_families(w)).ok);
  CHECK_THROWS_AS(make_asdim_witness(3, cube(3, 1), 10), DomainError);
  CHECK_THROWS_AS(make_asdim_witness(1, {{1}}, 10), DomainError);
}

TEST_CASE("bound sets do not depend on the window") {
  for (long rho : {1L, 4L, 17L}) {
    CHECK(make_asdim_witness(1, cube(1, rho), 200).bound == make_asdim_witness(1, cube(1, rho), 3000).bound);
    CHECK(make_asdim_witness(2, cube(2, rho), 150).bound == make_asdim_witness(2, cube(2, rho), 400).bound);
    CHECK(make_asdim_witness(1, cube(1, rho), 500).bound[0] < 2 * (rho + 1));
  }
}

TEST_CASE("cellularity") {
  CHECK_FALSE(is_cellular(coarse::GroupIdeal::finitary(Z)));
  CHECK(is_cellular(coarse::GroupIdeal::linear(fgab::Subgroup(Z, {{2}}))));
  CHECK(is_cellular(coarse::GroupIdeal::finitary(fgab::FgAbGroup::cyclic(6))));
  CHECK(is_cellular(coarse::GroupIdeal::bounded(Z)));
}

TEST_CASE("periodic sets") {
  const PeriodicSet finite(1, {}, {1, 5, 9});
  CHECK(finite.is_finite());
  CHECK(is_small(finite).value);
  CHECK_FALSE(is_large(finite).value);

  const PeriodicSet evens(2, {0}, {});
  CHECK(is_large(evens).value);
  CHECK_FALSE(is_small(evens).value);

  const PeriodicSet punctured(1, {0}, {0});
  CHECK_FALSE(punctured.contains(0));
  CHECK(punctured.contains(1));
  CHECK(is_large(punctured).value);
  CHECK_FALSE(is_small(punctured).value);

  CHECK(PeriodicSet(4, {0, 2}, {}) == PeriodicSet(2, {0}, {}));
  CHECK(PeriodicSet(2, {0}, {3, 3}) == PeriodicSet(2, {0}, {}));
  CHECK(PeriodicSet(6, {1, 3}, {7, -1}).to_string() == "periodic{m: 6, residues: [1, 3], except: [-1, +7]}");
}

TEST_CASE("d_less against small") {
  const auto fin = dlt_vs_small(PeriodicSet(1, {}, {1, 5}));
  CHECK(fin.in_d_less);
  CHECK(fin.in_s);
  const auto prog = dlt_vs_small(PeriodicSet(3, {1}, {}));
  CHECK_FALSE(prog.in_d_less);
  CHECK_FALSE(prog.in_s);
  const auto sym = dlt_vs_small(PeriodicSet(2, {0}, {0, 2}));
  CHECK_FALSE(sym.in_d_less);
  CHECK_FALSE(sym.in_s);
  Rng rng(81);
  for (int c = 0; c < 300; ++c) CHECK(dlt_vs_small(random_periodic(rng, 8, 3, 30)).equal_here);
}

TEST_CASE("small sets against the window oracle") {
  Rng rng(82);
  for (int c = 0; c < 300; ++c) {
    const auto a = random_periodic(rng, 6, 3, 10);
    CHECK(is_small(a).value == oracle::small_by_window(a, 300, 6, 80));
    CHECK(is_large(a).value == (oracle::longest_gap(a, 300) < 80));
  }
}

TEST_CASE("removing a small set from a large set keeps it large") {
  Rng rng(83);
  int premises = 0;
  for (int c = 0; c < 200; ++c) {
    const auto a = random_periodic(rng, 6, 3, 20);
    const auto l = random_periodic(rng, 6, 2, 20);
    if (!is_small(a).value || !is_large(l).value) continue;
    ++premises;
    // L \ A, approximated on a window: gaps stay bounded independently of it.
    long gap = 0, worst = 0;
    for (long x = -500; x <= 500; ++x) {
      gap = (l.contains(x) && !a.contains(x)) ? 0 : gap + 1;
      worst = std::max(worst, gap);
    }
    CHECK(worst < 100);
  }
  CHECK(premises > 0);
}
