#pragma once

// Hand-rolled generators for the property tests.

#include <vector>

#include "coarsegrp/cgcat.hpp"
#include "coarsegrp/quasihom.hpp"
#include "coarsegrp/random.hpp"
#include "coarsegrp/sample.hpp"

namespace cg::gen {

using fgab::FgAbGroup;
using fgab::Hom;

inline FgAbGroup with_free_rank(Rng& rng, std::size_t r0, long max_order = 6) {
  intlat::IntVector orders(r0, 0);
  if (rng.coin()) orders.emplace_back(rng.uniform(2, max_order));
  return FgAbGroup::from_cyclic_orders(orders);
}

/// X <- M -> Y with r0(M) = r0(X).
inline cgcat::Span span(Rng& rng, const FgAbGroup& x, const FgAbGroup& y, long bound = 3) {
  const FgAbGroup apex = with_free_rank(rng, x.free_rank());
  return cgcat::Span(sample::finitary_equivalence(rng, apex, x, bound), sample::hom(rng, apex, y, bound));
}

/// floor(a/b x + c/d) with small denominators, or an integer hom.
inline quasihom::QhMap certified_map(Rng& rng, std::size_t n) {
  if (rng.coin(30)) {
    const FgAbGroup src = FgAbGroup::free(n);
    const FgAbGroup tgt = FgAbGroup::free(1);
    return quasihom::QhMap::hom(sample::hom(rng, src, tgt, 4));
  }
  std::vector<quasihom::Rational> slopes;
  for (std::size_t i = 0; i < n; ++i) slopes.emplace_back(rng.uniform(-6, 6), rng.uniform(1, 5));
  for (auto& s : slopes) s.canonicalize();
  quasihom::Rational offset(rng.uniform(-4, 4), rng.uniform(1, 4));
  offset.canonicalize();
  return quasihom::QhMap::affine_floor(slopes, offset);
}

/// f changed on a few points of the window.
// Keep radius well inside half the defect window, or the edit looks like growth.
inline quasihom::QhMap perturbation(Rng& rng, const quasihom::QhMap& f, long radius) {
  std::vector<quasihom::TableEntry> entries;
  const auto count = rng.uniform(1, 4);
  for (long i = 0; i < count; ++i) {
    intlat::IntVector x;
    for (std::size_t k = 0; k < f.source_rank(); ++k) x.emplace_back(rng.uniform(-radius, radius));
    fgab::Element y = f(x);
    y[0] += rng.uniform(-5, 5);
    entries.push_back({x, y});
  }
  return quasihom::QhMap::table(f.source_rank(), f.target(), entries, f, "perturbed");
}

}  // namespace cg::gen
