#pragma once

// Seeded generators for groups, homomorphisms and matrices, shared by the
// audit and the test suites.

#include "coarsegrp/fgab.hpp"
#include "coarsegrp/random.hpp"

namespace cg::sample {

using fgab::FgAbGroup;
using fgab::Hom;
using intlat::IntMatrix;
using intlat::Integer;

IntMatrix matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);

/// Free rank in [0, max_free_rank] plus up to max_factors random cyclic
/// summands of order <= max_exponent, normalized.
FgAbGroup group(Rng& rng, std::size_t max_free_rank, long max_exponent, std::size_t max_factors = 2);

/// A well-defined homomorphism: torsion columns only receive multiples of
/// target.modulus / gcd(order, modulus).
Hom hom(Rng& rng, const FgAbGroup& source, const FgAbGroup& target, long bound);

/// A homomorphism whose free block is square and nonsingular, hence a coarse
/// equivalence for the finitary ideals (source and target share free rank).
Hom finitary_equivalence(Rng& rng, const FgAbGroup& source, const FgAbGroup& target, long bound);

/// Element with free coordinates in [-bound, bound].
fgab::Element element(Rng& rng, const FgAbGroup& g, long bound);

}  // namespace cg::sample
