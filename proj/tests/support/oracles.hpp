#pragma once

// Brute-force reference computations for the tests. Nothing here calls the
// library's normal-form code.

#include <cstddef>
#include <optional>
#include <vector>

#include "coarsegrp/geom.hpp"
#include "coarsegrp/intlat.hpp"

namespace cg::oracle {

using intlat::Integer;
using intlat::IntMatrix;
using intlat::IntVector;

/// Laplace expansion; fine up to 5x5.
Integer det(const IntMatrix& a);

/// d_k = gcd of all k x k minors, for k = 1..min(rows, cols). d_k = 0 past
/// the rank.
IntVector determinantal_divisors(const IntMatrix& a);

/// s_k = d_k / d_{k-1} for the nonzero d_k.
IntVector invariant_factors(const IntMatrix& a);

/// Is H in row-style Hermite normal form: zero rows last, pivots strictly
/// moving right and positive, entries above each pivot in [0, pivot).
bool is_row_hermite(const IntMatrix& h);

/// Number of cosets of the row lattice of a square nonsingular `basis` in
/// Z^n, by enumeration from 0 along the unit vectors. Gives up (nullopt)
/// after `limit` cosets.
std::optional<std::size_t> coset_count(const IntMatrix& basis, std::size_t limit);

/// x in the row lattice of a square nonsingular basis, via the adjugate.
bool in_square_lattice(const IntVector& x, const IntMatrix& basis);

/// Window reading of smallness for A subset of Z: for each k <= max_k the
/// set A + [-k, k] must not contain a run of length >= run_cap inside
/// [-window, window].
bool small_by_window(const geom::PeriodicSet& a, long window, long max_k, long run_cap);

/// Longest gap of A inside [-window, window] (window + 1 when A misses it).
long longest_gap(const geom::PeriodicSet& a, long window);

}  // namespace cg::oracle
