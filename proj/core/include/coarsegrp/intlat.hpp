#pragma once

// Exact integer lattice algebra: Hermite and Smith normal forms,
// integer kernels, lattice membership and index.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace cg::intlat {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Builds a matrix whose rows are `rows`; every row must have `cols` entries.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  IntVector col(std::size_t c) const;
  std::vector<IntVector> row_list() const;

  IntMatrix transpose() const;
  /// Rows [first, last) as a new matrix.
  IntMatrix row_block(std::size_t first, std::size_t last) const;
  /// Vertical concatenation; column counts must agree (an empty side is allowed).
  IntMatrix stack(const IntMatrix& below) const;

  bool is_zero() const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
/// Row vector times matrix.
IntVector operator*(const IntVector& v, const IntMatrix& m);
/// Matrix times column vector.
IntVector operator*(const IntMatrix& m, const IntVector& v);

/// Natural number or infinity. Used both for subgroup indices and for the
/// countable cardinal scale {0, 1, 2, ..., ALEPH0}.
class ExtNat {
 public:
  ExtNat() : value_(Integer(0)) {}
  ExtNat(Integer v) : value_(std::move(v)) {}  // NOLINT(implicit)
  ExtNat(long v) : value_(Integer(v)) {}       // NOLINT(implicit)
  static ExtNat infinite() {
    ExtNat e;
    e.value_.reset();
    return e;
  }

  bool is_finite() const { return value_.has_value(); }
  const Integer& value() const;

  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    if (a.is_finite() != b.is_finite()) return false;
    return !a.is_finite() || *a.value_ == *b.value_;
  }
  friend bool operator<(const ExtNat& a, const ExtNat& b) {
    if (!a.is_finite()) return false;
    if (!b.is_finite()) return true;
    return *a.value_ < *b.value_;
  }
  friend bool operator<=(const ExtNat& a, const ExtNat& b) { return !(b < a); }

  /// Decimal value, or `infinite_name` when infinite.
  std::string to_string(const std::string& infinite_name = "INFINITE") const;

 private:
  std::optional<Integer> value_;
};

/// H = U * A with U unimodular and H in row-style Hermite normal form.
struct HermiteResult {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};

/// A = U * D * V; equivalently P * A * Q = D with P = U^-1, Q = V^-1.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix P;
  IntMatrix Q;
  std::size_t rank = 0;

  /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank.
  IntVector invariant_factors() const;
};

HermiteResult hermite_normal_form(const IntMatrix& a);

/// Pivot rule: smallest nonzero |entry| in the active block, ties broken by
/// lowest (row, col). The diagonal is the unique invariant-factor sequence.
SnfDecomposition smith_normal_form(const IntMatrix& a);

/// Integer coefficients x with x * basis == v, or nullopt when v is not in
/// the row lattice. Throws DomainError on dimension mismatch.
std::optional<IntVector> lattice_membership(const IntVector& v, const IntMatrix& basis);

/// Index of the row lattice of `sub` in Z^ambient_rank.
ExtNat lattice_index(const IntMatrix& sub, std::size_t ambient_rank);

std::size_t rank(const IntMatrix& a);

/// Basis (as rows) of the left kernel {x : x * a = 0}.
IntMatrix left_kernel(const IntMatrix& a);

/// Canonical basis of the row lattice: the nonzero rows of the HNF.
IntMatrix row_lattice_basis(const IntMatrix& a);

/// Floor division and the matching nonnegative-or-sign-of-divisor remainder.
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

std::string to_string(const IntVector& v);

}  // namespace cg::intlat
