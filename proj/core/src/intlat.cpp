#include "coarsegrp/intlat.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "coarsegrp/errors.hpp"

namespace cg::intlat {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainError("row length does not match column count");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
  return out;
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::row_block(std::size_t first, std::size_t last) const {
  IntMatrix out(last - first, cols_);
  for (std::size_t i = first; i < last; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i - first, j) = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::stack(const IntMatrix& below) const {
  if (rows_ == 0) {
    IntMatrix copy = below;
    if (copy.rows_ == 0) copy.cols_ = std::max(cols_, below.cols_);
    return copy;
  }
  if (below.rows_ == 0) return *this;
  if (below.cols_ != cols_) throw DomainError("stack: column counts differ");
  IntMatrix out(rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product: dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

IntVector operator*(const IntVector& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw DomainError("vector-matrix product: dimension mismatch");
  IntVector out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

IntVector operator*(const IntMatrix& m, const IntVector& v) {
  if (v.size() != m.cols()) throw DomainError("matrix-vector product: dimension mismatch");
  IntVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

const Integer& ExtNat::value() const {
  if (!value_) throw DomainError("value() of an infinite extended natural");
  return *value_;
}

std::string ExtNat::to_string(const std::string& infinite_name) const {
  return value_ ? value_->get_str() : infinite_name;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

namespace {

// Elimination state that records every elementary operation on both sides,
// together with the inverses, so that P*A*Q = D and A = U*D*V stay exact.
struct Elimination {
  IntMatrix a;
  IntMatrix p, p_inv;  // row side
  IntMatrix q, q_inv;  // column side

  explicit Elimination(const IntMatrix& input)
      : a(input),
        p(IntMatrix::identity(input.rows())),
        p_inv(IntMatrix::identity(input.rows())),
        q(IntMatrix::identity(input.cols())),
        q_inv(IntMatrix::identity(input.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < p.cols(); ++c) std::swap(p(i, c), p(j, c));
    for (std::size_t r = 0; r < p_inv.rows(); ++r) std::swap(p_inv(r, i), p_inv(r, j));
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += k * a(j, c);
    for (std::size_t c = 0; c < p.cols(); ++c) p(i, c) += k * p(j, c);
    for (std::size_t r = 0; r < p_inv.rows(); ++r) p_inv(r, j) -= k * p_inv(r, i);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < p.cols(); ++c) p(i, c) = -p(i, c);
    for (std::size_t r = 0; r < p_inv.rows(); ++r) p_inv(r, i) = -p_inv(r, i);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < q.rows(); ++r) std::swap(q(r, i), q(r, j));
    for (std::size_t c = 0; c < q_inv.cols(); ++c) std::swap(q_inv(i, c), q_inv(j, c));
  }
  // col_i += k * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) += k * a(r, j);
    for (std::size_t r = 0; r < q.rows(); ++r) q(r, i) += k * q(r, j);
    for (std::size_t c = 0; c < q_inv.cols(); ++c) q_inv(j, c) -= k * q_inv(i, c);
  }
};

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& input) {
  Elimination e(input);
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (e.a(i, c) == 0) continue;
        if (best == m || abs(e.a(i, c)) < abs(e.a(best, c))) best = i;
      }
      if (best == m) break;
      e.swap_rows(r, best);
      bool cleared = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (e.a(i, c) == 0) continue;
        e.add_row(i, r, -floor_div(e.a(i, c), e.a(r, c)));
        if (e.a(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (e.a(r, c) == 0) continue;
    if (e.a(r, c) < 0) e.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) e.add_row(i, r, -floor_div(e.a(i, c), e.a(r, c)));
    ++r;
  }
  return HermiteResult{std::move(e.a), std::move(e.p), r};
}

SnfDecomposition smith_normal_form(const IntMatrix& input) {
  Elimination e(input);
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  std::size_t t = 0;
  while (t < m && t < n) {
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (e.a(i, j) == 0) continue;
        if (pi == m || abs(e.a(i, j)) < abs(e.a(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi == m) break;
    e.swap_rows(t, pi);
    e.swap_cols(t, pj);

    bool cleared = true;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (e.a(i, t) == 0) continue;
      e.add_row(i, t, -floor_div(e.a(i, t), e.a(t, t)));
      if (e.a(i, t) != 0) cleared = false;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (e.a(t, j) == 0) continue;
      e.add_col(j, t, -floor_div(e.a(t, j), e.a(t, t)));
      if (e.a(t, j) != 0) cleared = false;
    }
    if (!cleared) continue;

    // Pivot must divide the whole remaining block; otherwise fold the
    // offending row into the pivot row and eliminate again.
    bool divides = true;
    for (std::size_t i = t + 1; i < m && divides; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (floor_mod(e.a(i, j), e.a(t, t)) != 0) {
          e.add_row(t, i, Integer(1));
          divides = false;
          break;
        }
    if (!divides) continue;

    if (e.a(t, t) < 0) e.negate_row(t);
    ++t;
  }
  SnfDecomposition out;
  out.rank = t;
  out.D = std::move(e.a);
  out.P = std::move(e.p);
  out.U = std::move(e.p_inv);
  out.Q = std::move(e.q);
  out.V = std::move(e.q_inv);
  return out;
}

IntVector SnfDecomposition::invariant_factors() const {
  IntVector out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

std::optional<IntVector> lattice_membership(const IntVector& v, const IntMatrix& basis) {
  if (v.size() != basis.cols())
    throw DomainError("lattice_membership: vector has length " + std::to_string(v.size()) +
                      ", basis has " + std::to_string(basis.cols()) + " columns");
  const SnfDecomposition snf = smith_normal_form(basis);
  // x * basis = v  <=>  (x * P^-1) * D = v * Q
  const IntVector w = v * snf.Q;
  IntVector y(basis.rows());
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (j < snf.rank) {
      const Integer& d = snf.D(j, j);
      if (floor_mod(w[j], d) != 0) return std::nullopt;
      y[j] = w[j] / d;
    } else if (w[j] != 0) {
      return std::nullopt;
    }
  }
  return y * snf.P;
}

ExtNat lattice_index(const IntMatrix& sub, std::size_t ambient_rank) {
  if (sub.rows() > 0 && sub.cols() != ambient_rank)
    throw DomainError("lattice_index: sublattice rows do not lie in Z^" +
                      std::to_string(ambient_rank));
  if (ambient_rank == 0) return ExtNat(1);
  if (sub.rows() == 0) return ExtNat::infinite();
  const SnfDecomposition snf = smith_normal_form(sub);
  if (snf.rank < ambient_rank) return ExtNat::infinite();
  Integer idx = 1;
  for (const auto& d : snf.invariant_factors()) idx *= d;
  return ExtNat(idx);
}

std::size_t rank(const IntMatrix& a) {
  if (a.empty()) return 0;
  return hermite_normal_form(a).rank;
}

IntMatrix left_kernel(const IntMatrix& a) {
  if (a.rows() == 0) return IntMatrix(0, 0);
  if (a.cols() == 0) return IntMatrix::identity(a.rows());
  const HermiteResult h = hermite_normal_form(a);
  return h.U.row_block(h.rank, a.rows());
}

IntMatrix row_lattice_basis(const IntMatrix& a) {
  if (a.rows() == 0) return IntMatrix(0, a.cols());
  const HermiteResult h = hermite_normal_form(a);
  return h.H.row_block(0, h.rank);
}

std::string to_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].get_str();
  }
  return out + ")";
}

}  // namespace cg::intlat
