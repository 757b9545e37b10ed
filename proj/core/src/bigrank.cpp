#include "coarsegrp/bigrank.hpp"

#include <algorithm>
#include <sstream>

#include "coarsegrp/errors.hpp"
#include "coarsegrp/fgab.hpp"

namespace cg::bigrank {

using coarse::GroupIdeal;

// ---------------------------------------------------------------- SparseVec

SparseVec::SparseVec(std::map<std::size_t, Integer> coeffs) {
  for (auto& [i, v] : coeffs)
    if (v != 0) coeffs_.emplace(i, std::move(v));
}

SparseVec SparseVec::basis(std::size_t i) { return SparseVec({{i, Integer(1)}}); }

Integer SparseVec::at(std::size_t i) const {
  auto it = coeffs_.find(i);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

void SparseVec::add(std::size_t i, const Integer& v) {
  if (v == 0) return;
  Integer& slot = coeffs_[i];
  slot += v;
  if (slot == 0) coeffs_.erase(i);
}

std::size_t SparseVec::support_end() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first + 1;
}

std::string SparseVec::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [i, v] : coeffs_) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(i) + ": " + v.get_str();
  }
  return out + "}";
}

// ---------------------------------------------------------------- endos

std::string Tail::to_string() const {
  if (scale == 0) return "zero";
  if (scale == 1) return shift == 0 ? "identity" : "shift(" + std::to_string(shift) + ")";
  if (shift == 0) return "scale(" + scale.get_str() + ")";
  return "scaled-shift(" + scale.get_str() + ", " + std::to_string(shift) + ")";
}

StructuredEndo::StructuredEndo(IntMatrix head, Tail tail) : tail_(std::move(tail)) {
  if (tail_.scale == 0) tail_.shift = 0;
  std::size_t rows = head.rows();
  while (rows > 0) {
    bool zero = true;
    for (std::size_t j = 0; j < head.cols() && zero; ++j) zero = head(rows - 1, j) == 0;
    if (!zero) break;
    --rows;
  }
  if (head.cols() == 0) {
    head_ = IntMatrix(0, 0);
  } else {
    head_ = IntMatrix(rows, head.cols());
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < head.cols(); ++j) head_(i, j) = head(i, j);
  }
}

SparseVec StructuredEndo::image_of_basis(std::size_t j) const {
  SparseVec out;
  if (j < head_.cols()) {
    for (std::size_t i = 0; i < head_.rows(); ++i) out.add(i, head_(i, j));
    return out;
  }
  const long target = static_cast<long>(j) + tail_.shift;
  if (tail_.scale != 0 && target >= 0) out.add(static_cast<std::size_t>(target), tail_.scale);
  return out;
}

SparseVec StructuredEndo::operator()(const SparseVec& x) const {
  SparseVec out;
  for (const auto& [j, v] : x.coeffs()) {
    const SparseVec col = image_of_basis(j);
    for (const auto& [i, w] : col.coeffs()) out.add(i, v * w);
  }
  return out;
}

std::string StructuredEndo::to_string() const {
  return "endo{head: " + head_.to_string() + ", tail: " + tail_.to_string() + "}";
}

StructuredEndo compose(const StructuredEndo& g, const StructuredEndo& f) {
  const long mf = static_cast<long>(f.head_cols());
  const long mg = static_cast<long>(g.head_cols());
  // Past column m every e_j goes through both tails.
  long m = mf;
  if (f.tail().scale != 0) m = std::max({mf, mg - f.tail().shift, -f.tail().shift, 0L});
  std::vector<SparseVec> cols;
  std::size_t rows = 0;
  for (long j = 0; j < m; ++j) {
    cols.push_back(g(f.image_of_basis(static_cast<std::size_t>(j))));
    rows = std::max(rows, cols.back().support_end());
  }
  IntMatrix head(rows, static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, v] : cols[j].coeffs()) head(i, j) = v;
  Tail tail{g.tail().scale * f.tail().scale, f.tail().shift + g.tail().shift};
  return StructuredEndo(std::move(head), tail);
}

namespace {

// Columns past `split` map injectively onto coordinates >= split + shift,
// which no earlier column reaches.
std::size_t decoupling_index(const StructuredEndo& f) {
  const long m = static_cast<long>(f.head_cols());
  const long rows = static_cast<long>(f.head().rows());
  const long k = f.tail().shift;
  return static_cast<std::size_t>(std::max({m, rows - k, -k, 0L}));
}

IntMatrix finite_block(const StructuredEndo& f, std::size_t cols, std::size_t rows) {
  IntMatrix block(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const SparseVec col = f.image_of_basis(j);
    for (const auto& [i, v] : col.coeffs()) {
      if (i >= rows) throw TheoremViolation("column escapes the finite block");
      block(i, j) = v;
    }
  }
  return block;
}

ExtNat ext_add(const ExtNat& a, const ExtNat& b) {
  if (!a.is_finite() || !b.is_finite()) return ExtNat::infinite();
  return ExtNat(a.value() + b.value());
}

}  // namespace

ExtNat rank_of_image(const StructuredEndo& f) {
  if (f.tail().scale != 0) return ExtNat::infinite();
  return ExtNat(static_cast<long>(intlat::rank(f.head())));
}

ExtNat kernel_rank(const StructuredEndo& f) {
  if (f.tail().scale == 0) return ExtNat::infinite();
  const std::size_t n = decoupling_index(f);
  if (n == 0) return ExtNat(0L);
  const std::size_t rows = static_cast<std::size_t>(static_cast<long>(n) + f.tail().shift);
  const IntMatrix block = finite_block(f, n, std::max(rows, f.head().rows()));
  return ExtNat(static_cast<long>(n - intlat::rank(block)));
}

StructuredReport analyze_structured(const StructuredEndo& f) {
  StructuredReport rep;
  rep.kernel_rank = kernel_rank(f);
  rep.image_rank = rank_of_image(f);
  rep.bornologous = {true, "images of finite-rank subgroups have finite rank"};
  const bool ker_finite = rep.kernel_rank.is_finite();
  rep.large_scale_injective = {ker_finite, "ker f has rank " + rep.kernel_rank.to_string("ALEPH0")};
  rep.effectively_proper = {ker_finite, ker_finite
                                            ? "f^-1(J) is an extension of a finite-rank group by ker f"
                                            : "f^-1(0) = ker f has infinite rank"};
  rep.uniformly_bounded_copreserving = {
      true, "K cap f(G) is free of finite rank; lifting a basis gives L with K cap f(G) = f(L)"};

  const Integer& c = f.tail().scale;
  const std::size_t n = decoupling_index(f);
  const long bound = static_cast<long>(n) + f.tail().shift;
  if (c == 0) {
    const std::size_t i = std::max(f.head().rows(), f.head_cols());
    rep.large_scale_surjective = {false, "f(G) lies in the first " + std::to_string(f.head().rows()) +
                                             " coordinates"};
    rep.escape_certificate = "e_i for every i >= " + std::to_string(i) +
                             " beyond the support of K: f(G) has no component there";
  } else if (abs(c) != 1) {
    rep.large_scale_surjective = {false, "the tail multiplies by " + c.get_str()};
    rep.escape_certificate = "e_i for every i >= " + std::to_string(bound) +
                             " beyond the support of K: coordinate i of f(G) lies in " + c.get_str() +
                             "Z, so e_i is not in f(G) + K";
  } else {
    const std::size_t rows = static_cast<std::size_t>(std::max(bound, 0L));
    const IntMatrix block = finite_block(f, n, std::max(rows, f.head().rows()));
    if (block.rows() != rows) throw TheoremViolation("finite block taller than the decoupling bound");
    rep.cokernel = fgab::present_quotient(rows, block.transpose()).group;
    rep.large_scale_surjective = {
        true, "coordinates >= " + std::to_string(bound) + " are hit by unit tail columns; cokernel " +
                  rep.cokernel->to_string() + " is finitely generated"};
  }
  const bool ce = rep.large_scale_injective.value && rep.large_scale_surjective.value &&
                  rep.bornologous.value && rep.uniformly_bounded_copreserving.value;
  rep.coarse_equivalence = {ce, ce ? "finite-rank kernel and finitely generated cokernel"
                                   : "fails " + std::string(!rep.large_scale_injective.value
                                                                ? "large-scale injectivity"
                                                                : "large-scale surjectivity")};
  if (rep.effectively_proper.value && !rep.uniformly_bounded_copreserving.value)
    throw TheoremViolation("effectively proper but not uniformly bounded copreserving");
  return rep;
}

bool classif1_check(const coarse::BigSumGroup&) {
  const StructuredReport rep = analyze_structured(StructuredEndo(IntMatrix(0, 0), Tail::zero()));
  const bool expected = false;  // r0 = ALEPH0 is not below omega
  if (rep.coarse_equivalence.value != expected)
    throw TheoremViolation("G -> 0 on the countable sum disagrees with i(G) < omega");
  return rep.coarse_equivalence.value;
}

bool classif1_check(const fgab::FgAbGroup& g) {
  const fgab::FgAbGroup zero = fgab::FgAbGroup::trivial();
  const fgab::Hom f = fgab::Hom::zero(g, zero);
  const GroupIdeal src = morph::omega_ideal(g, {morph::Invariant::R0, 0});
  const bool ce = morph::analyze_hom(f, src, GroupIdeal::bounded(zero)).coarse_equivalence.value;
  if (!ce) throw TheoremViolation("G -> 0 for finitely generated G should be a coarse equivalence");
  return ce;
}

morph::DichotomyCheck classif2_check(const StructuredEndo& f) {
  morph::DichotomyCheck out;
  const StructuredReport rep = analyze_structured(f);
  if (!rep.coarse_equivalence.value) {
    out.status = morph::DichotomyStatus::NotApplicable;
    out.reason = "not a coarse equivalence";
    return out;
  }
  out.source_value = ext_add(rep.kernel_rank, rep.image_rank);
  ExtNat coker = ExtNat(0L);
  if (rep.cokernel) coker = ExtNat(static_cast<long>(rep.cokernel->free_rank()));
  out.target_value = ext_add(rep.image_rank, coker);
  const bool holds = (out.source_value.is_finite() && out.target_value.is_finite()) ||
                     out.source_value == out.target_value;
  out.status = holds ? morph::DichotomyStatus::Holds : morph::DichotomyStatus::Violated;
  out.reason = "r0 = " + out.source_value.to_string("ALEPH0") + " and " +
               out.target_value.to_string("ALEPH0");
  return out;
}

StructuredEndo random_endo(Rng& rng, std::size_t max_head, long bound) {
  const auto rows = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_head)));
  const auto cols = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_head)));
  IntMatrix head(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) head(i, j) = static_cast<long>(rng.uniform(-bound, bound));
  Tail tail;
  switch (rng.uniform(0, 3)) {
    case 0: tail = Tail::identity(); break;
    case 1: tail = Tail::shift_by(static_cast<long>(rng.uniform(-3, 3))); break;
    case 2: tail = Tail::zero(); break;
    default: tail = Tail::scale_by(static_cast<long>(rng.uniform(-3, 3))); break;
  }
  return StructuredEndo(std::move(head), tail);
}

SparseVec random_vec(Rng& rng, std::size_t max_index, long bound, std::size_t max_terms) {
  SparseVec v;
  const auto terms = rng.uniform(0, static_cast<long>(max_terms));
  for (long t = 0; t < terms; ++t)
    v.add(static_cast<std::size_t>(rng.uniform(0, static_cast<long>(max_index))),
          Integer(static_cast<long>(rng.uniform(-bound, bound))));
  return v;
}

std::size_t span_rank(const std::vector<SparseVec>& gens) {
  std::size_t width = 0;
  for (const auto& g : gens) width = std::max(width, g.support_end());
  if (gens.empty() || width == 0) return 0;
  IntMatrix m(gens.size(), width);
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (const auto& [i, v] : gens[r].coeffs()) m(r, i) = v;
  return intlat::rank(m);
}

FunctorialityReport functoriality_audit(std::uint64_t seed, std::size_t cases) {
  FunctorialityReport rep;
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const StructuredEndo f = random_endo(rng, 6, 5);
    std::vector<SparseVec> gens, images;
    const auto k = rng.uniform(1, 4);
    for (long i = 0; i < k; ++i) {
      gens.push_back(random_vec(rng, 12, 5, 4));
      images.push_back(f(gens.back()));
    }
    ++rep.cases;
    const std::size_t r = span_rank(images);
    if (r > span_rank(gens))
      rep.violations.push_back("rank f(K) = " + std::to_string(r) + " exceeds rank K for f = " +
                               f.to_string());
  }
  return rep;
}

}  // namespace cg::bigrank
