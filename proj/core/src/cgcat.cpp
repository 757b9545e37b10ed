#include "coarsegrp/cgcat.hpp"

#include <sstream>

#include "coarsegrp/coarse.hpp"
#include "coarsegrp/errors.hpp"
#include "coarsegrp/morph.hpp"
#include "coarsegrp/random.hpp"
#include "coarsegrp/sample.hpp"

namespace cg::cgcat {

using coarse::GroupIdeal;
using intlat::IntMatrix;

bool is_weak_equivalence(const Hom& f) {
  return morph::analyze_hom(f, GroupIdeal::finitary(f.source()), GroupIdeal::finitary(f.target()))
      .coarse_equivalence.value;
}

namespace {

bool close(const Hom& a, const Hom& b) {
  return coarse::are_close(a, b, GroupIdeal::finitary(a.target())).close;
}

}  // namespace

bool same_class(const HomClass& a, const HomClass& b) {
  return close(a.representative, b.representative);
}

// ---------------------------------------------------------------- spans

Span::Span(Hom left, Hom right, bool normalize) : left_(std::move(left)), right_(std::move(right)) {
  if (!(left_.source() == right_.source()))
    throw DomainError("span legs start at different apexes: " + left_.source().to_string() +
                      " vs " + right_.source().to_string());
  if (!is_weak_equivalence(left_))
    throw DomainError("left leg " + left_.to_string() + " is not a coarse equivalence");
  if (normalize && left_.source().torsion_count() > 0) {
    const Hom s = fgab::free_part_section(left_.source());
    left_ = fgab::compose(left_, s);
    right_ = fgab::compose(right_, s);
    if (!is_weak_equivalence(left_))
      throw TheoremViolation("restricting a coarse equivalence to the free summand broke it");
  }
}

Span Span::identity(const FgAbGroup& x) { return Span(Hom::identity(x), Hom::identity(x)); }

Span Span::from_hom(const Hom& f) { return Span(Hom::identity(f.source()), f); }

std::string Span::to_string() const {
  return "span{apex: " + apex().to_string() + ", left: " + left_.matrix().to_string() + " -> " +
         source().to_string() + ", right: " + right_.matrix().to_string() + " -> " +
         target().to_string() + "}";
}

// ---------------------------------------------------------------- rational maps

RationalMap RationalMap::identity(std::size_t n) {
  RationalMap m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMap operator*(const RationalMap& a, const RationalMap& b) {
  if (a.cols() != b.rows()) throw DomainError("rational map shapes do not compose");
  RationalMap out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

RationalMap RationalMap::inverse() const {
  if (rows_ != cols_) throw DomainError("a " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                        " rational map is not invertible");
  const std::size_t n = rows_;
  RationalMap a = *this;
  RationalMap inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw DomainError("rational map " + to_string() + " is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational factor = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= factor * a(c, j);
        inv(r, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

bool RationalMap::is_invertible() const {
  if (rows_ != cols_) return false;
  try {
    (void)inverse();
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::string RationalMap::to_string() const {
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

RationalMap rationalize(const Hom& f) {
  RationalMap out(f.target().free_rank(), f.source().free_rank());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = Rational(f.matrix()(i, j));
  return out;
}

RationalMap rationalize(const HomClass& f) { return rationalize(f.representative); }

RationalMap rationalize(const Span& s) {
  return rationalize(s.right()) * rationalize(s.left()).inverse();
}

Span compose_spans(const Span& first, const Span& second) {
  if (!(first.target() == second.source()))
    throw DomainError("spans do not compose: middle objects " + first.target().to_string() + " and " +
                      second.source().to_string());
  const fgab::PullbackResult pb = fgab::pullback(second.left(), first.right());
  const Hom left = fgab::compose(first.left(), pb.to_x);
  const Hom right = fgab::compose(second.right(), pb.to_y);
  if (!is_weak_equivalence(left))
    throw TheoremViolation("pulled-back left leg " + left.to_string() + " is not a coarse equivalence");
  return Span(left, right);
}

std::string to_string(Equivalence e) {
  return e == Equivalence::Equivalent ? "EQUIVALENT" : "NOT_EQUIVALENT";
}

bool verify_witness(const Span& first, const Span& second, const SpanWitness& w) {
  if (!(w.s.source() == w.apex) || !(w.t.source() == w.apex) || !(w.s.target() == first.apex()) ||
      !(w.t.target() == second.apex()))
    return false;
  const Hom ls = fgab::compose(first.left(), w.s);
  const Hom lt = fgab::compose(second.left(), w.t);
  if (!close(ls, lt)) return false;
  if (!close(fgab::compose(first.right(), w.s), fgab::compose(second.right(), w.t))) return false;
  return is_weak_equivalence(ls);
}

namespace {

// Z^k -> P1 and Z^k -> P2 with every entry in [-bound, bound]; only run when
// both apexes are free and the search space is small.
std::optional<SpanWitness> brute_force_witness(const Span& first, const Span& second, long bound,
                                               std::size_t& tried) {
  const FgAbGroup& p1 = first.apex();
  const FgAbGroup& p2 = second.apex();
  if (p1.torsion_count() || p2.torsion_count()) return std::nullopt;
  const std::size_t k = first.source().free_rank();
  const std::size_t entries = k * (p1.dim() + p2.dim());
  if (entries == 0 || entries > 2) return std::nullopt;
  const FgAbGroup apex = FgAbGroup::free(k);
  std::vector<long> vals(entries, -bound);
  while (true) {
    IntMatrix ms(p1.dim(), k), mt(p2.dim(), k);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < p1.dim(); ++i)
      for (std::size_t j = 0; j < k; ++j) ms(i, j) = vals[idx++];
    for (std::size_t i = 0; i < p2.dim(); ++i)
      for (std::size_t j = 0; j < k; ++j) mt(i, j) = vals[idx++];
    SpanWitness w{apex, Hom(apex, p1, ms), Hom(apex, p2, mt), "bounded search"};
    ++tried;
    if (verify_witness(first, second, w)) return w;
    std::size_t i = 0;
    while (i < entries) {
      if (vals[i] < bound) {
        ++vals[i];
        break;
      }
      vals[i] = -bound;
      ++i;
    }
    if (i == entries) return std::nullopt;
  }
}

std::optional<SpanWitness> pullback_witness(const Span& first, const Span& second, long bound,
                                            std::size_t& tried) {
  const fgab::PullbackResult pb = fgab::pullback(second.left(), first.left());
  for (long m = 1; m <= bound; ++m) {
    const Hom scale = Hom::scalar(pb.apex, m);
    SpanWitness w{pb.apex, fgab::compose(pb.to_x, scale), fgab::compose(pb.to_y, scale),
                  "pullback of the left legs, scaled by " + std::to_string(m)};
    ++tried;
    if (verify_witness(first, second, w)) return w;
  }
  return std::nullopt;
}

}  // namespace

EquivalenceReport spans_equivalent(const Span& first, const Span& second, long bound) {
  if (!(first.source() == second.source()) || !(first.target() == second.target()))
    throw DomainError("spans have different endpoints");
  EquivalenceReport rep;
  rep.first_form = rationalize(first);
  rep.second_form = rationalize(second);
  rep.rational_equal = rep.first_form == rep.second_form;
  rep.witness = brute_force_witness(first, second, bound, rep.candidates_tried);
  if (!rep.witness) rep.witness = pullback_witness(first, second, bound, rep.candidates_tried);
  if (rep.witness && !rep.rational_equal)
    throw TheoremViolation("witness (" + rep.witness->origin + ") relates spans with rational forms " +
                           rep.first_form.to_string() + " and " + rep.second_form.to_string());
  rep.verdict = rep.rational_equal ? Equivalence::Equivalent : Equivalence::NotEquivalent;
  if (!rep.rational_equal)
    rep.reason = "rational forms differ: " + rep.first_form.to_string() + " vs " +
                 rep.second_form.to_string();
  else if (rep.witness)
    rep.reason = "rational forms agree and a witness was found (" + rep.witness->origin + ")";
  else
    rep.reason = "rational forms agree; witness search inconclusive";
  return rep;
}

OreSquare ore_square(const Hom& w, const Hom& f) {
  if (!(w.target() == f.target()))
    throw DomainError("ore square needs w and f with a common target");
  if (!is_weak_equivalence(w)) throw DomainError(w.to_string() + " is not a coarse equivalence");
  const fgab::PullbackResult pb = fgab::pullback(w, f);
  OreSquare sq{pb.apex, pb.to_x, pb.to_y};
  if (!(fgab::compose(w, sq.f_prime) == fgab::compose(f, sq.w_prime)))
    throw TheoremViolation("ore square does not commute");
  if (!is_weak_equivalence(sq.w_prime))
    throw TheoremViolation("pullback of a coarse equivalence is not a coarse equivalence");
  return sq;
}

HomotopicalReport check_homotopical_axioms(std::uint64_t seed, std::size_t cases) {
  HomotopicalReport rep;
  Rng rng(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    Rng local = rng.fork();
    const FgAbGroup x = sample::group(local, 2, 6);
    const FgAbGroup y = sample::group(local, 3, 6);
    const FgAbGroup y2 = FgAbGroup::from_cyclic_orders([&] {
      intlat::IntVector orders(y.free_rank(), 0);
      if (local.coin()) orders.emplace_back(static_cast<long>(local.uniform(2, 6)));
      return orders;
    }());
    const Hom w = sample::finitary_equivalence(local, y, y2, 3);
    const Hom f = sample::hom(local, x, y, 3);
    Hom g = sample::hom(local, x, y, 3);
    if (local.coin()) {
      // Perturb f by a torsion-valued hom so the premise holds.
      IntMatrix d = g.matrix();
      for (std::size_t i = 0; i < y.free_rank(); ++i)
        for (std::size_t j = 0; j < x.dim(); ++j) d(i, j) = 0;
      g = f + Hom(x, y, d);
    }
    ++rep.cancellation_cases;
    if (close(fgab::compose(w, f), fgab::compose(w, g))) {
      ++rep.cancellation_premises;
      if (!close(f, g))
        rep.violations.push_back({"right cancellability", "w = " + w.to_string() + ", f = " +
                                                              f.to_string() + ", g = " + g.to_string()});
    }
  }
  for (std::size_t c = 0; c < cases; ++c) {
    Rng local = rng.fork();
    const auto n = static_cast<std::size_t>(local.uniform(1, 3));
    auto object = [&](std::size_t rank) {
      intlat::IntVector orders(rank, 0);
      if (local.coin()) orders.emplace_back(static_cast<long>(local.uniform(2, 6)));
      return FgAbGroup::from_cyclic_orders(orders);
    };
    const std::size_t mid = local.coin(25) ? n + 1 : n;
    const FgAbGroup a = object(n), b = object(mid), cc = object(n), d = object(mid);
    const Hom f = sample::hom(local, a, b, 3);
    const Hom g = sample::hom(local, b, cc, 3);
    const Hom h = sample::hom(local, cc, d, 3);
    ++rep.two_of_six_cases;
    if (!is_weak_equivalence(fgab::compose(g, f)) || !is_weak_equivalence(fgab::compose(h, g)))
      continue;
    ++rep.two_of_six_premises;
    for (const auto* leg : {&f, &g, &h})
      if (!is_weak_equivalence(*leg))
        rep.violations.push_back({"2-out-of-6", "gf and hg are in W but " + leg->to_string() +
                                                    " is not (f = " + f.to_string() + ", g = " +
                                                    g.to_string() + ", h = " + h.to_string() + ")"});
  }
  return rep;
}

}  // namespace cg::cgcat
