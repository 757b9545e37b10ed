#include "coarsegrp/fgab.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "coarsegrp/errors.hpp"

namespace cg::fgab {

using intlat::floor_mod;
using intlat::lattice_index;
using intlat::lattice_membership;
using intlat::left_kernel;
using intlat::row_lattice_basis;
using intlat::smith_normal_form;
using intlat::SnfDecomposition;

FgAbGroup::FgAbGroup(std::size_t free_rank, IntVector torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw DomainError("torsion invariant factors must be >= 2");
    if (i + 1 < torsion_.size() && floor_mod(torsion_[i + 1], torsion_[i]) != 0)
      throw DomainError("torsion invariant factors must form a divisibility chain");
  }
}

FgAbGroup FgAbGroup::cyclic(const Integer& d) {
  if (d == 0) return free(1);
  return from_cyclic_orders({d});
}

FgAbGroup FgAbGroup::from_cyclic_orders(const IntVector& orders) {
  return present_quotient(orders.size(), [&] {
           IntMatrix rel(orders.size(), orders.size());
           for (std::size_t i = 0; i < orders.size(); ++i) rel(i, i) = abs(orders[i]);
           return rel;
         }())
      .group;
}

ExtNat FgAbGroup::order() const {
  if (free_rank_ > 0) return ExtNat::infinite();
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return ExtNat(n);
}

Integer FgAbGroup::torsion_exponent() const {
  return torsion_.empty() ? Integer(1) : torsion_.back();
}

Integer FgAbGroup::modulus(std::size_t coord) const {
  return coord < free_rank_ ? Integer(0) : torsion_[coord - free_rank_];
}

Element FgAbGroup::reduce(Element x) const {
  if (x.size() != dim())
    throw DomainError("element has " + std::to_string(x.size()) + " coordinates, group " +
                      to_string() + " has " + std::to_string(dim()));
  for (std::size_t j = 0; j < torsion_.size(); ++j)
    x[free_rank_ + j] = floor_mod(x[free_rank_ + j], torsion_[j]);
  return x;
}

Element FgAbGroup::add(const Element& a, const Element& b) const {
  Element out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = a[i] + b[i];
  return reduce(std::move(out));
}

Element FgAbGroup::neg(const Element& a) const {
  Element out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = -a[i];
  return reduce(std::move(out));
}

Element FgAbGroup::sub(const Element& a, const Element& b) const {
  Element out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = a[i] - b[i];
  return reduce(std::move(out));
}

Element FgAbGroup::scale(const Integer& m, const Element& a) const {
  Element out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = m * a[i];
  return reduce(std::move(out));
}

bool FgAbGroup::is_zero(const Element& a) const {
  return std::all_of(a.begin(), a.end(), [](const Integer& v) { return v == 0; });
}

void FgAbGroup::check_element(const Element& a) const {
  if (a.size() != dim()) throw DomainError("element does not belong to " + to_string());
}

IntMatrix FgAbGroup::relations() const {
  IntMatrix rel(torsion_.size(), dim());
  for (std::size_t j = 0; j < torsion_.size(); ++j) rel(j, free_rank_ + j) = torsion_[j];
  return rel;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank_ == 1) out = "Z";
  if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
  for (const auto& d : torsion_) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  return out;
}

// ---------------------------------------------------------------- Hom

Hom::Hom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim()) {
    // A 0-row or 0-col literal for trivial groups is accepted as the zero map.
    if (matrix_.empty() && (target_.dim() == 0 || source_.dim() == 0)) {
      matrix_ = IntMatrix(target_.dim(), source_.dim());
    } else {
      throw DomainError("hom matrix must be " + std::to_string(target_.dim()) + "x" +
                        std::to_string(source_.dim()) + " for " + source_.to_string() +
                        " -> " + target_.to_string() + ", got " +
                        std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()));
    }
  }
  const std::size_t tn = target_.free_rank();
  for (std::size_t i = 0; i < target_.torsion_count(); ++i)
    for (std::size_t j = 0; j < source_.dim(); ++j)
      matrix_(tn + i, j) = floor_mod(matrix_(tn + i, j), target_.torsion()[i]);
  // Torsion generators must land in elements whose order divides theirs.
  const std::size_t sn = source_.free_rank();
  for (std::size_t j = 0; j < source_.torsion_count(); ++j) {
    const Integer& d = source_.torsion()[j];
    for (std::size_t i = 0; i < target_.dim(); ++i) {
      const Integer& c = matrix_(i, sn + j);
      const bool ok = i < tn ? c == 0 : floor_mod(d * c, target_.torsion()[i - tn]) == 0;
      if (!ok)
        throw DomainError("hom is not well defined: generator of order " + d.get_str() +
                          " of " + source_.to_string() + " maps to an element of incompatible order in " +
                          target_.to_string());
    }
  }
}

Hom Hom::identity(const FgAbGroup& g) {
  return Hom(g, g, IntMatrix::identity(g.dim()));
}

Hom Hom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return Hom(source, target, IntMatrix(target.dim(), source.dim()));
}

Hom Hom::scalar(const FgAbGroup& g, const Integer& m) {
  IntMatrix mat(g.dim(), g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) mat(i, i) = m;
  return Hom(g, g, std::move(mat));
}

Element Hom::apply(const Element& x) const {
  source_.check_element(x);
  return apply_cover(x);
}

Element Hom::apply_cover(const IntVector& x) const {
  return target_.reduce(matrix_ * x);
}

std::string Hom::to_string() const {
  return matrix_.to_string() + " : " + source_.to_string() + " -> " + target_.to_string();
}

Hom compose(const Hom& g, const Hom& f) {
  if (!(f.target() == g.source()))
    throw DomainError("cannot compose: " + f.target().to_string() + " vs " +
                      g.source().to_string());
  return Hom(f.source(), g.target(), g.matrix() * f.matrix());
}

Hom operator+(const Hom& a, const Hom& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw DomainError("hom sum: signatures differ");
  IntMatrix m = a.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) += b.matrix()(i, j);
  return Hom(a.source(), a.target(), std::move(m));
}

Hom operator-(const Hom& a) {
  IntMatrix m = a.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return Hom(a.source(), a.target(), std::move(m));
}

Hom operator-(const Hom& a, const Hom& b) { return a + (-b); }

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(FgAbGroup ambient, std::vector<Element> generators)
    : ambient_(std::move(ambient)) {
  for (auto& g : generators) {
    Element r = ambient_.reduce(std::move(g));
    if (!ambient_.is_zero(r)) generators_.push_back(std::move(r));
  }
  IntMatrix gens = IntMatrix::from_rows(generators_, ambient_.dim());
  canonical_ = row_lattice_basis(gens.stack(ambient_.relations()));
  if (canonical_.rows() == 0) canonical_ = IntMatrix(0, ambient_.dim());
}

Subgroup Subgroup::whole(const FgAbGroup& g) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Element e = g.zero();
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return Subgroup(g, std::move(gens));
}

Subgroup Subgroup::trivial(const FgAbGroup& g) { return Subgroup(g, {}); }

Subgroup Subgroup::torsion(const FgAbGroup& g) {
  std::vector<Element> gens;
  for (std::size_t i = g.free_rank(); i < g.dim(); ++i) {
    Element e = g.zero();
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return Subgroup(g, std::move(gens));
}

bool Subgroup::contains(const Element& x) const {
  ambient_.check_element(x);
  if (ambient_.dim() == 0) return true;
  if (canonical_.rows() == 0) return ambient_.is_zero(ambient_.reduce(x));
  return lattice_membership(ambient_.reduce(x), canonical_).has_value();
}

bool Subgroup::contains(const Subgroup& other) const {
  if (!(other.ambient_ == ambient_)) throw DomainError("subgroups live in different groups");
  return std::all_of(other.generators_.begin(), other.generators_.end(),
                     [&](const Element& g) { return contains(g); });
}

bool Subgroup::is_trivial() const { return generators_.empty(); }

bool Subgroup::is_whole() const { return *this == whole(ambient_); }

std::string Subgroup::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += intlat::to_string(generators_[i]);
  }
  return out + "> in " + ambient_.to_string();
}

Subgroup sum(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) throw DomainError("sum of subgroups of different groups");
  std::vector<Element> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Subgroup(a.ambient(), std::move(gens));
}

Subgroup multiple(const Subgroup& s, const Integer& m) {
  std::vector<Element> gens;
  for (const auto& g : s.generators()) gens.push_back(s.ambient().scale(m, g));
  return Subgroup(s.ambient(), std::move(gens));
}

Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient()))
    throw DomainError("intersection of subgroups of different groups");
  const Embedded ea = subgroup_as_group(a);
  return image(ea.inclusion, preimage(ea.inclusion, b));
}

// ---------------------------------------------------------------- constructions

Presentation present_quotient(std::size_t n, const IntMatrix& relations) {
  if (relations.rows() > 0 && relations.cols() != n)
    throw DomainError("present_quotient: relation width mismatch");
  SnfDecomposition snf;
  if (relations.rows() == 0 || n == 0) {
    snf.Q = IntMatrix::identity(n);
    snf.V = IntMatrix::identity(n);
    snf.rank = 0;
  } else {
    snf = smith_normal_form(relations);
  }
  // Coordinates of Z^n / L are (x Q)_c: free ones are c >= rank, torsion
  // ones are c < rank with d_c > 1 (units contribute nothing).
  std::vector<std::size_t> free_cols, tors_cols;
  IntVector factors;
  for (std::size_t c = 0; c < snf.rank; ++c)
    if (snf.D(c, c) > 1) {
      tors_cols.push_back(c);
      factors.push_back(snf.D(c, c));
    }
  for (std::size_t c = snf.rank; c < n; ++c) free_cols.push_back(c);

  Presentation out;
  out.group = FgAbGroup(free_cols.size(), factors);
  std::vector<std::size_t> cols = free_cols;
  cols.insert(cols.end(), tors_cols.begin(), tors_cols.end());
  out.to_group = IntMatrix(cols.size(), n);
  out.lift = IntMatrix(n, cols.size());
  for (std::size_t t = 0; t < cols.size(); ++t) {
    const std::size_t c = cols[t];
    const Integer mod = out.group.modulus(t);
    for (std::size_t j = 0; j < n; ++j) {
      out.to_group(t, j) = mod == 0 ? snf.Q(j, c) : floor_mod(snf.Q(j, c), mod);
      out.lift(j, t) = snf.V(c, j);
    }
  }
  return out;
}

Embedded subgroup_as_group(const Subgroup& s) {
  const FgAbGroup& g = s.ambient();
  const IntMatrix& basis = s.canonical();  // rows span the preimage lattice L
  const std::size_t rank = basis.rows();
  // Relations of G, rewritten in the basis of L, present S = L / relations.
  const IntMatrix rel = g.relations();
  IntMatrix coeffs(rel.rows(), rank);
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    auto c = lattice_membership(rel.row(i), basis);
    if (!c) throw TheoremViolation("ambient relation missing from subgroup lattice");
    for (std::size_t j = 0; j < rank; ++j) coeffs(i, j) = (*c)[j];
  }
  const Presentation p = present_quotient(rank, coeffs);
  IntMatrix inc(g.dim(), p.group.dim());
  for (std::size_t t = 0; t < p.group.dim(); ++t) {
    IntVector lift = p.lift.col(t);
    const IntVector cover = lift * basis;
    for (std::size_t i = 0; i < g.dim(); ++i) inc(i, t) = cover[i];
  }
  return Embedded{p.group, Hom(p.group, g, std::move(inc))};
}

Subgroup kernel_subgroup(const Hom& f) {
  const FgAbGroup& g = f.source();
  const FgAbGroup& h = f.target();
  // (x, lambda) with x F^T + lambda R_H = 0, where F^T rows are generator images.
  const IntMatrix a = f.matrix().transpose().stack(h.relations());
  std::vector<Element> gens;
  if (a.rows() > 0 && h.dim() == 0) {
    for (std::size_t i = 0; i < g.dim(); ++i) {
      Element e = g.zero();
      e[i] = 1;
      gens.push_back(std::move(e));
    }
  } else if (a.rows() > 0) {
    const IntMatrix k = left_kernel(a);
    for (std::size_t r = 0; r < k.rows(); ++r) {
      Element x(g.dim());
      for (std::size_t i = 0; i < g.dim(); ++i) x[i] = k(r, i);
      gens.push_back(std::move(x));
    }
  }
  return Subgroup(g, std::move(gens));
}

Embedded kernel(const Hom& f) { return subgroup_as_group(kernel_subgroup(f)); }

Subgroup image_subgroup(const Hom& f) {
  std::vector<Element> gens;
  for (std::size_t j = 0; j < f.source().dim(); ++j)
    gens.push_back(f.target().reduce(f.matrix().col(j)));
  return Subgroup(f.target(), std::move(gens));
}

Subgroup image(const Hom& f, const Subgroup& s) {
  if (!(s.ambient() == f.source())) throw DomainError("image: subgroup not in source");
  std::vector<Element> gens;
  for (const auto& g : s.generators()) gens.push_back(f.apply(g));
  return Subgroup(f.target(), std::move(gens));
}

Subgroup preimage(const Hom& f, const Subgroup& t) {
  if (!(t.ambient() == f.target())) throw DomainError("preimage: subgroup not in target");
  const QuotientResult q = quotient(f.target(), t);
  return kernel_subgroup(compose(q.projection, f));
}

ExtNat subgroup_index(const Subgroup& s) {
  return lattice_index(s.canonical(), s.ambient().dim());
}

ExtNat subgroup_order(const Subgroup& s) { return subgroup_as_group(s).group.order(); }

std::size_t subgroup_free_rank(const Subgroup& s) {
  // rank(L) - rank(relations) = free rank of L / relations.
  return s.canonical().rows() - s.ambient().torsion_count();
}

QuotientResult quotient(const FgAbGroup& g, const Subgroup& n) {
  if (!(n.ambient() == g)) throw DomainError("quotient: subgroup not in group");
  const Presentation p = present_quotient(g.dim(), n.canonical());
  return QuotientResult{p.group, Hom(g, p.group, p.to_group)};
}

DirectSum direct_sum(const std::vector<FgAbGroup>& parts) {
  std::size_t total = 0;
  std::vector<std::size_t> offsets;
  for (const auto& g : parts) {
    offsets.push_back(total);
    total += g.dim();
  }
  std::size_t relation_count = 0;
  for (const auto& g : parts) relation_count += g.torsion_count();
  IntMatrix rel(relation_count, total);
  std::size_t row = 0;
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (std::size_t j = 0; j < parts[k].torsion_count(); ++j, ++row)
      rel(row, offsets[k] + parts[k].free_rank() + j) = parts[k].torsion()[j];
  const Presentation p = present_quotient(total, rel);
  DirectSum out;
  out.group = p.group;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const FgAbGroup& gk = parts[k];
    IntMatrix inj(p.group.dim(), gk.dim());
    for (std::size_t j = 0; j < gk.dim(); ++j)
      for (std::size_t t = 0; t < p.group.dim(); ++t) inj(t, j) = p.to_group(t, offsets[k] + j);
    out.injections.emplace_back(gk, p.group, std::move(inj));
    IntMatrix proj(gk.dim(), p.group.dim());
    for (std::size_t t = 0; t < p.group.dim(); ++t)
      for (std::size_t j = 0; j < gk.dim(); ++j) proj(j, t) = p.lift(offsets[k] + j, t);
    out.projections.emplace_back(p.group, gk, std::move(proj));
  }
  return out;
}

PullbackResult pullback(const Hom& f, const Hom& g) {
  if (!(f.target() == g.target())) throw DomainError("pullback: codomains differ");
  const DirectSum s = direct_sum({g.source(), f.source()});
  const Hom diff = compose(g, s.projections[0]) - compose(f, s.projections[1]);
  const Embedded k = kernel(diff);
  return PullbackResult{k.group, compose(s.projections[0], k.inclusion),
                        compose(s.projections[1], k.inclusion)};
}

Hom free_part_section(const FgAbGroup& g) {
  const FgAbGroup z = FgAbGroup::free(g.free_rank());
  IntMatrix m(g.dim(), g.free_rank());
  for (std::size_t i = 0; i < g.free_rank(); ++i) m(i, i) = 1;
  return Hom(z, g, std::move(m));
}

// ---------------------------------------------------------------- invariants

std::vector<unsigned long> prime_divisors(const Integer& n) {
  std::vector<unsigned long> out;
  Integer m = abs(n);
  for (unsigned long p = 2; Integer(p) * p <= m; ++p) {
    if (floor_mod(m, Integer(p)) != 0) continue;
    out.push_back(p);
    while (floor_mod(m, Integer(p)) == 0) m /= p;
  }
  if (m > 1) {
    if (!m.fits_ulong_p()) throw DomainError("torsion exponent has a prime factor beyond 64 bits");
    out.push_back(m.get_ui());
  }
  return out;
}

std::size_t p_rank(const FgAbGroup& g, unsigned long p) {
  return static_cast<std::size_t>(
      std::count_if(g.torsion().begin(), g.torsion().end(),
                    [&](const Integer& d) { return floor_mod(d, Integer(p)) == 0; }));
}

Invariants invariants(const FgAbGroup& g, const std::vector<unsigned long>& extra_primes) {
  Invariants inv;
  inv.r0 = g.free_rank();
  std::vector<unsigned long> primes = prime_divisors(g.torsion_exponent());
  primes.insert(primes.end(), extra_primes.begin(), extra_primes.end());
  std::size_t max_rp = 0;
  for (unsigned long p : primes) {
    if (p < 2) continue;
    const std::size_t rp = p_rank(g, p);
    inv.r_p[p] = rp;
    max_rp = std::max(max_rp, rp);
  }
  inv.r = ExtNat(static_cast<long>(std::max(inv.r0, max_rp)));
  inv.order = g.order();
  if (inv.order.is_finite()) {
    double ell = 0.0;
    for (const auto& d : g.torsion()) ell += std::log2(d.get_d());
    inv.ell = ell;
  }
  // Both infima are attained at the torsion exponent: mG is then free.
  inv.witness_m = g.torsion_exponent();
  const Subgroup mg = multiple(Subgroup::whole(g), inv.witness_m);
  const FgAbGroup mg_group = subgroup_as_group(mg).group;
  std::size_t r_of_mg = mg_group.free_rank();
  for (unsigned long p : prime_divisors(mg_group.torsion_exponent()))
    r_of_mg = std::max(r_of_mg, p_rank(mg_group, p));
  inv.r_d = ExtNat(static_cast<long>(r_of_mg));
  inv.w_d = mg_group.order().is_finite() ? mg_group.order() : ExtNat::infinite();
  inv.w_d_tilde = mg_group.is_finite() ? ExtNat(0) : ExtNat::infinite();
  return inv;
}

}  // namespace cg::fgab
