#include "coarsegrp/quasihom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <utility>

#include "coarsegrp/errors.hpp"
#include "coarsegrp/random.hpp"

namespace cg::quasihom {

using coarse::IdealKind;
using intlat::floor_mod;
using intlat::IntMatrix;

struct QhMap::Node {
  MapKind kind{};
  std::size_t n = 1;
  FgAbGroup target = FgAbGroup::free(1);
  std::vector<Rational> slopes;
  Rational offset = 0;
  Hom hom;
  std::optional<QhMap> outer;
  std::optional<QhMap> inner;
  std::map<IntVector, Element> table;
  std::optional<QhMap> fallback;
  std::string label;
};

std::vector<IntVector> QhMap::table_points() const {
  std::set<IntVector> out;
  for (const auto& [x, y] : node_->table) out.insert(x);
  for (const auto* sub : {&node_->inner, &node_->fallback})
    if (*sub)
      for (auto& x : (*sub)->table_points()) out.insert(std::move(x));
  return std::vector<IntVector>(out.begin(), out.end());
}

QhMap QhMap::affine_floor(std::vector<Rational> slopes, Rational offset) {
  if (slopes.empty()) throw DomainError("floor map needs at least one slope");
  auto node = std::make_shared<Node>();
  node->kind = MapKind::AffineFloor;
  node->n = slopes.size();
  for (auto& s : slopes) s.canonicalize();
  offset.canonicalize();
  node->slopes = std::move(slopes);
  node->offset = std::move(offset);
  return QhMap(std::move(node));
}

QhMap QhMap::largest_even_below() {
  auto node = std::make_shared<Node>();
  node->kind = MapKind::LargestEvenBelow;
  return QhMap(std::move(node));
}

QhMap QhMap::abs_value() {
  auto node = std::make_shared<Node>();
  node->kind = MapKind::AbsValue;
  return QhMap(std::move(node));
}

QhMap QhMap::hom(const Hom& h) {
  if (h.source().torsion_count() != 0)
    throw DomainError("hom map needs a free source, got " + h.source().to_string());
  auto node = std::make_shared<Node>();
  node->kind = MapKind::HomMap;
  node->n = h.source().free_rank();
  node->target = h.target();
  node->hom = h;
  return QhMap(std::move(node));
}

QhMap QhMap::compose(const QhMap& outer, const QhMap& inner) {
  if (inner.target().free_rank() != outer.source_rank())
    throw DomainError("cannot compose: inner lands in " + inner.target().to_string() +
                      " but outer is defined on Z^" + std::to_string(outer.source_rank()));
  auto node = std::make_shared<Node>();
  node->kind = MapKind::Compose;
  node->n = inner.source_rank();
  node->target = outer.target();
  node->outer = outer;
  node->inner = inner;
  return QhMap(std::move(node));
}

QhMap QhMap::table(std::size_t source_rank, FgAbGroup target, std::vector<TableEntry> entries,
                   std::optional<QhMap> fallback, std::string label) {
  if (fallback && (fallback->source_rank() != source_rank || !(fallback->target() == target)))
    throw DomainError("table fallback has a different signature");
  auto node = std::make_shared<Node>();
  node->kind = MapKind::Table;
  node->n = source_rank;
  for (auto& e : entries) {
    if (e.x.size() != source_rank) throw DomainError("table entry has the wrong source rank");
    node->table[e.x] = target.reduce(std::move(e.y));
  }
  node->target = std::move(target);
  node->fallback = std::move(fallback);
  node->label = std::move(label);
  return QhMap(std::move(node));
}

MapKind QhMap::kind() const { return node_->kind; }
std::size_t QhMap::source_rank() const { return node_->n; }
const FgAbGroup& QhMap::target() const { return node_->target; }

const std::vector<Rational>& QhMap::slopes() const { return node_->slopes; }
const Rational& QhMap::offset() const { return node_->offset; }
const Hom& QhMap::hom_matrix() const { return node_->hom; }
const QhMap& QhMap::outer() const {
  if (!node_->outer) throw DomainError("not a composite map");
  return *node_->outer;
}
const QhMap& QhMap::inner() const {
  if (!node_->inner) throw DomainError("not a composite map");
  return *node_->inner;
}

Element QhMap::operator()(const IntVector& x) const {
  const Node& nd = *node_;
  if (x.size() != nd.n)
    throw DomainError("map on Z^" + std::to_string(nd.n) + " applied to a point with " +
                      std::to_string(x.size()) + " coordinates");
  switch (nd.kind) {
    case MapKind::AffineFloor: {
      Rational v = nd.offset;
      for (std::size_t i = 0; i < nd.n; ++i) v += nd.slopes[i] * x[i];
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      return {q};
    }
    case MapKind::LargestEvenBelow:
      return {x[0] - 2 + floor_mod(x[0], Integer(2))};
    case MapKind::AbsValue: return {abs(x[0])};
    case MapKind::HomMap: return nd.hom.apply(x);
    case MapKind::Compose: {
      const Element mid = (*nd.inner)(x);
      return (*nd.outer)(IntVector(mid.begin(), mid.begin() + static_cast<long>(nd.outer->source_rank())));
    }
    case MapKind::Table: {
      auto it = nd.table.find(x);
      if (it != nd.table.end()) return it->second;
      if (nd.fallback) return (*nd.fallback)(x);
      return nd.target.zero();
    }
  }
  return {};
}

std::string QhMap::to_string() const {
  const Node& nd = *node_;
  switch (nd.kind) {
    case MapKind::AffineFloor: {
      std::string out = "floor(";
      for (std::size_t i = 0; i < nd.slopes.size(); ++i) {
        if (i) out += ", ";
        out += nd.slopes[i].get_str();
      }
      if (nd.offset != 0) out += ", offset=" + nd.offset.get_str();
      return out + ")";
    }
    case MapKind::LargestEvenBelow: return "largest-even-below";
    case MapKind::AbsValue: return "abs";
    case MapKind::HomMap: {
      std::string out = "hom " + nd.hom.matrix().to_string();
      if (!(nd.target == FgAbGroup::free(nd.target.free_rank())))
        out += " -> " + nd.target.to_string();
      return out;
    }
    case MapKind::Compose:
      return "compose(" + nd.outer->to_string() + ", " + nd.inner->to_string() + ")";
    case MapKind::Table: return nd.label.empty() ? "table" : nd.label;
  }
  return "?";
}

std::string to_string(Verdict v) {
  return v == Verdict::CertifiedOnWindow ? "CERTIFIED_ON_WINDOW" : "REJECTED";
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Ok: return "OK";
    case CheckStatus::NotApplicable: return "NOT_APPLICABLE";
    case CheckStatus::Violation: return "VIOLATION";
  }
  return "?";
}

Integer element_norm(const FgAbGroup& g, const Element& x) {
  Integer best = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Integer v = abs(x[i]);
    const Integer m = g.modulus(i);
    if (m != 0) v = std::min<Integer>(v, m - v);
    best = std::max(best, v);
  }
  return best;
}

// ---------------------------------------------------------------- exact channel

std::optional<std::vector<Element>> exact_defect(const QhMap& f, bool* unbounded) {
  if (unbounded) *unbounded = false;
  switch (f.kind()) {
    case MapKind::HomMap: return std::vector<Element>{f.target().zero()};
    case MapKind::LargestEvenBelow:
      return std::vector<Element>{{Integer(0)}, {Integer(2)}};
    case MapKind::AbsValue:
      if (unbounded) *unbounded = true;
      return std::nullopt;
    case MapKind::AffineFloor: {
      // With u = s.x + c and v = s.y + c the defect is floor({u} + {v} - c),
      // so it only depends on the attainable fractional parts of u.
      Integer lcm = 1;
      for (const auto& s : f.slopes()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.get_den_mpz_t());
      Integer h = 0;
      for (const auto& s : f.slopes()) {
        const Integer scaled = s.get_num() * (lcm / s.get_den());
        mpz_gcd(h.get_mpz_t(), h.get_mpz_t(), scaled.get_mpz_t());
      }
      Integer count = 1;
      if (h != 0) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), h.get_mpz_t(), lcm.get_mpz_t());
        count = lcm / g;
      }
      if (count > 2000) return std::nullopt;
      std::set<Rational> fracs;
      for (long k = 0; k < count.get_si(); ++k) {
        Rational u = Rational(Integer(k) * h, lcm) + f.offset();
        u.canonicalize();
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), u.get_num_mpz_t(), u.get_den_mpz_t());
        fracs.insert(u - Rational(fl));
      }
      std::set<Element> out;
      for (const auto& a : fracs)
        for (const auto& b : fracs) {
          Rational w = a + b - f.offset();
          w.canonicalize();
          Integer fl;
          mpz_fdiv_q(fl.get_mpz_t(), w.get_num_mpz_t(), w.get_den_mpz_t());
          out.insert({fl});
        }
      return std::vector<Element>(out.begin(), out.end());
    }
    case MapKind::Compose:
    case MapKind::Table: return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- window scans

namespace {

struct DefectInfo {
  long level = 0;
  IntVector x;
  IntVector y;
};

// Witness preference at equal level: larger x first, then smaller y.
bool better_witness(const IntVector& x1, const IntVector& y1, const IntVector& x2,
                    const IntVector& y2) {
  if (x1 != x2) return x1 > x2;
  return y1 < y2;
}

void record(std::map<Element, DefectInfo>& seen, Element d, long level, const IntVector& x,
            const IntVector& y) {
  auto it = seen.find(d);
  if (it == seen.end()) {
    seen.emplace(std::move(d), DefectInfo{level, x, y});
    return;
  }
  DefectInfo& info = it->second;
  if (level < info.level || (level == info.level && better_witness(x, y, info.x, info.y)))
    info = DefectInfo{level, x, y};
}

long max_abs(const IntVector& v) {
  long m = 0;
  for (const auto& c : v) m = std::max(m, static_cast<long>(Integer(abs(c)).get_si()));
  return m;
}

std::vector<long> normalize_radii(std::vector<long> radii) {
  if (radii.empty()) throw DomainError("at least one radius is required");
  for (long r : radii)
    if (r < 1) throw DomainError("radii must be positive");
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  const long half = radii.back() / 2;
  if (!std::binary_search(radii.begin(), radii.end(), half)) {
    radii.push_back(half);
    std::sort(radii.begin(), radii.end());
  }
  return radii;
}

// Exhaustive scan for one-dimensional sources with values fitting int64.
bool scan_exhaustive(const QhMap& f, long rmax, std::map<Element, DefectInfo>& seen,
                     std::uint64_t& pairs) {
  const FgAbGroup& tg = f.target();
  const std::size_t dim = tg.dim();
  const long span = 4 * rmax + 1;
  constexpr std::int64_t kLimit = std::int64_t{1} << 60;
  std::vector<std::int64_t> vals(static_cast<std::size_t>(span) * dim);
  std::vector<std::int64_t> mods(dim, 0);
  for (std::size_t k = 0; k < dim; ++k) {
    const Integer m = tg.modulus(k);
    if (!m.fits_slong_p() || abs(m) >= kLimit) return false;
    mods[k] = m.get_si();
  }
  for (long i = 0; i < span; ++i) {
    const Element v = f({Integer(i - 2 * rmax)});
    for (std::size_t k = 0; k < dim; ++k) {
      if (!v[k].fits_slong_p() || abs(v[k]) >= kLimit) return false;
      vals[static_cast<std::size_t>(i) * dim + k] = v[k].get_si();
    }
  }
  auto at = [&](long x, std::size_t k) {
    return vals[static_cast<std::size_t>(x + 2 * rmax) * dim + k];
  };
  // Defect value -> (level, x, y) with the same preference as record().
  std::map<std::vector<std::int64_t>, std::array<long, 3>> local;
  std::vector<std::int64_t> d(dim);
  for (long x = -rmax; x <= rmax; ++x) {
    for (long y = -rmax; y <= rmax; ++y) {
      for (std::size_t k = 0; k < dim; ++k) {
        std::int64_t v = at(x + y, k) - at(x, k) - at(y, k);
        if (mods[k] != 0) {
          v %= mods[k];
          if (v < 0) v += mods[k];
        }
        d[k] = v;
      }
      const long level = std::max(std::labs(x), std::labs(y));
      auto it = local.find(d);
      if (it == local.end()) {
        local.emplace(d, std::array<long, 3>{level, x, y});
      } else {
        auto& info = it->second;
        if (level < info[0] || (level == info[0] && (x > info[1] || (x == info[1] && y < info[2]))))
          info = {level, x, y};
      }
    }
  }
  pairs += static_cast<std::uint64_t>(2 * rmax + 1) * static_cast<std::uint64_t>(2 * rmax + 1);
  for (const auto& [dv, info] : local) {
    Element e(dim);
    for (std::size_t k = 0; k < dim; ++k) e[k] = Integer(static_cast<long>(dv[k]));
    record(seen, std::move(e), info[0], {Integer(info[1])}, {Integer(info[2])});
  }
  return true;
}

void scan_sampled(const QhMap& f, const std::vector<long>& radii, std::size_t samples,
                  std::uint64_t seed, std::map<Element, DefectInfo>& seen, std::uint64_t& pairs) {
  const FgAbGroup& tg = f.target();
  const std::size_t n = f.source_rank();
  Rng rng(seed);
  const std::vector<IntVector> special = f.table_points();
  for (long r : radii) {
    // Deterministic probes first: the zero pair and the corners.
    std::vector<std::pair<IntVector, IntVector>> batch;
    IntVector zero(n), pos(n), neg(n);
    for (std::size_t i = 0; i < n; ++i) {
      pos[i] = r;
      neg[i] = -r;
    }
    batch.emplace_back(zero, zero);
    batch.emplace_back(pos, neg);
    batch.emplace_back(pos, pos);
    batch.emplace_back(neg, neg);
    for (const auto& [x, y] : batch) {
      IntVector s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = x[i] + y[i];
      record(seen, tg.sub(tg.sub(f(s), f(x)), f(y)), std::max(max_abs(x), max_abs(y)), x, y);
      ++pairs;
    }
    // Random pairs rarely touch a tabulated point, so route probes through each.
    auto probe = [&](const IntVector& x, const IntVector& y) {
      if (max_abs(x) > r || max_abs(y) > r) return;
      IntVector s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = x[i] + y[i];
      record(seen, tg.sub(tg.sub(f(s), f(x)), f(y)), std::max(max_abs(x), max_abs(y)), x, y);
      ++pairs;
    };
    for (const auto& p : special) {
      if (max_abs(p) > r) continue;
      for (const auto& q : special) probe(p, q);
      probe(p, zero);
      for (std::size_t t = 0; t < samples / 8 + 1; ++t) {
        IntVector y(n), rest(n);
        for (std::size_t i = 0; i < n; ++i) {
          y[i] = static_cast<long>(rng.uniform(-r, r));
          rest[i] = p[i] - y[i];
        }
        probe(p, y);
        probe(y, rest);
      }
    }
    for (std::size_t t = 0; t < samples; ++t) {
      IntVector x(n), y(n), s(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<long>(rng.uniform(-r, r));
        y[i] = static_cast<long>(rng.uniform(-r, r));
        s[i] = x[i] + y[i];
      }
      record(seen, tg.sub(tg.sub(f(s), f(x)), f(y)), std::max(max_abs(x), max_abs(y)), x, y);
      ++pairs;
    }
  }
}

bool subset_of(const std::vector<Element>& a, const std::vector<Element>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void for_each_point(std::size_t n, long r, const std::function<void(const IntVector&)>& fn) {
  const double count = std::pow(2.0 * static_cast<double>(r) + 1.0, static_cast<double>(n));
  if (count > 4e6)
    throw DomainError("window [-" + std::to_string(r) + ", " + std::to_string(r) + "]^" +
                      std::to_string(n) + " is too large to enumerate");
  IntVector x(n, Integer(-r));
  while (true) {
    fn(x);
    std::size_t i = 0;
    while (i < n) {
      if (x[i] < r) {
        x[i] += 1;
        break;
      }
      x[i] = -r;
      ++i;
    }
    if (i == n) break;
  }
}

}  // namespace

std::vector<Element> window_range(const QhMap& f, long radius) {
  std::set<Element> out;
  for_each_point(f.source_rank(), radius, [&](const IntVector& x) { out.insert(f(x)); });
  return std::vector<Element>(out.begin(), out.end());
}

DefectReport defect(const QhMap& f, const DefectOptions& opts) {
  if (opts.target_ideal != IdealKind::Finitary && opts.target_ideal != IdealKind::Bounded)
    throw DomainError("defect analysis supports finitary and bounded target ideals, not " +
                      coarse::to_string(opts.target_ideal));
  const std::vector<long> radii = normalize_radii(opts.radii);
  const long rmax = radii.back();
  const FgAbGroup& tg = f.target();

  DefectReport rep;
  rep.map = f.to_string();
  rep.ideal = coarse::to_string(opts.target_ideal);

  std::map<Element, DefectInfo> seen;
  if (f.source_rank() == 1 && rmax <= opts.exhaustive_limit)
    rep.exhaustive = scan_exhaustive(f, rmax, seen, rep.pairs_examined);
  if (!rep.exhaustive) {
    seen.clear();
    rep.pairs_examined = 0;
    scan_sampled(f, radii, opts.samples_per_radius, opts.seed, seen, rep.pairs_examined);
  }

  for (long r : radii) {
    RadiusData w;
    w.radius = r;
    Integer best_norm = -1;
    for (const auto& [d, info] : seen) {
      if (info.level > r) continue;
      w.defects.push_back(d);
      const Integer nrm = element_norm(tg, d);
      if (nrm > best_norm) {
        best_norm = nrm;
        w.max_witness = Witness{info.x, info.y, d};
      }
    }
    rep.windows.push_back(std::move(w));
  }
  rep.defect = rep.windows.back().defects;

  std::set<Element> m(rep.defect.begin(), rep.defect.end());
  m.insert(f(IntVector(f.source_rank())));
  for (const auto& d : std::vector<Element>(m.begin(), m.end())) m.insert(tg.neg(d));
  rep.normalized.assign(m.begin(), m.end());

  const auto& half = std::find_if(rep.windows.begin(), rep.windows.end(),
                                  [&](const RadiusData& w) { return w.radius == rmax / 2; })
                         ->defects;
  if (opts.target_ideal == IdealKind::Bounded) {
    rep.verdict = Verdict::CertifiedOnWindow;
    rep.reason = "every subset of the target lies in the bounded ideal";
  } else if (half == rep.defect) {
    rep.verdict = Verdict::CertifiedOnWindow;
    rep.reason = "defect set unchanged from radius " + std::to_string(rmax / 2) + " to " +
                 std::to_string(rmax);
  } else {
    rep.verdict = Verdict::Rejected;
    rep.reason = "defect set grows from " + std::to_string(half.size()) + " to " +
                 std::to_string(rep.defect.size()) + " values between radius " +
                 std::to_string(rmax / 2) + " and " + std::to_string(rmax);
  }

  bool unbounded = false;
  rep.exact = exact_defect(f, &unbounded);
  rep.exact_unbounded = unbounded;
  if (rep.exact && !subset_of(rep.defect, *rep.exact))
    throw TheoremViolation("window defect of " + rep.map + " escapes its exact defect set");
  if (unbounded && opts.target_ideal == IdealKind::Finitary &&
      rep.verdict == Verdict::CertifiedOnWindow)
    throw TheoremViolation(rep.map + " has unbounded defect but certified on the window");
  return rep;
}

// ---------------------------------------------------------------- theorem checks

namespace {

void require_same_signature(const QhMap& f, const QhMap& g) {
  if (f.source_rank() != g.source_rank() || !(f.target() == g.target()))
    throw DomainError("maps have different signatures: " + f.to_string() + " vs " + g.to_string());
}

std::vector<Element> difference_range(const QhMap& f, const QhMap& g, long r) {
  std::set<Element> out;
  for_each_point(f.source_rank(), r,
                 [&](const IntVector& x) { out.insert(f.target().sub(g(x), f(x))); });
  return std::vector<Element>(out.begin(), out.end());
}

bool certified(const DefectReport& r) { return r.verdict == Verdict::CertifiedOnWindow; }

long largest(const std::vector<long>& radii) { return normalize_radii(radii).back(); }

}  // namespace

PerturbReport perturb_and_check(const QhMap& f, const QhMap& g, const DefectOptions& opts) {
  require_same_signature(f, g);
  PerturbReport rep;
  const long rmax = largest(opts.radii);
  rep.closeness_bound = difference_range(f, g, rmax);
  rep.difference_stabilized =
      opts.target_ideal == IdealKind::Bounded || difference_range(f, g, rmax / 2) == rep.closeness_bound;
  rep.f_report = defect(f, opts);
  rep.g_report = defect(g, opts);
  if (!rep.difference_stabilized) {
    rep.status = CheckStatus::NotApplicable;
    rep.reason = "g - f takes new values between radius " + std::to_string(rmax / 2) + " and " +
                 std::to_string(rmax);
  } else if (certified(rep.f_report) != certified(rep.g_report)) {
    rep.status = CheckStatus::Violation;
    rep.reason = "close maps with different quasi-homomorphism verdicts";
  } else {
    rep.status = CheckStatus::Ok;
    rep.reason = certified(rep.f_report) ? "both maps certify" : "neither map certifies";
  }
  return rep;
}

ComposeReport compose_qh(const QhMap& outer, const QhMap& inner, IdealKind mid_ideal,
                         const DefectOptions& opts) {
  const QhMap composite = QhMap::compose(outer, inner);
  ComposeReport rep;
  DefectOptions inner_opts = opts;
  inner_opts.target_ideal = mid_ideal;
  rep.inner_report = defect(inner, inner_opts);
  rep.outer_report = defect(outer, opts);
  rep.composite_report = defect(composite, opts);

  const long rmax = largest(opts.radii);
  if (mid_ideal == IdealKind::Bounded && opts.target_ideal == IdealKind::Finitary) {
    // Bornologous here means the whole image of outer is finite.
    rep.outer_bornologous_on_window = window_range(outer, rmax / 2) == window_range(outer, rmax);
  } else if (mid_ideal == IdealKind::Finitary || mid_ideal == IdealKind::Bounded) {
    rep.outer_bornologous_on_window = true;
  } else {
    throw DomainError("compose_qh supports finitary and bounded middle ideals");
  }

  const bool premise = certified(rep.inner_report) && certified(rep.outer_report) &&
                       rep.outer_bornologous_on_window;
  if (!premise) {
    rep.status = CheckStatus::NotApplicable;
    rep.reason = !rep.outer_bornologous_on_window ? "outer map is not bornologous on the window"
                                                  : "an input map does not certify";
  } else if (!certified(rep.composite_report)) {
    rep.status = CheckStatus::Violation;
    rep.reason = "composite of certified maps with bornologous outer map does not certify";
  } else {
    rep.status = CheckStatus::Ok;
    rep.reason = "composite certifies";
  }
  return rep;
}

SectionReport section_as_coarse_inverse(const QhMap& f, const DefectOptions& opts) {
  if (f.source_rank() != 1 || !(f.target() == FgAbGroup::free(1)))
    throw DomainError("sections are built for maps Z -> Z, got " + f.to_string());
  SectionReport rep;
  const long rmax = largest(opts.radii);
  const long t = 2 * rmax;

  Integer step = 0;
  for (long x = -std::max(64L, 2 * t); x <= std::max(64L, 2 * t); ++x) {
    const Integer v = f({Integer(x)})[0];
    mpz_gcd(step.get_mpz_t(), step.get_mpz_t(), v.get_mpz_t());
  }
  if (step == 0) throw DomainError(f.to_string() + " is identically zero, not surjective");
  rep.codomain_step = step;

  // Scan 0, 1, -1, 2, -2, ... so the first hit is the least |.| preimage
  // with ties going to the nonnegative one.
  std::map<Integer, Integer> pre;
  const long wanted = 2 * t + 1;
  long found = 0;
  const Integer bound = std::max<Integer>(Integer(1024), 64 * (step * t + 1));
  for (Integer k = 0; k <= bound && found < wanted; ++k) {
    for (int sgn : {1, -1}) {
      if (k == 0 && sgn == -1) continue;
      const Integer x = sgn * k;
      const Integer v = f({x})[0];
      if (floor_mod(v, step) != 0) continue;
      const Integer idx = v / step;
      if (abs(idx) > t || pre.count(idx)) continue;
      pre.emplace(idx, x);
      ++found;
    }
  }
  if (found < wanted) {
    for (long k = -t; k <= t; ++k)
      if (!pre.count(Integer(k)))
        throw DomainError(f.to_string() + " is not surjective onto " + step.get_str() +
                          "Z on the window: no preimage of " + Integer(step * k).get_str() +
                          " with |x| <= " + bound.get_str());
  }
  std::vector<TableEntry> entries;
  for (const auto& [k, x] : pre) {
    if (f({x})[0] != step * k) throw TheoremViolation("section fails f(s(y)) = y");
    entries.push_back(TableEntry{{k}, {x}});
  }
  rep.section = QhMap::table(1, FgAbGroup::free(1), std::move(entries), std::nullopt,
                             "section(" + f.to_string() + ")");

  // Effectively proper on the window: fibre sizes stop growing.
  auto max_fibre = [&](long r) {
    std::map<Integer, long> count;
    long best = 0;
    for (long x = -r; x <= r; ++x) best = std::max(best, ++count[f({Integer(x)})[0]]);
    return best;
  };
  rep.f_effectively_proper_on_window = max_fibre(rmax) == max_fibre(2 * rmax);

  rep.f_report = defect(f, opts);
  rep.section_report = defect(*rep.section, opts);
  const bool premise = certified(rep.f_report) && rep.f_effectively_proper_on_window;
  if (!premise) {
    rep.status = CheckStatus::NotApplicable;
    rep.reason = "f does not certify or is not effectively proper on the window";
  } else if (!certified(rep.section_report)) {
    rep.status = CheckStatus::Violation;
    rep.reason = "section of a certified effectively proper surjection does not certify";
  } else {
    rep.status = CheckStatus::Ok;
    rep.reason = "f o s = id on the window and the section certifies";
  }
  return rep;
}

InverseReport coarse_inverse_is_qh_check(const QhMap& f, const QhMap& g,
                                         const DefectOptions& opts) {
  const std::size_t n = f.source_rank();
  const std::size_t m = g.source_rank();
  if (!(f.target() == FgAbGroup::free(m)) || !(g.target() == FgAbGroup::free(n)))
    throw DomainError("coarse inverse check needs f : Z^n -> Z^m and g : Z^m -> Z^n");
  const long rmax = largest(opts.radii);
  auto displacement = [](const QhMap& a, const QhMap& b, long r) {
    // {b(a(x)) - x}
    std::set<Element> out;
    const FgAbGroup& grp = b.target();
    for_each_point(a.source_rank(), r, [&](const IntVector& x) { out.insert(grp.sub(b(a(x)), x)); });
    return std::vector<Element>(out.begin(), out.end());
  };
  InverseReport rep;
  rep.gf_displacement = displacement(f, g, rmax);
  rep.fg_displacement = displacement(g, f, rmax);
  if (opts.target_ideal == IdealKind::Finitary &&
      (displacement(f, g, rmax / 2) != rep.gf_displacement ||
       displacement(g, f, rmax / 2) != rep.fg_displacement))
    throw DomainError("g is not a coarse inverse of f on the window: displacements keep growing");
  rep.f_report = defect(f, opts);
  rep.g_report = defect(g, opts);
  if (!certified(rep.f_report)) {
    rep.status = CheckStatus::NotApplicable;
    rep.reason = "f does not certify";
  } else if (!certified(rep.g_report)) {
    rep.status = CheckStatus::Violation;
    rep.reason = "coarse inverse of a certified quasi-homomorphism does not certify";
  } else {
    rep.status = CheckStatus::Ok;
    rep.reason = "the coarse inverse certifies";
  }
  return rep;
}

std::vector<RankProbe> image_rank_on_window(const QhMap& f, const std::vector<long>& radii) {
  std::vector<RankProbe> out;
  const std::size_t width = f.target().free_rank();
  for (long r : radii) {
    std::vector<IntVector> rows;
    for (const auto& v : window_range(f, r)) rows.emplace_back(v.begin(), v.begin() + static_cast<long>(width));
    const IntMatrix mat = IntMatrix::from_rows(rows, width);
    out.push_back(RankProbe{r, mat.rows() == 0 || width == 0 ? 0 : intlat::rank(mat)});
  }
  return out;
}

}  // namespace cg::quasihom
