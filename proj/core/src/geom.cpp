#include "coarsegrp/geom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "coarsegrp/errors.hpp"
#include "coarsegrp/intlat.hpp"

namespace cg::geom {

namespace {

long fmod_l(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long fdiv_l(long a, long m) { return (a - fmod_l(a, m)) / m; }

std::string point_str(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i]);
  return out + ")";
}

std::string box_str(const Box& b) { return "[" + point_str(b.lo) + ".." + point_str(b.hi) + "]"; }

bool meets_shifted(const Box& u, const Box& v, const Point& s) {
  for (std::size_t i = 0; i < u.lo.size(); ++i)
    if (u.hi[i] < v.lo[i] + s[i] || v.hi[i] + s[i] < u.lo[i]) return false;
  return true;
}

}  // namespace

bool Box::contains(const Point& p) const {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  return true;
}

std::vector<Point> cube(std::size_t dim, long radius) {
  std::vector<Point> out;
  Point p(dim, -radius);
  while (true) {
    out.push_back(p);
    std::size_t i = 0;
    while (i < dim) {
      if (p[i] < radius) {
        ++p[i];
        break;
      }
      p[i] = -radius;
      ++i;
    }
    if (i == dim) break;
  }
  return out;
}

CoverCheck check_cover(const CoverWitness& w) {
  CoverCheck out;
  const std::size_t d = w.dim;
  if (w.bound.size() != d) throw DomainError("bound set has the wrong dimension");
  for (const auto& s : w.separation)
    if (s.size() != d) throw DomainError("separating point has the wrong dimension");
  for (std::size_t i = 0; i < d; ++i)
    if (w.bound[i] >= 2 * w.window) out.unbounded_suspect = true;

  for (std::size_t f = 0; f < w.families.size(); ++f)
    for (const Box& b : w.families[f]) {
      if (b.lo.size() != d || b.hi.size() != d) throw DomainError("block has the wrong dimension");
      for (std::size_t i = 0; i < d; ++i)
        if (b.hi[i] < b.lo[i] || b.hi[i] - b.lo[i] > w.bound[i]) {
          out.violation = "block " + box_str(b) + " in family " + std::to_string(f) +
                          " is not inside x + K for its members";
          return out;
        }
    }

  // Cover of the window, on the grid cut out by the block boundaries.
  std::vector<std::vector<long>> cuts(d);
  std::vector<const Box*> all;
  for (const auto& fam : w.families)
    for (const Box& b : fam) all.push_back(&b);
  for (std::size_t i = 0; i < d; ++i) {
    cuts[i] = {-w.window, w.window + 1};
    for (const Box* b : all) {
      if (b->lo[i] > -w.window && b->lo[i] <= w.window) cuts[i].push_back(b->lo[i]);
      if (b->hi[i] + 1 > -w.window && b->hi[i] + 1 <= w.window) cuts[i].push_back(b->hi[i] + 1);
    }
    std::sort(cuts[i].begin(), cuts[i].end());
    cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
  }
  std::size_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) {
    cells *= cuts[i].size() - 1;
    if (cells > 50000000) throw DomainError("cover too fine to check");
  }
  std::vector<char> covered(cells, 0);
  for (const Box* b : all) {
    // Cell index range of the block along each axis.
    std::vector<std::size_t> first(d), last(d);
    bool empty = false;
    for (std::size_t i = 0; i < d && !empty; ++i) {
      const long lo = std::max(b->lo[i], -w.window);
      const long hi = std::min(b->hi[i], w.window);
      if (lo > hi) {
        empty = true;
        break;
      }
      first[i] = static_cast<std::size_t>(std::upper_bound(cuts[i].begin(), cuts[i].end(), lo) -
                                          cuts[i].begin() - 1);
      last[i] = static_cast<std::size_t>(std::upper_bound(cuts[i].begin(), cuts[i].end(), hi) -
                                         cuts[i].begin() - 1);
    }
    if (empty) continue;
    std::vector<std::size_t> idx = first;
    while (true) {
      std::size_t flat = 0;
      for (std::size_t i = d; i-- > 0;) flat = flat * (cuts[i].size() - 1) + idx[i];
      covered[flat] = 1;
      std::size_t i = 0;
      while (i < d) {
        if (idx[i] < last[i]) {
          ++idx[i];
          break;
        }
        idx[i] = first[i];
        ++i;
      }
      if (i == d) break;
    }
  }
  for (std::size_t flat = 0; flat < cells; ++flat) {
    if (covered[flat]) continue;
    Point p(d);
    std::size_t rest = flat;
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = cuts[i][rest % (cuts[i].size() - 1)];
      rest /= cuts[i].size() - 1;
    }
    out.violation = "point " + point_str(p) + " is not covered";
    return out;
  }

  // S-disjointness inside each family: U meets V + s iff s lies in the box
  // [U.lo - V.hi, U.hi - V.lo].
  Point s_lo(d, 0), s_hi(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (w.separation.empty()) break;
    s_lo[i] = s_hi[i] = w.separation.front()[i];
    for (const auto& s : w.separation) {
      s_lo[i] = std::min(s_lo[i], s[i]);
      s_hi[i] = std::max(s_hi[i], s[i]);
    }
  }
  long reach = 0;
  for (std::size_t i = 0; i < d; ++i) reach = std::max({reach, std::labs(s_lo[i]), std::labs(s_hi[i])});
  auto separating_shift = [&](const Box& u, const Box& v) -> std::optional<Point> {
    for (std::size_t i = 0; i < d; ++i)
      if (u.hi[i] - v.lo[i] < s_lo[i] || u.lo[i] - v.hi[i] > s_hi[i]) return std::nullopt;
    for (const auto& s : w.separation)
      if (meets_shifted(u, v, s)) return s;
    return std::nullopt;
  };
  for (std::size_t f = 0; f < w.families.size(); ++f) {
    std::vector<const Box*> fam;
    for (const Box& b : w.families[f]) fam.push_back(&b);
    std::sort(fam.begin(), fam.end(), [](const Box* a, const Box* b) { return a->lo < b->lo; });
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j) {
        if (fam[j]->lo[0] > fam[i]->hi[0] + reach) break;
        auto s = separating_shift(*fam[i], *fam[j]);
        if (!s) s = separating_shift(*fam[j], *fam[i]);
        if (s) {
          out.violation = "blocks " + box_str(*fam[i]) + " and " + box_str(*fam[j]) + " in family " +
                          std::to_string(f) + " are not S-disjoint (s = " + point_str(*s) + ")";
          return out;
        }
      }
  }
  out.ok = true;
  return out;
}

CoverWitness make_asdim_witness(std::size_t dim, const std::vector<Point>& separation, long window) {
  if (dim != 1 && dim != 2) throw DomainError("witnesses are generated for d = 1 and d = 2 only");
  if (window < 0) throw DomainError("window must be nonnegative");
  std::set<Point> sset(separation.begin(), separation.end());
  long rho = 0;
  for (const Point& s : separation) {
    if (s.size() != dim) throw DomainError("separating point has the wrong dimension");
    Point neg(s);
    for (long& c : neg) c = -c;
    if (!sset.count(neg)) throw DomainError("separating set is not symmetric: " + point_str(s));
    for (long c : s) rho = std::max(rho, std::labs(c));
  }
  const long len = 2 * (rho + 1);
  CoverWitness w;
  w.dim = dim;
  w.window = window;
  w.separation = separation;
  w.bound = Point(dim, len - 1);
  if (dim == 1) {
    w.families.resize(2);
    for (long j = fdiv_l(-window, len); j <= fdiv_l(window, len); ++j)
      w.families[static_cast<std::size_t>(fmod_l(j, 2))].push_back(Box{{j * len}, {j * len + len - 1}});
    return w;
  }
  // Rows of height len; odd rows shifted by len / 2. Brick (r, j) sits at
  // half-unit position p = 2j + (r mod 2) and gets colour p mod 3, which
  // separates every pair of touching bricks.
  w.families.resize(3);
  const long half = len / 2;
  for (long r = fdiv_l(-window, len); r <= fdiv_l(window, len); ++r) {
    const long parity = fmod_l(r, 2);
    const long offset = parity * half;
    for (long j = fdiv_l(-window - offset, len); j <= fdiv_l(window - offset, len); ++j) {
      const long p = 2 * j + parity;
      w.families[static_cast<std::size_t>(fmod_l(p, 3))].push_back(
          Box{{j * len + offset, r * len}, {j * len + offset + len - 1, r * len + len - 1}});
    }
  }
  return w;
}

CoverWitness merge_families(const CoverWitness& w) {
  CoverWitness out = w;
  out.families.assign(1, {});
  for (const auto& fam : w.families) out.families[0].insert(out.families[0].end(), fam.begin(), fam.end());
  return out;
}

bool is_cellular(const coarse::GroupIdeal& ideal) {
  if (ideal.kind() != coarse::IdealKind::Finitary) return true;
  return ideal.group().is_finite();
}

std::string cellularity_reason(const coarse::GroupIdeal& ideal) {
  using coarse::IdealKind;
  switch (ideal.kind()) {
    case IdealKind::Discrete: return "the trivial subgroup is cofinal";
    case IdealKind::Bounded: return "the whole group is a member";
    case IdealKind::Linear: return "generated by a subgroup";
    case IdealKind::FiniteRank: return "finite-rank subgroups form a base";
    case IdealKind::Finitary:
      if (ideal.group().is_finite()) return "finite group: the whole group is a finite member";
      return "K = {-e_i, 0, e_i} generates " + ideal.group().to_string() +
             ", which is infinite and so not a member";
  }
  return "";
}

// ---------------------------------------------------------------- periodic sets

PeriodicSet::PeriodicSet(long period, std::vector<long> residues, std::vector<long> exceptions) {
  if (period < 1) throw DomainError("period must be at least 1");
  std::set<long> res;
  for (long r : residues) res.insert(fmod_l(r, period));
  for (long d = 1; d <= period; ++d) {
    if (period % d) continue;
    bool periodic = true;
    for (long r = 0; r < period && periodic; ++r) periodic = res.count(r) == res.count((r + d) % period);
    if (!periodic) continue;
    period_ = d;
    for (long r : res)
      if (r < d) residues_.push_back(r);
    break;
  }
  std::map<long, int> toggles;
  for (long x : exceptions) toggles[x] ^= 1;
  for (const auto& [x, t] : toggles)
    if (t) exceptions_.push_back(x);
}

bool PeriodicSet::contains(long x) const {
  const bool base = std::binary_search(residues_.begin(), residues_.end(), fmod_l(x, period_));
  const bool toggled = std::binary_search(exceptions_.begin(), exceptions_.end(), x);
  return base != toggled;
}

std::string PeriodicSet::to_string() const {
  std::string out = "periodic{m: " + std::to_string(period_) + ", residues: [";
  for (std::size_t i = 0; i < residues_.size(); ++i) out += (i ? ", " : "") + std::to_string(residues_[i]);
  out += "], except: [";
  for (std::size_t i = 0; i < exceptions_.size(); ++i)
    out += (i ? ", " : "") + std::string(exceptions_[i] >= 0 ? "+" : "") + std::to_string(exceptions_[i]);
  return out + "]}";
}

namespace {

std::string list_str(const std::vector<long>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + "}";
}

}  // namespace

SetVerdict is_large(const PeriodicSet& a) {
  if (a.is_finite())
    return {false, "A = " + list_str(a.exceptions()) + " is finite, so A + K is finite for finite K"};
  const long gap = a.period() * (static_cast<long>(a.exceptions().size()) + 1);
  return {true, "A contains " + std::to_string(a.residues().front()) + " + " +
                    std::to_string(a.period()) + "Z up to " + std::to_string(a.exceptions().size()) +
                    " removed points, so A + [-" + std::to_string(gap) + ", " + std::to_string(gap) +
                    "] = Z"};
}

SetVerdict is_small(const PeriodicSet& a) {
  if (a.is_finite())
    return {true, "A = " + list_str(a.exceptions()) +
                      " is finite: if L has gaps at most g then L \\ A has gaps at most " +
                      std::to_string(a.exceptions().size() + 1) + "(g + 1), so L \\ A stays large"};
  const long r = a.residues().front();
  std::vector<long> left;
  for (long x : a.exceptions())
    if (fmod_l(x - r, a.period()) == 0 && !a.contains(x)) left.push_back(x);
  return {false, "L = " + std::to_string(r) + " + " + std::to_string(a.period()) +
                     "Z is large but L \\ A = " + list_str(left) + " is finite, hence not large"};
}

DltVsSmall dlt_vs_small(const PeriodicSet& a) {
  DltVsSmall out;
  // Chain components of A on a window: an unbounded chain means the subspace
  // has positive asymptotic dimension; bounded components mean dimension 0.
  long spread = 0;
  for (long x : a.exceptions()) spread = std::max(spread, std::labs(x));
  const long step = a.period() * (static_cast<long>(a.exceptions().size()) + 1) + 1;
  const long window = 10 * step + 2 * spread + 2;
  long widest = 0;
  std::optional<long> start, prev;
  for (long x = -window; x <= window; ++x) {
    if (!a.contains(x)) continue;
    if (!prev || x - *prev > step) start = x;
    prev = x;
    widest = std::max(widest, x - *start);
  }
  out.in_d_less = widest < window;
  out.in_s = is_small(a).value;
  out.equal_here = out.in_d_less == out.in_s;
  out.reason = "widest " + std::to_string(step) + "-chain component on [-" + std::to_string(window) +
               ", " + std::to_string(window) + "] has diameter " + std::to_string(widest);
  return out;
}

PeriodicSet random_periodic(Rng& rng, long max_period, std::size_t max_exceptions, long spread) {
  const long m = rng.uniform(1, max_period);
  std::vector<long> res;
  if (!rng.coin(30))
    for (long r = 0; r < m; ++r)
      if (rng.coin()) res.push_back(r);
  std::vector<long> exc;
  const auto k = rng.uniform(0, static_cast<long>(max_exceptions));
  for (long i = 0; i < k; ++i) exc.push_back(rng.uniform(-spread, spread));
  return PeriodicSet(m, std::move(res), std::move(exc));
}

}  // namespace cg::geom
