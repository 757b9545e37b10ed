#pragma once

// Covers of Z^d witnessing asymptotic dimension on a window, cellularity of
// ideals, and small/large subsets of Z among the eventually periodic ones.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarsegrp/coarse.hpp"

namespace cg::geom {

using Point = std::vector<long>;

/// Axis-parallel box, bounds inclusive.
struct Box {
  Point lo;
  Point hi;
  bool contains(const Point& p) const;
};

struct CoverWitness {
  std::size_t dim = 1;
  long window = 0;
  std::vector<std::vector<Box>> families;
  /// K = [-bound_i, bound_i] per axis: every block U satisfies U - x in K
  /// for each x in U.
  Point bound;
  /// Finite separating set S.
  std::vector<Point> separation;
};

struct CoverCheck {
  bool ok = false;
  /// The bound set is as large as the window, so it says nothing about
  /// uniform boundedness.
  bool unbounded_suspect = false;
  std::string violation;
};

CoverCheck check_cover(const CoverWitness& w);

/// S = all points with |coordinates| <= radius.
std::vector<Point> cube(std::size_t dim, long radius);

/// d = 1: two families of intervals of length 2(rho + 1); d = 2: three
/// families of bricks. rho is the largest |coordinate| in S.
CoverWitness make_asdim_witness(std::size_t dim, const std::vector<Point>& separation, long window);

/// All blocks of the witness in a single family.
CoverWitness merge_families(const CoverWitness& w);

/// Has a cofinal family of subgroups. Finitary on an infinite group is the
/// only non-cellular kind here.
bool is_cellular(const coarse::GroupIdeal& ideal);
std::string cellularity_reason(const coarse::GroupIdeal& ideal);

/// ((R + mZ) symmetric-difference F) as a subset of Z.
class PeriodicSet {
 public:
  /// Residues are taken mod m; exceptions toggle membership (listing a
  /// point twice cancels). The result is canonical.
  PeriodicSet(long period, std::vector<long> residues, std::vector<long> exceptions);

  long period() const { return period_; }
  const std::vector<long>& residues() const { return residues_; }
  const std::vector<long>& exceptions() const { return exceptions_; }

  bool contains(long x) const;
  bool is_finite() const { return residues_.empty(); }

  friend bool operator==(const PeriodicSet&, const PeriodicSet&) = default;
  /// Literal form periodic{m: 6, residues: [1,3], except: [+7, -1]}.
  std::string to_string() const;

 private:
  long period_ = 1;
  std::vector<long> residues_;
  std::vector<long> exceptions_;
};

struct SetVerdict {
  bool value = false;
  std::string certificate;
};

/// Bounded gaps.
SetVerdict is_large(const PeriodicSet& a);
/// L \ A stays large for every large L.
SetVerdict is_small(const PeriodicSet& a);

struct DltVsSmall {
  bool in_d_less = false;
  bool in_s = false;
  bool equal_here = false;
  std::string reason;
};

DltVsSmall dlt_vs_small(const PeriodicSet& a);

PeriodicSet random_periodic(Rng& rng, long max_period, std::size_t max_exceptions, long spread);

}  // namespace cg::geom
