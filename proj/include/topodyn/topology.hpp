#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "topodyn/subset_mask.hpp"

namespace topodyn {

enum class TopologyDefect {
  zero_points,
  too_many_points,
  open_out_of_range,
  not_union_closed,
  not_intersection_closed,
};

std::string_view topology_defect_name(TopologyDefect defect);

/// Thrown when a family of sets fails to be a topology. For the two closure
/// defects, first()/second() name a violating pair of family members; for
/// open_out_of_range, first() is the offending mask.
class TopologyError : public std::runtime_error {
 public:
  TopologyError(TopologyDefect defect, int n, SubsetMask first,
                SubsetMask second);

  TopologyDefect defect() const noexcept { return defect_; }
  SubsetMask first() const noexcept { return first_; }
  SubsetMask second() const noexcept { return second_; }

 private:
  TopologyDefect defect_;
  SubsetMask first_;
  SubsetMask second_;
};

/// A topology on the points {0, ..., n-1}: the family of open sets plus the
/// derived tables the rest of the engine consumes (closed sets, minimal
/// neighborhoods, point closures). Instances are immutable after validation,
/// cheap to copy, and safe to share across threads.
///
/// Canonical form: opens are sorted ascending by mask value with no
/// duplicates, and always include the empty set and the full space.
class FiniteTopology {
 public:
  /// Canonicalizes and checks a family of opens: inserts the empty set and
  /// the full space if absent, drops duplicates, sorts ascending, then
  /// requires closure under pairwise union and intersection. Throws
  /// TopologyError naming the first violating pair in scan order.
  static FiniteTopology validate(int n, std::span<const SubsetMask> family);

  /// Convenience for literal families given as raw mask words.
  static FiniteTopology validate(int n,
                                 std::initializer_list<std::uint64_t> family);

  int point_count() const { return n_; }
  SubsetMask universe() const { return SubsetMask::universe(n_); }

  std::span<const SubsetMask> opens() const { return opens_; }
  std::span<const SubsetMask> closed_sets() const { return closed_; }

  bool is_open(SubsetMask s) const;
  bool is_closed(SubsetMask s) const;

  /// Smallest closed superset of s.
  SubsetMask closure(SubsetMask s) const;

  /// Largest open subset of s; computed as the complement of the closure of
  /// the complement.
  SubsetMask interior(SubsetMask s) const;

  /// True iff closure(s) is the whole space.
  bool is_dense(SubsetMask s) const;

  /// Intersection of every open set containing x; itself open, and the
  /// inclusion-smallest open neighborhood of x.
  SubsetMask minimal_neighborhood(int x) const { return min_nbhd_[x]; }

  /// closure({x}).
  SubsetMask point_closure(int x) const { return point_closure_[x]; }

  /// Points x whose singleton {x} is open.
  SubsetMask isolated_points() const;
  bool has_isolated_point() const;

  bool is_discrete() const;
  /// True iff the opens are exactly {empty, X}.
  bool is_trivial() const;

  /// Every pair of distinct points has disjoint open neighborhoods. On a
  /// finite space this coincides with is_discrete().
  bool is_hausdorff() const;

  friend bool operator==(const FiniteTopology& a, const FiniteTopology& b) {
    return a.n_ == b.n_ && a.opens_ == b.opens_;
  }

 private:
  FiniteTopology() = default;
  void build_tables();

  int n_ = 0;
  std::vector<SubsetMask> opens_;
  std::vector<SubsetMask> closed_;
  std::vector<SubsetMask> min_nbhd_;
  std::vector<SubsetMask> point_closure_;
};

/// Renders a mask as brace-set notation over default point labels
/// a, b, c, ... (diagnostics only; named I/O lives in system_doc).
std::string debug_subset(SubsetMask s);

}  // namespace topodyn
