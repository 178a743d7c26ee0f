#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "topodyn/topology.hpp"

namespace topodyn {

/// A self-map of the points {0, ..., n-1}, stored as an image table.
class SelfMap {
 public:
  /// Throws std::invalid_argument if the table is empty, longer than
  /// kMaxPoints, or sends a point outside the space.
  explicit SelfMap(std::vector<std::uint8_t> image);

  static SelfMap identity(int n);
  static SelfMap constant(int n, int target);

  /// Decodes a map from its index in the base-n enumeration of all n^n
  /// self-maps: digit x of the index (base n) is the image of point x.
  static SelfMap from_index(int n, std::uint64_t index);
  std::uint64_t to_index() const;

  int point_count() const { return static_cast<int>(image_.size()); }
  int apply(int x) const { return image_[x]; }
  std::span<const std::uint8_t> image_table() const { return image_; }

  /// Pointwise image of a set.
  SubsetMask image_of(SubsetMask s) const;
  SubsetMask range() const;

  bool is_surjective() const;
  bool is_injective() const;

  /// p-fold composition, p >= 1.
  SelfMap power(int p) const;

  /// {x, f(x), f^2(x), ...} — the forward orbit as a set.
  SubsetMask orbit(int x) const;

  friend bool operator==(const SelfMap& a, const SelfMap& b) {
    return a.image_ == b.image_;
  }

 private:
  std::vector<std::uint8_t> image_;
};

/// The eventually periodic sequence of image sets f^0(U), f^1(U), ... .
/// snapshots holds the preperiod + period distinct sets; every later term
/// repeats the cycle block snapshots[preperiod .. preperiod+period-1].
struct SetTrajectory {
  SubsetMask source;
  int preperiod = 0;  // index where the cycle starts
  int period = 1;     // cycle length
  std::vector<SubsetMask> snapshots;

  /// f^n(source) for any n >= 0.
  SubsetMask at(std::int64_t n) const {
    const auto len = static_cast<std::int64_t>(snapshots.size());
    if (n < len) return snapshots[static_cast<std::size_t>(n)];
    return snapshots[static_cast<std::size_t>(
        preperiod + (n - preperiod) % period)];
  }

  /// The cycle block, i.e. the sets the trajectory visits infinitely often.
  std::span<const SubsetMask> cycle() const {
    return std::span<const SubsetMask>(snapshots).subspan(
        static_cast<std::size_t>(preperiod), static_cast<std::size_t>(period));
  }

  /// Intersection of the cycle block.
  SubsetMask cycle_intersection() const {
    SubsetMask result = snapshots[static_cast<std::size_t>(preperiod)];
    for (SubsetMask s : cycle()) result &= s;
    return result;
  }
};

/// Iterates image sets until the first repetition and splits the run into
/// preperiod and cycle. All snapshots are distinct, so
/// preperiod + period <= 2^n.
SetTrajectory trajectory(const SelfMap& map, SubsetMask start);

struct ForwardUnion {
  /// The stabilized union of all forward images U, f(U), f^2(U), ... .
  SubsetMask value;
  /// When the union reaches the full space: the least s with
  /// U | f(U) | ... | f^s(U) equal to the space. Empty otherwise.
  std::optional<int> steps_to_cover;
};

/// Accumulates forward images until a step adds nothing new; at that point
/// the union is invariant under the map, so it is the full forward union.
ForwardUnion forward_union_detail(const SelfMap& map, SubsetMask start);
SubsetMask forward_union(const SelfMap& map, SubsetMask start);

/// The set of points that belong to all but finitely many image sets
/// f^n(start). Equal to the intersection of the trajectory's cycle block.
SubsetMask liminf_set(const SelfMap& map, SubsetMask start);

/// A topology paired with a self-map of the same points. Continuity and
/// openness of the map are computed on first use and cached; racing
/// recomputation is idempotent, so the cache is a relaxed atomic.
class DynSystem {
 public:
  DynSystem(FiniteTopology topology, SelfMap map);
  DynSystem(std::shared_ptr<const FiniteTopology> topology, SelfMap map);

  DynSystem(const DynSystem& other);
  DynSystem& operator=(const DynSystem& other);

  const FiniteTopology& topology() const { return *topology_; }
  const std::shared_ptr<const FiniteTopology>& topology_ptr() const {
    return topology_;
  }
  const SelfMap& map() const { return map_; }
  int point_count() const { return map_.point_count(); }

  /// Preimage of every open set is open.
  bool is_continuous() const;
  /// Image of every open set is open.
  bool is_open_map() const;

 private:
  std::shared_ptr<const FiniteTopology> topology_;
  SelfMap map_;
  mutable std::atomic<std::int8_t> continuous_{-1};
  mutable std::atomic<std::int8_t> open_map_{-1};
};

}  // namespace topodyn
