#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topodyn/properties.hpp"

namespace topodyn {

/// Exhaustive enumeration is supported up to this many points.
inline constexpr int kMaxEnumPoints = 6;

/// Default seed for every sampled sweep; reports echo the seed in use.
inline constexpr std::uint64_t kDefaultSeed = 0x746F706F64796EULL;

/// Raised when an enumeration request exceeds its supported range.
class CapExceeded : public std::invalid_argument {
 public:
  explicit CapExceeded(const std::string& message);
};

/// Raised by search when a property is both required and forbidden.
class UnsatisfiableQuery : public std::invalid_argument {
 public:
  explicit UnsatisfiableQuery(const std::string& message);
};

/// A reflexive, transitive assignment of a candidate minimal neighborhood
/// to every point. These are exactly the preorders on the points, and they
/// correspond one-to-one with topologies on a finite set: U is open iff it
/// contains the assigned neighborhood of each of its members.
struct MinNbhdFunction {
  int n = 0;
  std::array<SubsetMask, kMaxEnumPoints> nbhd{};

  /// Validates reflexivity and transitivity; throws std::invalid_argument.
  static MinNbhdFunction from_neighborhoods(int n,
                                            std::span<const SubsetMask> nbhds);

  bool is_reflexive() const;
  bool is_transitive() const;

  FiniteTopology to_topology() const;
};

/// Streams every valid MinNbhdFunction on n points in lexicographic order
/// of (nbhd[0], ..., nbhd[n-1]). Throws CapExceeded for n outside
/// 1..kMaxEnumPoints.
void for_each_min_nbhd_function(
    int n, const std::function<void(const MinNbhdFunction&)>& fn);

/// Streams every labeled topology on n points, one per preorder, in the
/// enumeration order of for_each_min_nbhd_function.
void for_each_topology(int n,
                       const std::function<void(const FiniteTopology&)>& fn);

std::vector<FiniteTopology> enumerate_topologies(int n);

/// Independent small-n generator: scans all 2^(2^n) subset families and
/// keeps the ones closed under union and intersection. Practical only for
/// n <= 4; throws CapExceeded beyond that.
std::vector<FiniteTopology> enumerate_topologies_family_filter(int n);

/// n^n.
std::uint64_t count_self_maps(int n);

/// One word per topology for n <= kMaxEnumPoints: bit s is set iff the
/// subset with mask s is open. Distinct topologies get distinct signatures.
std::uint64_t family_signature(const FiniteTopology& topo);

/// Streams every system at n points: topologies in enumeration order, maps
/// in index order within each topology.
void for_each_system(
    int n, const std::function<void(const DynSystem&, std::uint32_t topo_index,
                                    std::uint64_t map_index)>& fn);

/// Relabels points by the permutation perm (point x becomes perm[x]).
DynSystem relabel(const DynSystem& sys, std::span<const int> perm);

/// Identifies systems up to homeomorphism-conjugacy: the minimum over all
/// point relabelings of (family signature, packed image table).
struct CanonicalKey {
  std::uint64_t topology_bits = 0;
  std::uint64_t map_bits = 0;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  std::string to_string() const;
};

CanonicalKey canonical_key(const DynSystem& sys);

struct AtlasRecord {
  std::uint32_t topology_index = 0;
  std::uint64_t map_index = 0;
  std::shared_ptr<const FiniteTopology> topology;
  SelfMap map;
  PropertyProfile profile;
  CanonicalKey key;
};

/// Streams the classified atlas in enumeration order. With dedup, only the
/// first representative of each canonical class is emitted. Returns
/// (systems seen, records emitted).
struct AtlasCounts {
  std::uint64_t systems = 0;
  std::uint64_t emitted = 0;
};
AtlasCounts build_atlas(int n, bool dedup,
                        const std::function<void(const AtlasRecord&)>& fn);

struct SearchQuery {
  int n = 3;
  PropertySet required;
  PropertySet forbidden;
  bool filter_continuous = false;
  bool filter_no_isolated = false;
  bool filter_hausdorff = false;
  bool filter_nontrivial = false;
  bool dedup = false;
  std::optional<std::uint64_t> limit;
};

/// Exhaustive witness search over the n-point universe. Throws
/// UnsatisfiableQuery when required and forbidden overlap.
std::vector<AtlasRecord> search(const SearchQuery& query);

/// Sweep result: every system on a nontrivial topology must fail
/// hypermixing. Indiscrete systems are exempt from the claim and instead
/// cross-checked against the coincidence hypermixing == surjective.
struct HypermixingSweepReport {
  int n_min = 2;
  int n_max = 2;
  std::uint64_t systems_scanned = 0;
  std::uint64_t nontrivial_checked = 0;
  std::uint64_t indiscrete_checked = 0;
  /// Serialized documents of nontrivial hypermixing systems (bugs if any).
  std::vector<std::string> violations;
  /// Indiscrete systems where hypermixing and surjectivity disagree.
  std::vector<std::string> coincidence_violations;
  bool passed() const {
    return violations.empty() && coincidence_violations.empty();
  }
};

HypermixingSweepReport sweep_hypermixing_absence(int n_min, int n_max);

/// Exhaustive check over every map on the indiscrete topology, n up to
/// n_max (capped at kMaxEnumPoints): hypermixing must equal surjectivity.
struct IndiscreteCoincidenceReport {
  int n_max = 5;
  std::uint64_t maps_checked = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

IndiscreteCoincidenceReport check_indiscrete_hypermixing(int n_max);

/// Worker cap honored by every parallel sweep: the TOPODYN_THREADS
/// environment variable when set to a positive integer, otherwise the
/// hardware concurrency. Results never depend on the worker count.
int worker_count();

}  // namespace topodyn
