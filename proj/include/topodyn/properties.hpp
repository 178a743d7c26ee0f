#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "topodyn/dynamics.hpp"

namespace topodyn {

/// The verdict slots of a PropertyProfile, in the documented output order
/// used by every serializer (CSV columns, JSON fields, CLI listings).
enum class Property : int {
  hypercyclic,
  hypertransitive,
  topologically_transitive,
  strongly_topologically_transitive,
  strongly_transitive_finite,
  mixing,
  supermixing,
  hypermixing,
  has_closed_invariant_subset,
  continuous,
  open_map,
  surjective,
  injective,
};

inline constexpr int kPropertyCount = 13;

inline constexpr std::array<Property, kPropertyCount> kPropertyOrder = {
    Property::hypercyclic,
    Property::hypertransitive,
    Property::topologically_transitive,
    Property::strongly_topologically_transitive,
    Property::strongly_transitive_finite,
    Property::mixing,
    Property::supermixing,
    Property::hypermixing,
    Property::has_closed_invariant_subset,
    Property::continuous,
    Property::open_map,
    Property::surjective,
    Property::injective,
};

/// Kebab-case name used by the CLI and serializers.
std::string_view property_name(Property p);
std::optional<Property> property_from_name(std::string_view name);

/// A small set of Property values (for search queries).
class PropertySet {
 public:
  constexpr PropertySet() = default;
  constexpr void add(Property p) { bits_ |= 1u << static_cast<int>(p); }
  constexpr bool contains(Property p) const {
    return (bits_ >> static_cast<int>(p)) & 1u;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool intersects(PropertySet other) const {
    return (bits_ & other.bits_) != 0;
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (Property p : kPropertyOrder) {
      if (contains(p)) fn(p);
    }
  }
  friend constexpr bool operator==(PropertySet, PropertySet) = default;

 private:
  std::uint16_t bits_ = 0;
};

struct OpenPair {
  SubsetMask u;
  SubsetMask v;
};

/// Full verdict vector for one system plus the evidence backing each
/// negative verdict (first counterexample in canonical mask order) and the
/// positive-side data (hypercyclic points, covering bound).
struct PropertyProfile {
  bool hypercyclic = false;
  bool hypertransitive = false;
  bool topologically_transitive = false;
  bool strongly_topologically_transitive = false;
  bool strongly_transitive_finite = false;
  bool mixing = false;
  bool supermixing = false;
  bool hypermixing = false;
  bool has_closed_invariant_subset = false;
  bool continuous = false;
  bool open_map = false;
  bool surjective = false;
  bool injective = false;

  /// Points with a dense forward orbit.
  SubsetMask hypercyclic_points;
  /// Least s covering the space by U | f(U) | ... | f^s(U), maximized over
  /// nonempty opens U; present iff strongly_transitive_finite holds.
  std::optional<int> strong_transitivity_bound;

  std::optional<OpenPair> transitivity_failure;
  std::optional<SubsetMask> strong_transitivity_failure;
  std::optional<OpenPair> mixing_failure;
  std::optional<SubsetMask> supermixing_failure;
  std::optional<SubsetMask> hypermixing_failure;
  /// Witness when has_closed_invariant_subset holds: the first nonempty
  /// proper closed set (in canonical order) carried into itself by the map.
  std::optional<SubsetMask> invariant_closed_set;

  bool get(Property p) const;
  /// The 13 verdicts packed in kPropertyOrder, bit 0 = hypercyclic.
  std::uint16_t verdict_bits() const;
};

/// Points whose forward orbit is dense.
SubsetMask hypercyclic_points(const DynSystem& sys);
bool is_hypercyclic(const DynSystem& sys);
/// Every point has a dense forward orbit.
bool is_hypertransitive(const DynSystem& sys);

/// First pair (U, V) of nonempty opens, in canonical scan order, such that
/// no forward image of U meets V. Empty when the system is topologically
/// transitive.
std::optional<OpenPair> find_transitivity_failure(const DynSystem& sys);
bool is_topologically_transitive(const DynSystem& sys);

/// First nonempty open U whose forward union misses part of the space.
std::optional<SubsetMask> find_strong_transitivity_failure(
    const DynSystem& sys);
bool is_strongly_topologically_transitive(const DynSystem& sys);

struct FiniteStrongTransitivity {
  bool holds = false;
  /// Present iff holds: max over nonempty opens U of the least s with
  /// U | f(U) | ... | f^s(U) covering the space.
  std::optional<int> bound;
  /// Present iff !holds: the first open whose forward union falls short.
  std::optional<SubsetMask> failure;
};

/// Finite-union form of strong transitivity. On finite spaces the boolean
/// always agrees with is_strongly_topologically_transitive.
FiniteStrongTransitivity strong_transitivity_with_bound(const DynSystem& sys);

/// First pair (U, V) such that f^n(U) misses V for infinitely many n, i.e.
/// some cycle snapshot of U's trajectory is disjoint from V.
std::optional<OpenPair> find_mixing_failure(const DynSystem& sys);
bool is_mixing(const DynSystem& sys);

/// First nonempty open whose liminf set is not dense.
std::optional<SubsetMask> find_supermixing_failure(const DynSystem& sys);
bool is_supermixing(const DynSystem& sys);

/// First nonempty open whose liminf set is not the whole space.
std::optional<SubsetMask> find_hypermixing_failure(const DynSystem& sys);
bool is_hypermixing(const DynSystem& sys);

/// The set of points y whose every neighborhood is eventually always met by
/// the forward images of every neighborhood of x. On finite spaces this
/// reduces to: every cycle snapshot of the minimal neighborhood of x meets
/// the minimal neighborhood of y.
SubsetMask jmix(const DynSystem& sys, int x);
/// Union of jmix(x) over the points of b.
SubsetMask jmix_of_set(const DynSystem& sys, SubsetMask b);

struct ClosedInvariantScan {
  bool found = false;
  std::optional<SubsetMask> witness;
};

/// Scans closed sets in canonical order for a nonempty proper one carried
/// into itself by the map.
ClosedInvariantScan find_closed_invariant_subset(const DynSystem& sys);

/// Raised by classify when the computed profile contradicts one of the
/// implications that provably hold for every system; indicates an engine
/// bug, never a property of the input.
class LatticeViolation : public std::logic_error {
 public:
  explicit LatticeViolation(const std::string& message);
};

/// Cross-checks the unconditional implication lattice on a finished profile
/// and throws LatticeViolation (with the offending system serialized) on
/// any breach.
void check_profile_lattice(const DynSystem& sys, const PropertyProfile& p);

/// Runs every decider and returns the checked profile.
PropertyProfile classify(const DynSystem& sys);

}  // namespace topodyn
