#include "topodyn/properties.hpp"

#include <sstream>

#include "topodyn/system_doc.hpp"

namespace topodyn {

namespace {

constexpr std::array<std::string_view, kPropertyCount> kPropertyNames = {
    "hypercyclic",
    "hypertransitive",
    "topologically-transitive",
    "strongly-topologically-transitive",
    "strongly-transitive-finite",
    "mixing",
    "supermixing",
    "hypermixing",
    "has-closed-invariant-subset",
    "continuous",
    "open-map",
    "surjective",
    "injective",
};

}  // namespace

std::string_view property_name(Property p) {
  return kPropertyNames[static_cast<std::size_t>(p)];
}

std::optional<Property> property_from_name(std::string_view name) {
  for (int i = 0; i < kPropertyCount; ++i) {
    if (kPropertyNames[static_cast<std::size_t>(i)] == name) {
      return static_cast<Property>(i);
    }
  }
  return std::nullopt;
}

bool PropertyProfile::get(Property p) const {
  switch (p) {
    case Property::hypercyclic:
      return hypercyclic;
    case Property::hypertransitive:
      return hypertransitive;
    case Property::topologically_transitive:
      return topologically_transitive;
    case Property::strongly_topologically_transitive:
      return strongly_topologically_transitive;
    case Property::strongly_transitive_finite:
      return strongly_transitive_finite;
    case Property::mixing:
      return mixing;
    case Property::supermixing:
      return supermixing;
    case Property::hypermixing:
      return hypermixing;
    case Property::has_closed_invariant_subset:
      return has_closed_invariant_subset;
    case Property::continuous:
      return continuous;
    case Property::open_map:
      return open_map;
    case Property::surjective:
      return surjective;
    case Property::injective:
      return injective;
  }
  return false;
}

std::uint16_t PropertyProfile::verdict_bits() const {
  std::uint16_t bits = 0;
  for (int i = 0; i < kPropertyCount; ++i) {
    if (get(static_cast<Property>(i))) bits |= static_cast<std::uint16_t>(1u << i);
  }
  return bits;
}

SubsetMask hypercyclic_points(const DynSystem& sys) {
  SubsetMask result;
  const int n = sys.point_count();
  for (int x = 0; x < n; ++x) {
    if (sys.topology().is_dense(sys.map().orbit(x))) result.add(x);
  }
  return result;
}

bool is_hypercyclic(const DynSystem& sys) {
  return hypercyclic_points(sys).nonempty();
}

bool is_hypertransitive(const DynSystem& sys) {
  return hypercyclic_points(sys) == sys.topology().universe();
}

std::optional<OpenPair> find_transitivity_failure(const DynSystem& sys) {
  // Some forward image of U meets V exactly when the forward union of U
  // meets V, so one stabilized union per U answers every V.
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    const SubsetMask reach = forward_union(sys.map(), u);
    for (SubsetMask v : sys.topology().opens()) {
      if (v.is_empty()) continue;
      if (!reach.intersects(v)) return OpenPair{u, v};
    }
  }
  return std::nullopt;
}

bool is_topologically_transitive(const DynSystem& sys) {
  return !find_transitivity_failure(sys).has_value();
}

std::optional<SubsetMask> find_strong_transitivity_failure(
    const DynSystem& sys) {
  const SubsetMask space = sys.topology().universe();
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    if (forward_union(sys.map(), u) != space) return u;
  }
  return std::nullopt;
}

bool is_strongly_topologically_transitive(const DynSystem& sys) {
  return !find_strong_transitivity_failure(sys).has_value();
}

FiniteStrongTransitivity strong_transitivity_with_bound(const DynSystem& sys) {
  FiniteStrongTransitivity result;
  int bound = 0;
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    const ForwardUnion fu = forward_union_detail(sys.map(), u);
    if (!fu.steps_to_cover.has_value()) {
      result.holds = false;
      result.bound.reset();
      result.failure = u;
      return result;
    }
    if (*fu.steps_to_cover > bound) bound = *fu.steps_to_cover;
  }
  result.holds = true;
  result.bound = bound;
  return result;
}

std::optional<OpenPair> find_mixing_failure(const DynSystem& sys) {
  // f^n(U) meets V for all large n exactly when every cycle snapshot of U's
  // trajectory meets V.
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    const SetTrajectory traj = trajectory(sys.map(), u);
    for (SubsetMask v : sys.topology().opens()) {
      if (v.is_empty()) continue;
      for (SubsetMask snapshot : traj.cycle()) {
        if (!snapshot.intersects(v)) return OpenPair{u, v};
      }
    }
  }
  return std::nullopt;
}

bool is_mixing(const DynSystem& sys) {
  return !find_mixing_failure(sys).has_value();
}

std::optional<SubsetMask> find_supermixing_failure(const DynSystem& sys) {
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    if (!sys.topology().is_dense(liminf_set(sys.map(), u))) return u;
  }
  return std::nullopt;
}

bool is_supermixing(const DynSystem& sys) {
  return !find_supermixing_failure(sys).has_value();
}

std::optional<SubsetMask> find_hypermixing_failure(const DynSystem& sys) {
  const SubsetMask space = sys.topology().universe();
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    if (liminf_set(sys.map(), u) != space) return u;
  }
  return std::nullopt;
}

bool is_hypermixing(const DynSystem& sys) {
  return !find_hypermixing_failure(sys).has_value();
}

SubsetMask jmix(const DynSystem& sys, int x) {
  // Convergence x_k -> x on a finite space means the x_k eventually stay in
  // the minimal neighborhood of x, so only minimal neighborhoods matter on
  // both sides: y qualifies exactly when every cycle snapshot of the
  // trajectory of min_nbhd(x) meets min_nbhd(y).
  const SetTrajectory traj =
      trajectory(sys.map(), sys.topology().minimal_neighborhood(x));
  SubsetMask result;
  const int n = sys.point_count();
  for (int y = 0; y < n; ++y) {
    const SubsetMask target = sys.topology().minimal_neighborhood(y);
    bool always = true;
    for (SubsetMask snapshot : traj.cycle()) {
      if (!snapshot.intersects(target)) {
        always = false;
        break;
      }
    }
    if (always) result.add(y);
  }
  return result;
}

SubsetMask jmix_of_set(const DynSystem& sys, SubsetMask b) {
  SubsetMask result;
  b.for_each_point([&](int x) { result |= jmix(sys, x); });
  return result;
}

ClosedInvariantScan find_closed_invariant_subset(const DynSystem& sys) {
  ClosedInvariantScan scan;
  const SubsetMask space = sys.topology().universe();
  for (SubsetMask closed : sys.topology().closed_sets()) {
    if (closed.is_empty() || closed == space) continue;
    if (sys.map().image_of(closed).subset_of(closed)) {
      scan.found = true;
      scan.witness = closed;
      return scan;
    }
  }
  return scan;
}

LatticeViolation::LatticeViolation(const std::string& message)
    : std::logic_error(message) {}

void check_profile_lattice(const DynSystem& sys, const PropertyProfile& p) {
  const auto fail = [&](std::string_view rule) {
    std::ostringstream out;
    out << "implication lattice violated (" << rule
        << ") on system: " << serialize_system_document(with_default_names(sys));
    throw LatticeViolation(out.str());
  };

  if (p.hypermixing && !p.supermixing) fail("hypermixing => supermixing");
  if (p.supermixing && !p.mixing) fail("supermixing => mixing");
  if (p.mixing && !p.topologically_transitive) {
    fail("mixing => topologically-transitive");
  }
  if (p.hypermixing && !p.strongly_topologically_transitive) {
    fail("hypermixing => strongly-topologically-transitive");
  }
  if (p.strongly_topologically_transitive && !p.topologically_transitive) {
    fail("strongly-topologically-transitive => topologically-transitive");
  }
  if (p.hypertransitive && !p.hypercyclic) {
    fail("hypertransitive => hypercyclic");
  }
  if (p.hypertransitive && p.has_closed_invariant_subset) {
    fail("hypertransitive excludes closed invariant subsets");
  }
  if (p.continuous && !p.has_closed_invariant_subset && !p.hypertransitive) {
    fail("continuous without closed invariant subsets => hypertransitive");
  }
  if (p.strongly_transitive_finite != p.strongly_topologically_transitive) {
    fail("finite-union strong transitivity coincides on finite spaces");
  }
  if (p.strongly_transitive_finite != p.strong_transitivity_bound.has_value()) {
    fail("covering bound present exactly when strong transitivity holds");
  }
}

PropertyProfile classify(const DynSystem& sys) {
  PropertyProfile p;

  p.hypercyclic_points = hypercyclic_points(sys);
  p.hypercyclic = p.hypercyclic_points.nonempty();
  p.hypertransitive = p.hypercyclic_points == sys.topology().universe();

  p.transitivity_failure = find_transitivity_failure(sys);
  p.topologically_transitive = !p.transitivity_failure.has_value();

  const FiniteStrongTransitivity strong = strong_transitivity_with_bound(sys);
  p.strongly_transitive_finite = strong.holds;
  p.strong_transitivity_bound = strong.bound;
  p.strong_transitivity_failure = strong.failure;
  p.strongly_topologically_transitive =
      !find_strong_transitivity_failure(sys).has_value();

  p.mixing_failure = find_mixing_failure(sys);
  p.mixing = !p.mixing_failure.has_value();

  p.supermixing_failure = find_supermixing_failure(sys);
  p.supermixing = !p.supermixing_failure.has_value();

  p.hypermixing_failure = find_hypermixing_failure(sys);
  p.hypermixing = !p.hypermixing_failure.has_value();

  const ClosedInvariantScan scan = find_closed_invariant_subset(sys);
  p.has_closed_invariant_subset = scan.found;
  p.invariant_closed_set = scan.witness;

  p.continuous = sys.is_continuous();
  p.open_map = sys.is_open_map();
  p.surjective = sys.map().is_surjective();
  p.injective = sys.map().is_injective();

  check_profile_lattice(sys, p);
  return p;
}

}  // namespace topodyn
