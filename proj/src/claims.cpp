#include "topodyn/claims.hpp"

#include <utility>

namespace topodyn {

namespace {

NamedSystem three_point_system(std::initializer_list<std::uint64_t> opens,
                               std::vector<std::uint8_t> image) {
  return NamedSystem{{"a", "b", "c"},
                     DynSystem(FiniteTopology::validate(3, opens),
                               SelfMap(std::move(image)))};
}

ReferenceClaim separation(std::string id, std::string summary,
                          NamedSystem system,
                          std::vector<ClaimExpectation> expectations) {
  return ReferenceClaim{std::move(id), std::move(summary), std::move(system),
                        std::move(expectations), std::string()};
}

}  // namespace

const std::vector<ReferenceClaim>& reference_claims() {
  static const std::vector<ReferenceClaim> claims = [] {
    std::vector<ReferenceClaim> out;

    // Opens {}, {a,b}, {a,b,c}; constant map onto c. The forward union of
    // any nonempty open reaches the whole space in one step, but {a,b}
    // eventually leaves {a,b} for good.
    out.push_back(separation(
        "strong-transitive-not-mixing",
        "strongly topologically transitive yet not mixing",
        three_point_system({0, 3, 7}, {2, 2, 2}),
        {{Property::strongly_topologically_transitive, true},
         {Property::mixing, false}}));

    // Same opens; a and c feed b, b stays put. Every trajectory settles
    // inside {a,b}, so every open pair is eventually met, yet the forward
    // union of {a,b} never picks up c.
    out.push_back(separation(
        "mixing-not-strong-transitive",
        "mixing yet not strongly topologically transitive",
        three_point_system({0, 3, 7}, {1, 1, 0}),
        {{Property::mixing, true},
         {Property::strongly_topologically_transitive, false}}));

    // Same opens; the three points cycle. Every snapshot of {a,b} keeps two
    // points and so meets every nonempty open, but the snapshots share no
    // common point.
    out.push_back(separation(
        "mixing-not-supermixing", "mixing yet not supermixing",
        three_point_system({0, 3, 7}, {1, 2, 0}),
        {{Property::mixing, true}, {Property::supermixing, false}}));

    // Same opens; a is fixed while b and c swap. The trajectory of {a,b}
    // alternates between {a,b} and {a,c}, settling on the dense core {a}
    // without ever covering the space.
    out.push_back(separation(
        "supermixing-not-hypermixing", "supermixing yet not hypermixing",
        three_point_system({0, 3, 7}, {0, 2, 1}),
        {{Property::supermixing, true}, {Property::hypermixing, false}}));

    // Opens {}, {a}, {b,c}, {a,b,c}; a and b swap, c feeds a. Every orbit
    // visits both a and b, so every orbit is dense, yet {a} and {b,c} are
    // missed on alternate steps forever.
    out.push_back(separation(
        "hypertransitive-not-mixing",
        "continuous and hypertransitive yet not mixing",
        three_point_system({0, 1, 6, 7}, {1, 0, 0}),
        {{Property::continuous, true},
         {Property::hypertransitive, true},
         {Property::hypercyclic, true},
         {Property::mixing, false},
         {Property::supermixing, false}}));

    // Opens {}, {a}, {a,b}, {a,b,c}; a is fixed and b, c collapse onto c.
    // Every liminf set contains a point of closure {a,b,c} or the dense
    // point a itself, yet the orbit of c never reaches the open {a}.
    out.push_back(separation(
        "supermixing-not-hypertransitive",
        "continuous and supermixing yet not hypertransitive",
        three_point_system({0, 1, 3, 7}, {0, 2, 2}),
        {{Property::continuous, true},
         {Property::supermixing, true},
         {Property::hypertransitive, false}}));

    // The successor shift on the integers under the topology generated by
    // the upward rays. Lives on an infinite space, so the finite engine
    // cannot decide it.
    out.push_back(ReferenceClaim{
        "shift-on-integers",
        "successor shift on the integers is strongly topologically "
        "transitive",
        std::nullopt,
        {},
        "infinite space — not machine-checked"});

    return out;
  }();
  return claims;
}

bool ClaimCheckReport::all_passed() const {
  for (const ClaimResult& result : results) {
    if (!result.passed()) return false;
  }
  return true;
}

ClaimResult check_claim(const ReferenceClaim& claim) {
  ClaimResult result;
  result.id = claim.id;
  result.checkable = claim.checkable();
  if (claim.checkable()) {
    const PropertyProfile profile = classify(claim.system->system);
    for (const ClaimExpectation& expectation : claim.expectations) {
      const bool observed = profile.get(expectation.property);
      if (observed != expectation.expected) {
        std::string note(property_name(expectation.property));
        note += ": expected ";
        note += expectation.expected ? "true" : "false";
        note += ", observed ";
        note += observed ? "true" : "false";
        result.mismatches.push_back(std::move(note));
      }
    }
  }
  return result;
}

ClaimCheckReport check_reference_claims() {
  ClaimCheckReport report;
  for (const ReferenceClaim& claim : reference_claims()) {
    report.results.push_back(check_claim(claim));
  }
  return report;
}

}  // namespace topodyn
