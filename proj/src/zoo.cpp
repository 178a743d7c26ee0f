#include "topodyn/zoo.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "parallel.hpp"
#include "topodyn/system_doc.hpp"

namespace topodyn {

CapExceeded::CapExceeded(const std::string& message)
    : std::invalid_argument(message) {}

UnsatisfiableQuery::UnsatisfiableQuery(const std::string& message)
    : std::invalid_argument(message) {}

int worker_count() {
  if (const char* env = std::getenv("TOPODYN_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && parsed >= 1 && parsed <= 256) {
      return static_cast<int>(parsed);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

MinNbhdFunction MinNbhdFunction::from_neighborhoods(
    int n, std::span<const SubsetMask> nbhds) {
  if (n < 1 || n > kMaxEnumPoints) {
    throw std::invalid_argument("neighborhood function needs 1..6 points");
  }
  if (static_cast<int>(nbhds.size()) != n) {
    throw std::invalid_argument("one neighborhood per point expected");
  }
  MinNbhdFunction fn;
  fn.n = n;
  const SubsetMask space = SubsetMask::universe(n);
  for (int x = 0; x < n; ++x) {
    if (!nbhds[static_cast<std::size_t>(x)].subset_of(space)) {
      throw std::invalid_argument("neighborhood uses points outside the space");
    }
    fn.nbhd[static_cast<std::size_t>(x)] = nbhds[static_cast<std::size_t>(x)];
  }
  if (!fn.is_reflexive()) {
    throw std::invalid_argument("neighborhood function must be reflexive");
  }
  if (!fn.is_transitive()) {
    throw std::invalid_argument("neighborhood function must be transitive");
  }
  return fn;
}

bool MinNbhdFunction::is_reflexive() const {
  for (int x = 0; x < n; ++x) {
    if (!nbhd[static_cast<std::size_t>(x)].contains(x)) return false;
  }
  return true;
}

bool MinNbhdFunction::is_transitive() const {
  for (int x = 0; x < n; ++x) {
    bool ok = true;
    nbhd[static_cast<std::size_t>(x)].for_each_point([&](int y) {
      if (!nbhd[static_cast<std::size_t>(y)].subset_of(
              nbhd[static_cast<std::size_t>(x)])) {
        ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

FiniteTopology MinNbhdFunction::to_topology() const {
  std::vector<SubsetMask> opens;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < subsets; ++bits) {
    const SubsetMask u{bits};
    bool up_closed = true;
    u.for_each_point([&](int x) {
      if (!nbhd[static_cast<std::size_t>(x)].subset_of(u)) up_closed = false;
    });
    if (up_closed) opens.push_back(u);
  }
  return FiniteTopology::validate(n, opens);
}

namespace {

/// Backtracking over neighborhood assignments: a candidate for point k is
/// checked against every earlier point in both directions, which is exactly
/// pairwise transitivity; at a full assignment the relation is therefore a
/// preorder, and every preorder is reached once.
void enumerate_nbhds(int n, int k, MinNbhdFunction& fn,
                     const std::function<void(const MinNbhdFunction&)>& emit) {
  if (k == n) {
    emit(fn);
    return;
  }
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < subsets; ++bits) {
    if (!((bits >> k) & 1u)) continue;  // reflexivity
    const SubsetMask candidate{bits};
    bool consistent = true;
    for (int j = 0; j < k && consistent; ++j) {
      const SubsetMask other = fn.nbhd[static_cast<std::size_t>(j)];
      if (candidate.contains(j) && !other.subset_of(candidate)) {
        consistent = false;
      }
      if (other.contains(k) && !candidate.subset_of(other)) {
        consistent = false;
      }
    }
    if (!consistent) continue;
    fn.nbhd[static_cast<std::size_t>(k)] = candidate;
    enumerate_nbhds(n, k + 1, fn, emit);
  }
}

void require_enum_range(int n, const char* what) {
  if (n < 1 || n > kMaxEnumPoints) {
    std::ostringstream out;
    out << what << " supports 1.." << kMaxEnumPoints << " points, got " << n;
    throw CapExceeded(out.str());
  }
}

}  // namespace

void for_each_min_nbhd_function(
    int n, const std::function<void(const MinNbhdFunction&)>& fn) {
  require_enum_range(n, "preorder enumeration");
  MinNbhdFunction current;
  current.n = n;
  enumerate_nbhds(n, 0, current, fn);
}

void for_each_topology(int n,
                       const std::function<void(const FiniteTopology&)>& fn) {
  for_each_min_nbhd_function(
      n, [&](const MinNbhdFunction& nbhds) { fn(nbhds.to_topology()); });
}

std::vector<FiniteTopology> enumerate_topologies(int n) {
  std::vector<FiniteTopology> result;
  for_each_topology(n,
                    [&](const FiniteTopology& topo) { result.push_back(topo); });
  return result;
}

std::vector<FiniteTopology> enumerate_topologies_family_filter(int n) {
  if (n < 1 || n > 4) {
    throw CapExceeded("family-filter generation scans 2^(2^n) candidates and "
                      "supports only 1..4 points");
  }
  const std::uint32_t subsets = std::uint32_t{1} << n;
  const std::uint64_t families = std::uint64_t{1} << subsets;
  std::vector<FiniteTopology> result;
  std::vector<SubsetMask> members;
  for (std::uint64_t family = 0; family < families; ++family) {
    if (!(family & 1u)) continue;  // empty set present
    if (!((family >> (subsets - 1)) & 1u)) continue;  // full space present
    members.clear();
    for (std::uint32_t s = 0; s < subsets; ++s) {
      if ((family >> s) & 1u) members.push_back(SubsetMask{s});
    }
    bool closed = true;
    for (std::size_t i = 0; i < members.size() && closed; ++i) {
      for (std::size_t j = i + 1; j < members.size() && closed; ++j) {
        const std::uint64_t u = (members[i] | members[j]).bits();
        const std::uint64_t w = (members[i] & members[j]).bits();
        if (!((family >> u) & 1u) || !((family >> w) & 1u)) closed = false;
      }
    }
    if (closed) result.push_back(FiniteTopology::validate(n, members));
  }
  return result;
}

std::uint64_t count_self_maps(int n) {
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(n);
  return count;
}

std::uint64_t family_signature(const FiniteTopology& topo) {
  if (topo.point_count() > kMaxEnumPoints) {
    throw CapExceeded("family signatures need 2^n to fit one word (n <= 6)");
  }
  std::uint64_t signature = 0;
  for (SubsetMask open : topo.opens()) {
    signature |= std::uint64_t{1} << open.bits();
  }
  return signature;
}

void for_each_system(
    int n, const std::function<void(const DynSystem&, std::uint32_t,
                                    std::uint64_t)>& fn) {
  require_enum_range(n, "system enumeration");
  const std::uint64_t maps = count_self_maps(n);
  std::uint32_t topo_index = 0;
  for_each_topology(n, [&](const FiniteTopology& topo) {
    const auto shared = std::make_shared<const FiniteTopology>(topo);
    for (std::uint64_t map_index = 0; map_index < maps; ++map_index) {
      fn(DynSystem(shared, SelfMap::from_index(n, map_index)), topo_index,
         map_index);
    }
    ++topo_index;
  });
}

DynSystem relabel(const DynSystem& sys, std::span<const int> perm) {
  const int n = sys.point_count();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("permutation size must match the point count");
  }
  std::vector<SubsetMask> opens;
  opens.reserve(sys.topology().opens().size());
  for (SubsetMask open : sys.topology().opens()) {
    SubsetMask image;
    open.for_each_point([&](int x) { image.add(perm[static_cast<std::size_t>(x)]); });
    opens.push_back(image);
  }
  std::vector<std::uint8_t> image(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    image[static_cast<std::size_t>(perm[static_cast<std::size_t>(x)])] =
        static_cast<std::uint8_t>(
            perm[static_cast<std::size_t>(sys.map().apply(x))]);
  }
  return DynSystem(FiniteTopology::validate(n, opens),
                   SelfMap(std::move(image)));
}

std::string CanonicalKey::to_string() const {
  std::ostringstream out;
  out << std::hex << topology_bits << '-' << map_bits;
  return out.str();
}

CanonicalKey canonical_key(const DynSystem& sys) {
  const int n = sys.point_count();
  if (n > kMaxEnumPoints) {
    throw CapExceeded("canonical keys are defined for 1..6 points");
  }
  std::array<int, kMaxEnumPoints> perm{};
  std::iota(perm.begin(), perm.begin() + n, 0);

  const auto opens = sys.topology().opens();
  CanonicalKey best;
  bool have_best = false;
  do {
    std::uint64_t topo_bits = 0;
    for (SubsetMask open : opens) {
      std::uint64_t relabeled = 0;
      open.for_each_point([&](int x) {
        relabeled |= std::uint64_t{1} << perm[static_cast<std::size_t>(x)];
      });
      topo_bits |= std::uint64_t{1} << relabeled;
    }
    // Pack the relabeled image table, 6 bits per point: point y of the
    // relabeled system is perm-preimage x, and maps to perm[f(x)].
    std::uint64_t map_bits = 0;
    for (int x = 0; x < n; ++x) {
      const int y = perm[static_cast<std::size_t>(x)];
      const int image = perm[static_cast<std::size_t>(sys.map().apply(x))];
      map_bits |= static_cast<std::uint64_t>(image) << (6 * y);
    }
    const CanonicalKey candidate{topo_bits, map_bits};
    if (!have_best || candidate < best) {
      best = candidate;
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.begin() + n));
  return best;
}

namespace {

AtlasRecord make_record(std::uint32_t topo_index, std::uint64_t map_index,
                        const std::shared_ptr<const FiniteTopology>& topo,
                        SelfMap map) {
  DynSystem sys(topo, std::move(map));
  AtlasRecord record{topo_index, map_index,  topo,
                     sys.map(),  classify(sys), canonical_key(sys)};
  return record;
}

}  // namespace

AtlasCounts build_atlas(int n, bool dedup,
                        const std::function<void(const AtlasRecord&)>& fn) {
  require_enum_range(n, "atlas construction");
  const std::uint64_t maps = count_self_maps(n);
  AtlasCounts counts;
  std::set<CanonicalKey> seen;
  std::uint32_t topo_index = 0;
  std::vector<std::optional<AtlasRecord>> block(
      static_cast<std::size_t>(maps));
  for_each_topology(n, [&](const FiniteTopology& topo) {
    const auto shared = std::make_shared<const FiniteTopology>(topo);
    // Classification parallelizes over the map index; emission below stays
    // in index order, so output is independent of the worker count.
    parallel_for_index(maps, [&](std::uint64_t map_index) {
      block[static_cast<std::size_t>(map_index)] = make_record(
          topo_index, map_index, shared, SelfMap::from_index(n, map_index));
    });
    for (const auto& record : block) {
      ++counts.systems;
      if (dedup && !seen.insert(record->key).second) continue;
      ++counts.emitted;
      fn(*record);
    }
    ++topo_index;
  });
  return counts;
}

std::vector<AtlasRecord> search(const SearchQuery& query) {
  if (query.required.intersects(query.forbidden)) {
    throw UnsatisfiableQuery(
        "a property cannot be both required and forbidden");
  }
  require_enum_range(query.n, "search");

  std::vector<AtlasRecord> results;
  std::set<CanonicalKey> seen;
  const std::uint64_t maps = count_self_maps(query.n);
  std::uint32_t topo_index = 0;
  bool done = false;

  std::vector<std::optional<AtlasRecord>> block(
      static_cast<std::size_t>(maps));
  for_each_topology(query.n, [&](const FiniteTopology& topo) {
    if (done) return;
    if (query.filter_no_isolated && topo.has_isolated_point()) {
      ++topo_index;
      return;
    }
    if (query.filter_hausdorff && !topo.is_hausdorff()) {
      ++topo_index;
      return;
    }
    if (query.filter_nontrivial && topo.is_trivial()) {
      ++topo_index;
      return;
    }
    const auto shared = std::make_shared<const FiniteTopology>(topo);
    parallel_for_index(maps, [&](std::uint64_t map_index) {
      block[static_cast<std::size_t>(map_index)].reset();
      DynSystem sys(shared, SelfMap::from_index(query.n, map_index));
      if (query.filter_continuous && !sys.is_continuous()) return;
      const PropertyProfile profile = classify(sys);
      bool match = true;
      query.required.for_each([&](Property p) {
        if (!profile.get(p)) match = false;
      });
      query.forbidden.for_each([&](Property p) {
        if (profile.get(p)) match = false;
      });
      if (!match) return;
      block[static_cast<std::size_t>(map_index)] =
          AtlasRecord{topo_index, map_index,      shared,
                      sys.map(),  profile,        canonical_key(sys)};
    });
    for (auto& candidate : block) {
      if (!candidate.has_value()) continue;
      if (query.dedup && !seen.insert(candidate->key).second) continue;
      results.push_back(std::move(*candidate));
      if (query.limit.has_value() && results.size() >= *query.limit) {
        done = true;
        break;
      }
    }
    ++topo_index;
  });
  return results;
}

HypermixingSweepReport sweep_hypermixing_absence(int n_min, int n_max) {
  HypermixingSweepReport report;
  report.n_min = n_min;
  report.n_max = n_max;
  for (int n = n_min; n <= n_max; ++n) {
    require_enum_range(n, "hypermixing sweep");
    const auto topologies = enumerate_topologies(n);
    const std::uint64_t maps = count_self_maps(n);

    struct TopoResult {
      std::uint64_t systems = 0;
      std::uint64_t nontrivial = 0;
      std::uint64_t indiscrete = 0;
      std::vector<std::string> violations;
      std::vector<std::string> coincidence_violations;
    };
    std::vector<TopoResult> slots(topologies.size());

    parallel_for_index(topologies.size(), [&](std::uint64_t t) {
      const auto shared =
          std::make_shared<const FiniteTopology>(topologies[t]);
      TopoResult& slot = slots[t];
      const bool trivial = shared->is_trivial();
      for (std::uint64_t m = 0; m < maps; ++m) {
        DynSystem sys(shared, SelfMap::from_index(n, m));
        ++slot.systems;
        if (trivial) {
          ++slot.indiscrete;
          if (is_hypermixing(sys) != sys.map().is_surjective()) {
            slot.coincidence_violations.push_back(
                serialize_system_document(with_default_names(sys)));
          }
        } else {
          ++slot.nontrivial;
          if (is_hypermixing(sys)) {
            slot.violations.push_back(
                serialize_system_document(with_default_names(sys)));
          }
        }
      }
    });

    for (const TopoResult& slot : slots) {
      report.systems_scanned += slot.systems;
      report.nontrivial_checked += slot.nontrivial;
      report.indiscrete_checked += slot.indiscrete;
      report.violations.insert(report.violations.end(),
                               slot.violations.begin(), slot.violations.end());
      report.coincidence_violations.insert(report.coincidence_violations.end(),
                                           slot.coincidence_violations.begin(),
                                           slot.coincidence_violations.end());
    }
  }
  return report;
}

IndiscreteCoincidenceReport check_indiscrete_hypermixing(int n_max) {
  IndiscreteCoincidenceReport report;
  report.n_max = std::min(n_max, kMaxEnumPoints);
  for (int n = 1; n <= report.n_max; ++n) {
    const auto topo = std::make_shared<const FiniteTopology>(
        FiniteTopology::validate(n, {}));
    const std::uint64_t maps = count_self_maps(n);
    for (std::uint64_t m = 0; m < maps; ++m) {
      DynSystem sys(topo, SelfMap::from_index(n, m));
      ++report.maps_checked;
      if (is_hypermixing(sys) != sys.map().is_surjective()) {
        report.violations.push_back(
            serialize_system_document(with_default_names(sys)));
      }
    }
  }
  return report;
}

}  // namespace topodyn
