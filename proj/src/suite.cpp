#include "topodyn/suite.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "topodyn/system_doc.hpp"

namespace topodyn {

namespace {

/// Per-system scratch shared by the invariant checks; jmix sets are
/// computed once on first use.
struct CheckContext {
  const DynSystem& sys;
  const PropertyProfile& p;
  bool no_isolated;
  bool trivial;
  bool hausdorff;
  bool has_nondense_open;
  std::optional<std::vector<SubsetMask>> jmix_cache;

  const std::vector<SubsetMask>& jmix_table() {
    if (!jmix_cache.has_value()) {
      jmix_cache.emplace();
      jmix_cache->reserve(static_cast<std::size_t>(sys.point_count()));
      for (int x = 0; x < sys.point_count(); ++x) {
        jmix_cache->push_back(jmix(sys, x));
      }
    }
    return *jmix_cache;
  }

  SubsetMask jmix_union(SubsetMask b) {
    SubsetMask result;
    const auto& table = jmix_table();
    b.for_each_point(
        [&](int x) { result |= table[static_cast<std::size_t>(x)]; });
    return result;
  }
};

struct InvariantDef {
  const char* name;
  bool (*hypothesis)(CheckContext&);
  /// Empty result = conclusion holds; otherwise a short failure detail.
  std::optional<std::string> (*check)(CheckContext&);
};

std::optional<std::string> pass() { return std::nullopt; }

std::optional<std::string> expect(bool ok, const char* detail) {
  if (ok) return std::nullopt;
  return std::string(detail);
}

bool powers_preserve(CheckContext& ctx, bool (*decide)(const DynSystem&),
                     int& failing_power) {
  for (int p = 2; p <= 5; ++p) {
    DynSystem powered(ctx.sys.topology_ptr(), ctx.sys.map().power(p));
    if (!decide(powered)) {
      failing_power = p;
      return false;
    }
  }
  return true;
}

const std::vector<InvariantDef>& invariant_table() {
  static const std::vector<InvariantDef> table = {
      {"hypermixing-implies-supermixing",
       [](CheckContext& c) { return c.p.hypermixing; },
       [](CheckContext& c) {
         return expect(c.p.supermixing, "liminf of some open is not dense");
       }},
      {"supermixing-implies-mixing",
       [](CheckContext& c) { return c.p.supermixing; },
       [](CheckContext& c) {
         return expect(c.p.mixing, "some open pair is eventually missed");
       }},
      {"mixing-implies-topologically-transitive",
       [](CheckContext& c) { return c.p.mixing; },
       [](CheckContext& c) {
         return expect(c.p.topologically_transitive,
                       "some open pair is never met");
       }},
      {"hypermixing-implies-strongly-topologically-transitive",
       [](CheckContext& c) { return c.p.hypermixing; },
       [](CheckContext& c) {
         return expect(c.p.strongly_topologically_transitive,
                       "some forward union falls short of the space");
       }},
      {"strongly-topologically-transitive-implies-topologically-transitive",
       [](CheckContext& c) { return c.p.strongly_topologically_transitive; },
       [](CheckContext& c) {
         return expect(c.p.topologically_transitive,
                       "some open pair is never met");
       }},
      {"hypertransitive-implies-hypercyclic",
       [](CheckContext& c) { return c.p.hypertransitive; },
       [](CheckContext& c) {
         return expect(c.p.hypercyclic, "no point has a dense orbit");
       }},
      {"hypertransitive-excludes-closed-invariant-subsets",
       [](CheckContext& c) { return c.p.hypertransitive; },
       [](CheckContext& c) {
         return expect(!c.p.has_closed_invariant_subset,
                       "a nonempty proper closed set is carried into itself");
       }},
      {"continuous-without-closed-invariant-subsets-implies-hypertransitive",
       [](CheckContext& c) {
         return c.p.continuous && !c.p.has_closed_invariant_subset;
       },
       [](CheckContext& c) {
         return expect(c.p.hypertransitive, "some orbit is not dense");
       }},
      {"hypercyclic-implies-transitive-without-isolated-points",
       [](CheckContext& c) { return c.no_isolated && c.p.hypercyclic; },
       [](CheckContext& c) {
         if (c.p.topologically_transitive) return pass();
         std::ostringstream out;
         out << "hypercyclic points "
             << debug_subset(c.p.hypercyclic_points)
             << " but the pair (U=" << debug_subset(c.p.transitivity_failure->u)
             << ", V=" << debug_subset(c.p.transitivity_failure->v)
             << ") is never met";
         return std::optional<std::string>(out.str());
       }},
      {"hypercyclic-points-dense-without-isolated-points",
       [](CheckContext& c) { return c.no_isolated && c.p.hypercyclic; },
       [](CheckContext& c) {
         if (c.sys.topology().is_dense(c.p.hypercyclic_points)) return pass();
         std::ostringstream out;
         out << "hypercyclic points " << debug_subset(c.p.hypercyclic_points)
             << " have closure "
             << debug_subset(
                    c.sys.topology().closure(c.p.hypercyclic_points));
         return std::optional<std::string>(out.str());
       }},
      {"continuous-transitive-implies-hypercyclic-without-isolated-points",
       [](CheckContext& c) {
         return c.p.continuous && c.p.topologically_transitive &&
                c.no_isolated;
       },
       [](CheckContext& c) {
         return expect(c.p.hypercyclic, "no point has a dense orbit");
       }},
      {"finite-strong-transitivity-coincides",
       [](CheckContext&) { return true; },
       [](CheckContext& c) {
         return expect(c.p.strongly_transitive_finite ==
                           c.p.strongly_topologically_transitive,
                       "finite-union and union forms disagree");
       }},
      {"no-hypermixing-on-nontrivial-topologies",
       [](CheckContext& c) { return !c.trivial; },
       [](CheckContext& c) {
         return expect(!c.p.hypermixing,
                       "hypermixing on a nontrivial topology");
       }},
      {"powers-preserve-supermixing",
       [](CheckContext& c) { return c.p.supermixing; },
       [](CheckContext& c) {
         int power = 0;
         if (powers_preserve(c, &is_supermixing, power)) return pass();
         std::ostringstream out;
         out << "power " << power << " is not supermixing";
         return std::optional<std::string>(out.str());
       }},
      {"powers-preserve-hypermixing",
       [](CheckContext& c) { return c.p.hypermixing; },
       [](CheckContext& c) {
         int power = 0;
         if (powers_preserve(c, &is_hypermixing, power)) return pass();
         std::ostringstream out;
         out << "power " << power << " is not hypermixing";
         return std::optional<std::string>(out.str());
       }},
      {"strong-transitivity-with-nondense-open-implies-surjective",
       [](CheckContext& c) {
         return c.has_nondense_open && c.p.strongly_topologically_transitive;
       },
       [](CheckContext& c) {
         return expect(c.p.surjective, "map is not onto");
       }},
      {"strong-transitivity-open-map-implies-surjective",
       [](CheckContext& c) {
         return c.p.open_map && c.p.strongly_topologically_transitive;
       },
       [](CheckContext& c) {
         return expect(c.p.surjective, "map is not onto");
       }},
      {"hypermixing-implies-surjective",
       [](CheckContext& c) { return c.p.hypermixing; },
       [](CheckContext& c) {
         return expect(c.p.surjective, "map is not onto");
       }},
      {"supermixing-implies-dense-range",
       [](CheckContext& c) { return c.p.supermixing; },
       [](CheckContext& c) {
         return expect(c.sys.topology().is_dense(c.sys.map().range()),
                       "range is not dense");
       }},
      {"hypermixing-with-nondense-open-implies-noninjective",
       [](CheckContext& c) { return c.has_nondense_open && c.p.hypermixing; },
       [](CheckContext& c) {
         return expect(!c.p.injective, "map is injective");
       }},
      {"continuous-supermixing-hausdorff-implies-surjective",
       [](CheckContext& c) {
         return c.p.continuous && c.p.supermixing && c.hausdorff;
       },
       [](CheckContext& c) {
         return expect(c.p.surjective, "map is not onto");
       }},
      {"mixing-iff-jmix-meets-hypercyclic-points",
       [](CheckContext& c) {
         return c.no_isolated && c.p.continuous && c.p.hypercyclic;
       },
       [](CheckContext& c) {
         const SubsetMask hc = c.p.hypercyclic_points;
         const bool meets = c.jmix_union(hc).intersects(hc);
         return expect(c.p.mixing == meets,
                       "mixing disagrees with jmix meeting the hypercyclic "
                       "points");
       }},
      {"mixing-iff-jmix-nonempty-under-hypertransitivity",
       [](CheckContext& c) {
         return c.no_isolated && c.p.continuous && c.p.hypertransitive;
       },
       [](CheckContext& c) {
         const SubsetMask all = c.jmix_union(c.sys.topology().universe());
         if (c.p.mixing != all.nonempty()) {
           return expect(false, "mixing disagrees with jmix being nonempty");
         }
         return expect(c.p.mixing == c.sys.topology().is_dense(all),
                       "mixing disagrees with jmix being dense");
       }},
      {"supermixing-iff-liminf-nonempty-under-hypertransitivity",
       [](CheckContext& c) { return c.p.continuous && c.p.hypertransitive; },
       [](CheckContext& c) {
         bool all_nonempty = true;
         for (SubsetMask u : c.sys.topology().opens()) {
           if (u.is_empty()) continue;
           if (liminf_set(c.sys.map(), u).is_empty()) {
             all_nonempty = false;
             break;
           }
         }
         return expect(c.p.supermixing == all_nonempty,
                       "supermixing disagrees with all liminf sets being "
                       "nonempty");
       }},
      {"jmix-sets-are-closed",
       [](CheckContext& c) { return c.p.continuous; },
       [](CheckContext& c) {
         const auto& table = c.jmix_table();
         for (int x = 0; x < c.sys.point_count(); ++x) {
           const SubsetMask j = table[static_cast<std::size_t>(x)];
           if (c.sys.topology().closure(j) != j) {
             std::ostringstream out;
             out << "jmix of point " << x << " is not closed";
             return std::optional<std::string>(out.str());
           }
         }
         return pass();
       }},
      {"jmix-sets-are-forward-invariant",
       [](CheckContext& c) { return c.p.continuous; },
       [](CheckContext& c) {
         const auto& table = c.jmix_table();
         for (int x = 0; x < c.sys.point_count(); ++x) {
           const SubsetMask j = table[static_cast<std::size_t>(x)];
           if (!c.sys.map().image_of(j).subset_of(j)) {
             std::ostringstream out;
             out << "jmix of point " << x << " is not carried into itself";
             return std::optional<std::string>(out.str());
           }
         }
         return pass();
       }},
      {"mixing-iff-all-jmix-full",
       [](CheckContext& c) { return c.p.continuous; },
       [](CheckContext& c) {
         const auto& table = c.jmix_table();
         bool all_full = true;
         for (const SubsetMask j : table) {
           if (j != c.sys.topology().universe()) {
             all_full = false;
             break;
           }
         }
         return expect(c.p.mixing == all_full,
                       "mixing disagrees with every jmix being the space");
       }},
  };
  return table;
}

struct RowAccum {
  std::uint64_t tested = 0;
  std::uint64_t skipped = 0;
  std::vector<std::string> violations;
};

void check_system(const DynSystem& sys, std::vector<RowAccum>& rows) {
  const PropertyProfile profile = classify(sys);
  bool nondense_open = false;
  for (SubsetMask u : sys.topology().opens()) {
    if (u.nonempty() && !sys.topology().is_dense(u)) {
      nondense_open = true;
      break;
    }
  }
  CheckContext ctx{sys,
                   profile,
                   !sys.topology().has_isolated_point(),
                   sys.topology().is_trivial(),
                   sys.topology().is_hausdorff(),
                   nondense_open,
                   std::nullopt};
  const auto& table = invariant_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!table[i].hypothesis(ctx)) {
      ++rows[i].skipped;
      continue;
    }
    ++rows[i].tested;
    if (auto detail = table[i].check(ctx)) {
      rows[i].violations.push_back(
          serialize_system_document(with_default_names(sys)) + " -- " +
          *detail);
    }
  }
}

void merge_rows(std::vector<RowAccum>& into, std::vector<RowAccum>& from) {
  for (std::size_t i = 0; i < into.size(); ++i) {
    into[i].tested += from[i].tested;
    into[i].skipped += from[i].skipped;
    auto& dst = into[i].violations;
    auto& src = from[i].violations;
    dst.insert(dst.end(), std::make_move_iterator(src.begin()),
               std::make_move_iterator(src.end()));
  }
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % range;
  std::uint64_t value = rng();
  while (value >= limit) value = rng();
  return value % range;
}

}  // namespace

std::uint64_t InvariantSuiteReport::total_violations() const {
  std::uint64_t total = 0;
  for (const InvariantOutcome& row : invariants) {
    total += row.violations.size();
  }
  return total;
}

std::vector<std::string> invariant_names() {
  std::vector<std::string> names;
  for (const InvariantDef& def : invariant_table()) {
    names.emplace_back(def.name);
  }
  return names;
}

InvariantSuiteReport run_invariant_suite(const InvariantSuiteConfig& config) {
  const auto& table = invariant_table();
  std::vector<RowAccum> totals(table.size());
  InvariantSuiteReport report;
  report.config = config;

  // Exhaustive part: every topology gets a result slot; slots are merged in
  // enumeration order so the report is independent of thread scheduling.
  for (int n = 1; n <= std::min(config.exhaustive_max, kMaxEnumPoints); ++n) {
    const auto topologies = enumerate_topologies(n);
    const std::uint64_t maps = count_self_maps(n);
    std::vector<std::vector<RowAccum>> slots(
        topologies.size(), std::vector<RowAccum>(table.size()));
    parallel_for_index(topologies.size(), [&](std::uint64_t t) {
      const auto shared =
          std::make_shared<const FiniteTopology>(topologies[t]);
      for (std::uint64_t m = 0; m < maps; ++m) {
        check_system(DynSystem(shared, SelfMap::from_index(n, m)), slots[t]);
      }
    });
    for (auto& slot : slots) merge_rows(totals, slot);
    report.coverage.emplace_back(n, topologies.size() * maps);
  }

  // Sampled part: draws are fixed up front from the seed, then checked in
  // parallel with one slot per draw.
  std::vector<int> sample_points = config.sample_points;
  std::sort(sample_points.begin(), sample_points.end());
  sample_points.erase(
      std::remove_if(sample_points.begin(), sample_points.end(),
                     [&](int n) {
                       return n <= config.exhaustive_max || n > kMaxEnumPoints;
                     }),
      sample_points.end());

  if (!sample_points.empty() && config.sample_budget > 0) {
    std::mt19937_64 rng(config.seed);
    const std::uint64_t share =
        config.sample_budget / sample_points.size();
    const std::uint64_t remainder =
        config.sample_budget % sample_points.size();
    for (std::size_t pass = 0; pass < sample_points.size(); ++pass) {
      const int n = sample_points[pass];
      const std::uint64_t budget = share + (pass < remainder ? 1 : 0);
      const auto topologies = enumerate_topologies(n);
      const std::uint64_t maps = count_self_maps(n);

      std::vector<std::pair<std::uint64_t, std::uint64_t>> draws;
      draws.reserve(static_cast<std::size_t>(budget));
      for (std::uint64_t i = 0; i < budget; ++i) {
        draws.emplace_back(bounded_draw(rng, topologies.size()),
                           bounded_draw(rng, maps));
      }

      std::vector<std::vector<RowAccum>> slots(
          draws.size(), std::vector<RowAccum>(table.size()));
      parallel_for_index(draws.size(), [&](std::uint64_t i) {
        const auto& [topo_index, map_index] = draws[i];
        const auto shared = std::make_shared<const FiniteTopology>(
            topologies[static_cast<std::size_t>(topo_index)]);
        check_system(DynSystem(shared, SelfMap::from_index(n, map_index)),
                     slots[i]);
      });
      for (auto& slot : slots) merge_rows(totals, slot);
      report.coverage.emplace_back(n, budget);
    }
  }

  report.invariants.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    report.invariants.push_back(InvariantOutcome{
        std::string(table[i].name), totals[i].tested, totals[i].skipped,
        std::move(totals[i].violations)});
  }
  return report;
}

}  // namespace topodyn
