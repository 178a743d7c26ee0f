#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "topodyn/topology.hpp"

using namespace topodyn;

namespace {

// Opens {}, {a,b}, X on three points.
FiniteTopology three_chain() { return FiniteTopology::validate(3, {0, 3, 7}); }

// Opens {}, {a}, {b,c}, X on three points.
FiniteTopology three_split() {
  return FiniteTopology::validate(3, {0, 1, 6, 7});
}

}  // namespace

TEST_CASE("subset masks behave as sets") {
  const SubsetMask empty = SubsetMask::empty_set();
  const SubsetMask full = SubsetMask::universe(3);
  CHECK(empty.is_empty());
  CHECK(full.bits() == 7);
  CHECK(full.size() == 3);
  CHECK(SubsetMask::universe(64).size() == 64);

  SubsetMask s = SubsetMask::singleton(0);
  s.add(2);
  CHECK(s.bits() == 5);
  CHECK(s.contains(0));
  CHECK(!s.contains(1));
  CHECK(s.size() == 2);
  CHECK(s.subset_of(full));
  CHECK(!full.subset_of(s));
  CHECK(s.intersects(SubsetMask::singleton(2)));
  CHECK(!s.intersects(SubsetMask::singleton(1)));

  CHECK((s | SubsetMask::singleton(1)) == full);
  CHECK((s & full) == s);
  CHECK((full - s) == SubsetMask::singleton(1));
  CHECK(s.complement_in(3) == SubsetMask::singleton(1));

  s.remove(2);
  CHECK(s == SubsetMask::singleton(0));
  CHECK(s.first_point() == 0);
  CHECK(empty.first_point() == -1);
}

TEST_CASE("for_each_point visits points in ascending order") {
  SubsetMask s(0b101101);
  std::vector<int> seen;
  s.for_each_point([&](int x) { seen.push_back(x); });
  CHECK(seen == std::vector<int>{0, 2, 3, 5});
}

TEST_CASE("subset order is numeric, so subsets never sort above supersets") {
  // A proper subset has a strictly smaller mask value, which is what makes
  // ascending scans meet inclusion-minimal witnesses first.
  for (std::uint64_t small = 0; small < 16; ++small) {
    for (std::uint64_t large = 0; large < 16; ++large) {
      if (SubsetMask(small).subset_of(SubsetMask(large))) {
        CHECK(small <= large);
      }
    }
  }
}

TEST_CASE("validation accepts real topologies and canonicalizes") {
  const FiniteTopology topo = three_chain();
  CHECK(topo.point_count() == 3);
  CHECK(topo.opens().size() == 3);
  CHECK(topo.opens()[0] == SubsetMask::empty_set());
  CHECK(topo.opens()[1] == SubsetMask(3));
  CHECK(topo.opens()[2] == SubsetMask(7));

  // The empty set and full space may be left out; duplicates are dropped.
  const FiniteTopology same = FiniteTopology::validate(3, {3, 3});
  CHECK(same == topo);

  // Canonical order is ascending by mask value.
  const FiniteTopology discrete =
      FiniteTopology::validate(2, {0, 1, 2, 3});
  for (std::size_t i = 1; i < discrete.opens().size(); ++i) {
    CHECK(discrete.opens()[i - 1].bits() < discrete.opens()[i].bits());
  }
}

TEST_CASE("validation rejects families that are not topologies") {
  CHECK_THROWS_AS(FiniteTopology::validate(0, {0}), TopologyError);
  CHECK_THROWS_AS(FiniteTopology::validate(65, {0}), TopologyError);
  CHECK_THROWS_AS(FiniteTopology::validate(2, {0b100}), TopologyError);

  // {a} and {b} but no {a,b}: the first violating pair is named.
  try {
    FiniteTopology::validate(3, {0, 1, 2, 7});
    FAIL("expected TopologyError");
  } catch (const TopologyError& error) {
    CHECK(error.defect() == TopologyDefect::not_union_closed);
    CHECK(error.first() == SubsetMask(1));
    CHECK(error.second() == SubsetMask(2));
    CHECK(std::string(error.what()).find("NotUnionClosed") !=
          std::string::npos);
  }

  // {a,b} and {b,c} without {b}: intersection closure fails.
  try {
    FiniteTopology::validate(3, {0, 3, 6, 7});
    FAIL("expected TopologyError");
  } catch (const TopologyError& error) {
    CHECK(error.defect() == TopologyDefect::not_intersection_closed);
    CHECK(error.first() == SubsetMask(3));
    CHECK(error.second() == SubsetMask(6));
  }
}

TEST_CASE("closure and interior on a chain topology") {
  const FiniteTopology topo = three_chain();
  // Closed sets are {}, {c}, X.
  CHECK(topo.closed_sets().size() == 3);
  CHECK(topo.is_closed(SubsetMask(4)));
  CHECK(!topo.is_closed(SubsetMask(3)));

  CHECK(topo.closure(SubsetMask::singleton(2)) == SubsetMask(4));
  CHECK(topo.closure(SubsetMask::singleton(0)) == SubsetMask(7));
  CHECK(topo.closure(SubsetMask::empty_set()) == SubsetMask::empty_set());

  CHECK(topo.interior(SubsetMask(7)) == SubsetMask(7));
  CHECK(topo.interior(SubsetMask(3)) == SubsetMask(3));
  CHECK(topo.interior(SubsetMask(5)) == SubsetMask::empty_set());
  CHECK(topo.interior(SubsetMask(4)) == SubsetMask::empty_set());

  CHECK(topo.is_dense(SubsetMask::singleton(0)));
  CHECK(topo.is_dense(SubsetMask(3)));
  CHECK(!topo.is_dense(SubsetMask(4)));
}

TEST_CASE("closure operator laws hold on every three-point topology") {
  // Independent mini-generator: filter all 2^8 subset families over the
  // 8 subsets of a 3-point set for union/intersection closure.
  int valid = 0;
  for (int family = 0; family < 256; ++family) {
    // Only families already containing {} and X count, so the tally
    // matches the labeled-topology count.
    if ((family & 1) == 0 || ((family >> 7) & 1) == 0) continue;
    std::vector<SubsetMask> opens;
    for (std::uint64_t s = 0; s < 8; ++s) {
      if ((family >> s) & 1) opens.emplace_back(s);
    }
    try {
      const FiniteTopology topo = FiniteTopology::validate(3, opens);
      ++valid;
      for (std::uint64_t s = 0; s < 8; ++s) {
        const SubsetMask sub(s);
        const SubsetMask closed = topo.closure(sub);
        CHECK(sub.subset_of(closed));
        CHECK(topo.closure(closed) == closed);
        CHECK(topo.is_closed(closed));
        CHECK(topo.interior(sub) ==
              topo.closure(sub.complement_in(3)).complement_in(3));
      }
    } catch (const TopologyError&) {
    }
  }
  CHECK(valid == 29);
}

TEST_CASE("minimal neighborhoods and point closures") {
  const FiniteTopology topo = three_chain();
  CHECK(topo.minimal_neighborhood(0) == SubsetMask(3));
  CHECK(topo.minimal_neighborhood(1) == SubsetMask(3));
  CHECK(topo.minimal_neighborhood(2) == SubsetMask(7));
  CHECK(topo.point_closure(0) == SubsetMask(7));
  CHECK(topo.point_closure(2) == SubsetMask(4));

  const FiniteTopology split = three_split();
  CHECK(split.minimal_neighborhood(0) == SubsetMask(1));
  CHECK(split.minimal_neighborhood(1) == SubsetMask(6));
  CHECK(split.minimal_neighborhood(2) == SubsetMask(6));
}

TEST_CASE("isolated points are the open singletons") {
  CHECK(three_chain().isolated_points() == SubsetMask::empty_set());
  CHECK(!three_chain().has_isolated_point());

  CHECK(three_split().isolated_points() == SubsetMask::singleton(0));
  CHECK(three_split().has_isolated_point());

  const FiniteTopology discrete = FiniteTopology::validate(2, {0, 1, 2, 3});
  CHECK(discrete.isolated_points() == SubsetMask::universe(2));
}

TEST_CASE("discrete, trivial, and hausdorff classification") {
  const FiniteTopology discrete = FiniteTopology::validate(2, {0, 1, 2, 3});
  CHECK(discrete.is_discrete());
  CHECK(!discrete.is_trivial());
  CHECK(discrete.is_hausdorff());

  const FiniteTopology indiscrete = FiniteTopology::validate(3, {0, 7});
  CHECK(!indiscrete.is_discrete());
  CHECK(indiscrete.is_trivial());
  CHECK(!indiscrete.is_hausdorff());

  CHECK(!three_chain().is_hausdorff());

  const FiniteTopology point = FiniteTopology::validate(1, {0, 1});
  CHECK(point.is_discrete());
  CHECK(point.is_trivial());
  CHECK(point.is_hausdorff());
}

TEST_CASE("debug formatting uses brace notation") {
  CHECK(debug_subset(SubsetMask::empty_set()) == "{}");
  CHECK(debug_subset(SubsetMask(5)) == "{a,c}");
}
