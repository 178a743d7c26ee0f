#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "naive_oracles.hpp"
#include "topodyn/dynamics.hpp"

using namespace topodyn;
using namespace topodyn::testing;

namespace {

SelfMap three_cycle() { return SelfMap({1, 2, 0}); }       // a->b->c->a
SelfMap swap_bc() { return SelfMap({0, 2, 1}); }           // a fixed, b<->c
SelfMap constant_c() { return SelfMap::constant(3, 2); }
SelfMap collapse_to_b() { return SelfMap({1, 1, 0}); }     // a->b, b->b, c->a

FiniteTopology three_chain() { return FiniteTopology::validate(3, {0, 3, 7}); }
FiniteTopology three_split() {
  return FiniteTopology::validate(3, {0, 1, 6, 7});
}

}  // namespace

TEST_CASE("self-map construction and application") {
  const SelfMap f = three_cycle();
  CHECK(f.point_count() == 3);
  CHECK(f.apply(0) == 1);
  CHECK(f.apply(2) == 0);
  CHECK(SelfMap::identity(4).apply(3) == 3);
  CHECK(SelfMap::constant(3, 2).apply(0) == 2);

  CHECK_THROWS_AS(SelfMap(std::vector<std::uint8_t>{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SelfMap({0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(SelfMap::constant(3, 5), std::invalid_argument);
}

TEST_CASE("map index encoding enumerates all maps exactly once") {
  std::vector<SelfMap> seen;
  for (std::uint64_t index = 0; index < 27; ++index) {
    const SelfMap f = SelfMap::from_index(3, index);
    CHECK(f.to_index() == index);
    for (const SelfMap& earlier : seen) CHECK(!(earlier == f));
    seen.push_back(f);
  }
  // Digit x of the index, base n, is the image of x.
  const SelfMap f = SelfMap::from_index(3, 1 * 1 + 2 * 3 + 0 * 9);
  CHECK(f.apply(0) == 1);
  CHECK(f.apply(1) == 2);
  CHECK(f.apply(2) == 0);
}

TEST_CASE("image of a set is the pointwise image") {
  CHECK(constant_c().image_of(SubsetMask(3)) == SubsetMask(4));
  CHECK(constant_c().image_of(SubsetMask::empty_set()) ==
        SubsetMask::empty_set());
  CHECK(three_cycle().image_of(SubsetMask(3)) == SubsetMask(6));
  CHECK(collapse_to_b().range() == SubsetMask(3));
}

TEST_CASE("surjectivity and injectivity") {
  CHECK(three_cycle().is_surjective());
  CHECK(three_cycle().is_injective());
  CHECK(!constant_c().is_surjective());
  CHECK(!constant_c().is_injective());
  const SelfMap f({1, 0, 0});  // a->b, b->a, c->a: c is never hit
  CHECK(!f.is_surjective());
  CHECK(!f.is_injective());
}

TEST_CASE("powers compose the map") {
  CHECK(three_cycle().power(1) == three_cycle());
  CHECK(three_cycle().power(3) == SelfMap::identity(3));
  CHECK(swap_bc().power(2) == SelfMap::identity(3));

  // Pointwise agreement for every three-point map and power up to six.
  for (std::uint64_t index = 0; index < 27; ++index) {
    const SelfMap f = SelfMap::from_index(3, index);
    for (int p = 1; p <= 6; ++p) {
      const SelfMap g = f.power(p);
      for (int x = 0; x < 3; ++x) {
        int y = x;
        for (int i = 0; i < p; ++i) y = f.apply(y);
        CHECK(g.apply(x) == y);
      }
    }
  }
}

TEST_CASE("orbits accumulate until repetition") {
  CHECK(SelfMap({1, 0, 0}).orbit(2) == SubsetMask(7));
  CHECK(three_cycle().orbit(0) == SubsetMask(7));
  CHECK(SelfMap::identity(3).orbit(1) == SubsetMask::singleton(1));
  CHECK(constant_c().orbit(0) == SubsetMask(5));
}

TEST_CASE("trajectories split into preperiod and cycle") {
  const SetTrajectory swap = trajectory(swap_bc(), SubsetMask(3));
  CHECK(swap.preperiod == 0);
  CHECK(swap.period == 2);
  CHECK(swap.snapshots == std::vector<SubsetMask>{SubsetMask(3), SubsetMask(5)});
  CHECK(swap.at(7) == SubsetMask(5));
  CHECK(swap.cycle_intersection() == SubsetMask::singleton(0));

  const SetTrajectory constant = trajectory(constant_c(), SubsetMask(3));
  CHECK(constant.preperiod == 1);
  CHECK(constant.period == 1);
  CHECK(constant.snapshots ==
        std::vector<SubsetMask>{SubsetMask(3), SubsetMask(4)});
  CHECK(constant.at(0) == SubsetMask(3));
  CHECK(constant.at(100) == SubsetMask(4));

  const SetTrajectory ident = trajectory(SelfMap::identity(3), SubsetMask(6));
  CHECK(ident.preperiod == 0);
  CHECK(ident.period == 1);

  const SetTrajectory empty = trajectory(three_cycle(), SubsetMask::empty_set());
  CHECK(empty.preperiod == 0);
  CHECK(empty.period == 1);
  CHECK(empty.snapshots == std::vector<SubsetMask>{SubsetMask::empty_set()});
}

TEST_CASE("trajectory invariants over every three-point map and subset") {
  for (std::uint64_t index = 0; index < 27; ++index) {
    const SelfMap f = SelfMap::from_index(3, index);
    for (std::uint64_t s = 0; s < 8; ++s) {
      const SetTrajectory traj = trajectory(f, SubsetMask(s));
      const int p = traj.preperiod;
      const int q = traj.period;
      CHECK(p >= 0);
      CHECK(q >= 1);
      CHECK(p + q == static_cast<int>(traj.snapshots.size()));
      CHECK(p + q <= 8);
      CHECK(traj.source == SubsetMask(s));
      CHECK(traj.snapshots.front() == SubsetMask(s));

      // All snapshots distinct (first repetition defines the split).
      for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        for (std::size_t j = i + 1; j < traj.snapshots.size(); ++j) {
          CHECK(traj.snapshots[i] != traj.snapshots[j]);
        }
      }

      // Applying the map q more times from the cycle start returns there.
      SubsetMask roll = traj.snapshots[static_cast<std::size_t>(p)];
      for (int i = 0; i < q; ++i) roll = f.image_of(roll);
      CHECK(roll == traj.snapshots[static_cast<std::size_t>(p)]);

      // Cardinalities never grow along the run.
      for (std::size_t i = 1; i < traj.snapshots.size(); ++i) {
        CHECK(traj.snapshots[i].size() <= traj.snapshots[i - 1].size());
      }

      // at() agrees with direct iteration well past the stored block.
      SubsetMask direct = SubsetMask(s);
      for (int step = 0; step <= 20; ++step) {
        CHECK(traj.at(step) == direct);
        direct = f.image_of(direct);
      }
    }
  }
}

TEST_CASE("forward unions stabilize and report covering steps") {
  const ForwardUnion covered = forward_union_detail(constant_c(), SubsetMask(3));
  CHECK(covered.value == SubsetMask(7));
  CHECK(covered.steps_to_cover == 1);

  const ForwardUnion whole = forward_union_detail(constant_c(), SubsetMask(7));
  CHECK(whole.steps_to_cover == 0);

  CHECK(forward_union(SelfMap::identity(3), SubsetMask(6)) == SubsetMask(6));

  const ForwardUnion stuck = forward_union_detail(collapse_to_b(), SubsetMask(3));
  CHECK(stuck.value == SubsetMask(3));
  CHECK(!stuck.steps_to_cover.has_value());

  for (std::uint64_t index = 0; index < 27; ++index) {
    const SelfMap f = SelfMap::from_index(3, index);
    for (std::uint64_t s = 0; s < 8; ++s) {
      const SubsetMask u(s);
      const SubsetMask total = forward_union(f, u);
      CHECK(u.subset_of(total));
      CHECK(f.image_of(total).subset_of(total));
    }
  }
}

TEST_CASE("liminf sets equal the cycle intersection") {
  CHECK(liminf_set(three_cycle(), SubsetMask(3)) == SubsetMask::empty_set());
  CHECK(liminf_set(swap_bc(), SubsetMask(3)) == SubsetMask::singleton(0));
  CHECK(liminf_set(SelfMap::identity(3), SubsetMask(6)) == SubsetMask(6));
  CHECK(liminf_set(three_cycle(), SubsetMask::empty_set()) ==
        SubsetMask::empty_set());
}

TEST_CASE("truncated intersections converge to the liminf set") {
  // For a window of length 2*2^n starting at i, the truncated intersection
  // is contained in the liminf set, with equality once i reaches the
  // preperiod.
  for (std::uint64_t index = 0; index < 27; ++index) {
    const SelfMap f = SelfMap::from_index(3, index);
    for (std::uint64_t s = 0; s < 8; ++s) {
      const SubsetMask u(s);
      const SetTrajectory traj = trajectory(f, u);
      const SubsetMask liminf = liminf_set(f, u);
      for (int i = 0; i <= traj.preperiod + traj.period; ++i) {
        const SubsetMask window = truncated_intersection(f, u, i, i + 16);
        CHECK(window.subset_of(liminf));
        if (i >= traj.preperiod) CHECK(window == liminf);
      }
    }
  }
}

TEST_CASE("continuity checks preimages of opens") {
  CHECK(DynSystem(three_split(), SelfMap({1, 0, 0})).is_continuous());
  CHECK(DynSystem(three_chain(), SelfMap::identity(3)).is_continuous());
  // Preimage of {b,c} under a->a, b->a, c->c is {c}, which is not open.
  CHECK(!DynSystem(three_split(), SelfMap({0, 0, 2})).is_continuous());
  CHECK(DynSystem(three_chain(), constant_c()).is_continuous());
}

TEST_CASE("open-map checks images of opens") {
  CHECK(DynSystem(three_chain(), SelfMap::identity(3)).is_open_map());
  // The image of {a,b} under the constant map is {c}, which is not open.
  CHECK(!DynSystem(three_chain(), constant_c()).is_open_map());
  const FiniteTopology discrete =
      FiniteTopology::validate(3, {0, 1, 2, 3, 4, 5, 6, 7});
  for (std::uint64_t index = 0; index < 27; ++index) {
    CHECK(DynSystem(discrete, SelfMap::from_index(3, index)).is_open_map());
  }
}

TEST_CASE("systems pair a topology with a map of the same size") {
  CHECK_THROWS_AS(DynSystem(three_chain(), SelfMap::identity(2)),
                  std::invalid_argument);

  const DynSystem sys(three_chain(), constant_c());
  CHECK(sys.point_count() == 3);
  CHECK(sys.is_continuous());
  CHECK(sys.is_continuous());  // cached second call
  const DynSystem copy = sys;  // copies carry the cached flags
  CHECK(copy.is_continuous());
  CHECK(copy.topology() == sys.topology());
  CHECK(copy.map() == sys.map());

  const auto shared = std::make_shared<const FiniteTopology>(three_chain());
  const DynSystem shared_sys(shared, constant_c());
  CHECK(shared_sys.topology_ptr().get() == shared.get());
}
