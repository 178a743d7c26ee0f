#include "topodyn/dynamics.hpp"

#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace topodyn {

SelfMap::SelfMap(std::vector<std::uint8_t> image) : image_(std::move(image)) {
  if (image_.empty()) {
    throw std::invalid_argument("self-map needs at least one point");
  }
  if (image_.size() > static_cast<std::size_t>(kMaxPoints)) {
    throw std::invalid_argument("self-map exceeds the point cap");
  }
  for (std::uint8_t y : image_) {
    if (y >= image_.size()) {
      throw std::invalid_argument("self-map sends a point outside the space");
    }
  }
}

SelfMap SelfMap::identity(int n) {
  std::vector<std::uint8_t> image(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) image[x] = static_cast<std::uint8_t>(x);
  return SelfMap(std::move(image));
}

SelfMap SelfMap::constant(int n, int target) {
  std::vector<std::uint8_t> image(static_cast<std::size_t>(n),
                                  static_cast<std::uint8_t>(target));
  return SelfMap(std::move(image));
}

SelfMap SelfMap::from_index(int n, std::uint64_t index) {
  std::vector<std::uint8_t> image(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    image[x] = static_cast<std::uint8_t>(index % static_cast<std::uint64_t>(n));
    index /= static_cast<std::uint64_t>(n);
  }
  return SelfMap(std::move(image));
}

std::uint64_t SelfMap::to_index() const {
  const auto n = static_cast<std::uint64_t>(image_.size());
  std::uint64_t index = 0;
  for (std::size_t x = image_.size(); x-- > 0;) {
    index = index * n + image_[x];
  }
  return index;
}

SubsetMask SelfMap::image_of(SubsetMask s) const {
  SubsetMask result;
  s.for_each_point([&](int x) { result.add(image_[x]); });
  return result;
}

SubsetMask SelfMap::range() const {
  return image_of(SubsetMask::universe(point_count()));
}

bool SelfMap::is_surjective() const {
  return range() == SubsetMask::universe(point_count());
}

bool SelfMap::is_injective() const {
  return range().size() == point_count();
}

SelfMap SelfMap::power(int p) const {
  if (p < 1) throw std::invalid_argument("power expects p >= 1");
  std::vector<std::uint8_t> result = image_;
  for (int step = 1; step < p; ++step) {
    for (auto& y : result) y = image_[y];
  }
  return SelfMap(std::move(result));
}

SubsetMask SelfMap::orbit(int x) const {
  SubsetMask visited;
  int cur = x;
  while (!visited.contains(cur)) {
    visited.add(cur);
    cur = image_[cur];
  }
  return visited;
}

SetTrajectory trajectory(const SelfMap& map, SubsetMask start) {
  SetTrajectory traj;
  traj.source = start;
  std::unordered_map<std::uint64_t, int> first_index;
  SubsetMask cur = start;
  for (int step = 0;; ++step) {
    auto [it, inserted] = first_index.try_emplace(cur.bits(), step);
    if (!inserted) {
      traj.preperiod = it->second;
      traj.period = step - it->second;
      break;
    }
    traj.snapshots.push_back(cur);
    cur = map.image_of(cur);
  }
  return traj;
}

ForwardUnion forward_union_detail(const SelfMap& map, SubsetMask start) {
  const SubsetMask space = SubsetMask::universe(map.point_count());
  ForwardUnion result;
  result.value = start;
  SubsetMask frontier = start;
  int step = 0;
  if (result.value == space) result.steps_to_cover = 0;
  while (!result.steps_to_cover.has_value()) {
    frontier = map.image_of(frontier);
    ++step;
    const SubsetMask grown = result.value | frontier;
    if (grown == result.value) {
      // Nothing new: the union is invariant under the map, so every later
      // image stays inside it and the accumulation has stabilized.
      break;
    }
    result.value = grown;
    if (result.value == space) result.steps_to_cover = step;
  }
  return result;
}

SubsetMask forward_union(const SelfMap& map, SubsetMask start) {
  return forward_union_detail(map, start).value;
}

SubsetMask liminf_set(const SelfMap& map, SubsetMask start) {
  // The tail intersections A_i = f^i(U) & f^(i+1)(U) & ... grow with i and
  // are constant once i reaches the preperiod, so the liminf is exactly the
  // intersection of the cycle block.
  return trajectory(map, start).cycle_intersection();
}

DynSystem::DynSystem(FiniteTopology topology, SelfMap map)
    : DynSystem(std::make_shared<const FiniteTopology>(std::move(topology)),
                std::move(map)) {}

DynSystem::DynSystem(std::shared_ptr<const FiniteTopology> topology,
                     SelfMap map)
    : topology_(std::move(topology)), map_(std::move(map)) {
  if (!topology_) throw std::invalid_argument("system needs a topology");
  if (topology_->point_count() != map_.point_count()) {
    throw std::invalid_argument("topology and map disagree on point count");
  }
}

DynSystem::DynSystem(const DynSystem& other)
    : topology_(other.topology_),
      map_(other.map_),
      continuous_(other.continuous_.load(std::memory_order_relaxed)),
      open_map_(other.open_map_.load(std::memory_order_relaxed)) {}

DynSystem& DynSystem::operator=(const DynSystem& other) {
  topology_ = other.topology_;
  map_ = other.map_;
  continuous_.store(other.continuous_.load(std::memory_order_relaxed),
                    std::memory_order_relaxed);
  open_map_.store(other.open_map_.load(std::memory_order_relaxed),
                  std::memory_order_relaxed);
  return *this;
}

bool DynSystem::is_continuous() const {
  std::int8_t cached = continuous_.load(std::memory_order_relaxed);
  if (cached < 0) {
    bool ok = true;
    const int n = point_count();
    for (SubsetMask open : topology_->opens()) {
      SubsetMask preimage;
      for (int x = 0; x < n; ++x) {
        if (open.contains(map_.apply(x))) preimage.add(x);
      }
      if (!topology_->is_open(preimage)) {
        ok = false;
        break;
      }
    }
    cached = ok ? 1 : 0;
    continuous_.store(cached, std::memory_order_relaxed);
  }
  return cached == 1;
}

bool DynSystem::is_open_map() const {
  std::int8_t cached = open_map_.load(std::memory_order_relaxed);
  if (cached < 0) {
    bool ok = true;
    for (SubsetMask open : topology_->opens()) {
      if (!topology_->is_open(map_.image_of(open))) {
        ok = false;
        break;
      }
    }
    cached = ok ? 1 : 0;
    open_map_.store(cached, std::memory_order_relaxed);
  }
  return cached == 1;
}

}  // namespace topodyn
