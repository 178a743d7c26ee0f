#include "topodyn/topology.hpp"

#include <algorithm>
#include <sstream>

namespace topodyn {

std::string_view topology_defect_name(TopologyDefect defect) {
  switch (defect) {
    case TopologyDefect::zero_points:
      return "ZeroPoints";
    case TopologyDefect::too_many_points:
      return "TooManyPoints";
    case TopologyDefect::open_out_of_range:
      return "OpenOutOfRange";
    case TopologyDefect::not_union_closed:
      return "NotUnionClosed";
    case TopologyDefect::not_intersection_closed:
      return "NotIntersectionClosed";
  }
  return "UnknownDefect";
}

std::string debug_subset(SubsetMask s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  s.for_each_point([&](int x) {
    if (!first) out << ',';
    first = false;
    if (x < 26) {
      out << static_cast<char>('a' + x);
    } else {
      out << 'p' << x;
    }
  });
  out << '}';
  return out.str();
}

namespace {

std::string describe_defect(TopologyDefect defect, int n, SubsetMask a,
                            SubsetMask b) {
  std::ostringstream out;
  out << topology_defect_name(defect);
  switch (defect) {
    case TopologyDefect::zero_points:
      out << ": a topology needs at least one point";
      break;
    case TopologyDefect::too_many_points:
      out << ": " << n << " points exceeds the cap of " << kMaxPoints;
      break;
    case TopologyDefect::open_out_of_range:
      out << ": open set with mask 0x" << std::hex << a.bits() << std::dec
          << " uses points outside 0.." << (n - 1);
      break;
    case TopologyDefect::not_union_closed:
      out << ": " << debug_subset(a) << " union " << debug_subset(b) << " = "
          << debug_subset(a | b) << " is not open";
      break;
    case TopologyDefect::not_intersection_closed:
      out << ": " << debug_subset(a) << " intersect " << debug_subset(b)
          << " = " << debug_subset(a & b) << " is not open";
      break;
  }
  return out.str();
}

}  // namespace

TopologyError::TopologyError(TopologyDefect defect, int n, SubsetMask first,
                             SubsetMask second)
    : std::runtime_error(describe_defect(defect, n, first, second)),
      defect_(defect),
      first_(first),
      second_(second) {}

FiniteTopology FiniteTopology::validate(int n,
                                        std::span<const SubsetMask> family) {
  if (n <= 0) {
    throw TopologyError(TopologyDefect::zero_points, n, SubsetMask{},
                        SubsetMask{});
  }
  if (n > kMaxPoints) {
    throw TopologyError(TopologyDefect::too_many_points, n, SubsetMask{},
                        SubsetMask{});
  }
  const SubsetMask space = SubsetMask::universe(n);
  for (SubsetMask s : family) {
    if (!s.subset_of(space)) {
      throw TopologyError(TopologyDefect::open_out_of_range, n, s,
                          SubsetMask{});
    }
  }

  FiniteTopology topo;
  topo.n_ = n;
  topo.opens_.assign(family.begin(), family.end());
  topo.opens_.push_back(SubsetMask::empty_set());
  topo.opens_.push_back(space);
  std::sort(topo.opens_.begin(), topo.opens_.end());
  topo.opens_.erase(std::unique(topo.opens_.begin(), topo.opens_.end()),
                    topo.opens_.end());

  const auto& opens = topo.opens_;
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!std::binary_search(opens.begin(), opens.end(),
                              opens[i] | opens[j])) {
        throw TopologyError(TopologyDefect::not_union_closed, n, opens[i],
                            opens[j]);
      }
      if (!std::binary_search(opens.begin(), opens.end(),
                              opens[i] & opens[j])) {
        throw TopologyError(TopologyDefect::not_intersection_closed, n,
                            opens[i], opens[j]);
      }
    }
  }

  topo.build_tables();
  return topo;
}

FiniteTopology FiniteTopology::validate(
    int n, std::initializer_list<std::uint64_t> family) {
  std::vector<SubsetMask> masks;
  masks.reserve(family.size());
  for (std::uint64_t bits : family) masks.emplace_back(bits);
  return validate(n, masks);
}

void FiniteTopology::build_tables() {
  closed_.clear();
  closed_.reserve(opens_.size());
  for (SubsetMask open : opens_) closed_.push_back(open.complement_in(n_));
  std::sort(closed_.begin(), closed_.end());

  min_nbhd_.assign(n_, universe());
  for (int x = 0; x < n_; ++x) {
    for (SubsetMask open : opens_) {
      if (open.contains(x)) min_nbhd_[x] &= open;
    }
  }

  point_closure_.resize(n_);
  for (int x = 0; x < n_; ++x) {
    point_closure_[x] = closure(SubsetMask::singleton(x));
  }
}

bool FiniteTopology::is_open(SubsetMask s) const {
  return std::binary_search(opens_.begin(), opens_.end(), s);
}

bool FiniteTopology::is_closed(SubsetMask s) const {
  return std::binary_search(closed_.begin(), closed_.end(), s);
}

SubsetMask FiniteTopology::closure(SubsetMask s) const {
  // Closed sets are sorted ascending by mask value, and a subset never has a
  // larger value than its superset, so the first closed superset found is
  // the inclusion-smallest one.
  for (SubsetMask closed : closed_) {
    if (s.subset_of(closed)) return closed;
  }
  return universe();  // unreachable: the full space is closed
}

SubsetMask FiniteTopology::interior(SubsetMask s) const {
  return closure(s.complement_in(n_)).complement_in(n_);
}

bool FiniteTopology::is_dense(SubsetMask s) const {
  return closure(s) == universe();
}

SubsetMask FiniteTopology::isolated_points() const {
  SubsetMask result;
  for (int x = 0; x < n_; ++x) {
    if (min_nbhd_[x] == SubsetMask::singleton(x)) result.add(x);
  }
  return result;
}

bool FiniteTopology::has_isolated_point() const {
  return isolated_points().nonempty();
}

bool FiniteTopology::is_discrete() const {
  return opens_.size() == (std::size_t{1} << n_);
}

bool FiniteTopology::is_trivial() const {
  // Canonical opens always contain the empty set and the full space, so a
  // two-element family is exactly the indiscrete topology.
  return opens_.size() == 2;
}

bool FiniteTopology::is_hausdorff() const {
  for (int x = 0; x < n_; ++x) {
    for (int y = x + 1; y < n_; ++y) {
      if (min_nbhd_[x].intersects(min_nbhd_[y])) return false;
    }
  }
  return true;
}

}  // namespace topodyn
