#pragma once

// Brute-force reference deciders used only by the tests. They iterate raw
// image sets for a fixed step window instead of detecting cycles, staying
// deliberately independent of the trajectory machinery so that the two
// implementations can check each other.
//
// Window choice: a set trajectory on n points repeats within 2^n steps, so
// its preperiod is at most 2^n - 1 and its period at most 2^n. Every step
// from 2^n - 1 onward lies on the cycle, and the window below is longer
// than any period, so it sees every cycle snapshot at least once.

#include "topodyn/dynamics.hpp"
#include "topodyn/topology.hpp"

namespace topodyn::testing {

inline int window_start(int n) { return (1 << n) - 1; }
inline int window_end(int n) { return 2 * (1 << n) + 2; }

inline SubsetMask iterate_image(const SelfMap& f, SubsetMask s, int steps) {
  for (int i = 0; i < steps; ++i) s = f.image_of(s);
  return s;
}

/// Intersection of f^m(U) over [first, last].
inline SubsetMask truncated_intersection(const SelfMap& f, SubsetMask u,
                                         int first, int last) {
  SubsetMask current = iterate_image(f, u, first);
  SubsetMask acc = current;
  for (int m = first; m < last; ++m) {
    current = f.image_of(current);
    acc &= current;
  }
  return acc;
}

inline SubsetMask naive_liminf(const SelfMap& f, SubsetMask u, int n) {
  return truncated_intersection(f, u, window_start(n), window_end(n));
}

inline bool naive_is_mixing(const DynSystem& sys) {
  const int n = sys.point_count();
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    const SubsetMask current = iterate_image(sys.map(), u, window_start(n));
    for (SubsetMask v : sys.topology().opens()) {
      if (v.is_empty()) continue;
      SubsetMask snapshot = current;
      for (int m = window_start(n); m <= window_end(n); ++m) {
        if (!snapshot.intersects(v)) return false;
        snapshot = sys.map().image_of(snapshot);
      }
    }
  }
  return true;
}

inline bool naive_is_supermixing(const DynSystem& sys) {
  const int n = sys.point_count();
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    if (!sys.topology().is_dense(naive_liminf(sys.map(), u, n))) return false;
  }
  return true;
}

inline bool naive_is_hypermixing(const DynSystem& sys) {
  const int n = sys.point_count();
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    if (naive_liminf(sys.map(), u, n) != sys.topology().universe()) {
      return false;
    }
  }
  return true;
}

inline bool naive_is_strongly_transitive(const DynSystem& sys) {
  const int n = sys.point_count();
  for (SubsetMask u : sys.topology().opens()) {
    if (u.is_empty()) continue;
    SubsetMask acc = u;
    SubsetMask current = u;
    for (int m = 0; m <= window_end(n); ++m) {
      current = sys.map().image_of(current);
      acc |= current;
    }
    if (acc != sys.topology().universe()) return false;
  }
  return true;
}

inline SubsetMask naive_jmix(const DynSystem& sys, int x) {
  const int n = sys.point_count();
  const SubsetMask start = sys.topology().minimal_neighborhood(x);
  SubsetMask result;
  for (int y = 0; y < n; ++y) {
    const SubsetMask target = sys.topology().minimal_neighborhood(y);
    bool always_met = true;
    SubsetMask snapshot = iterate_image(sys.map(), start, window_start(n));
    for (int m = window_start(n); m <= window_end(n); ++m) {
      if (!snapshot.intersects(target)) {
        always_met = false;
        break;
      }
      snapshot = sys.map().image_of(snapshot);
    }
    if (always_met) result.add(y);
  }
  return result;
}

}  // namespace topodyn::testing
