#pragma once

#include <bit>
#include <compare>
#include <cstdint>

namespace topodyn {

/// Hard cap on the number of points of a space: every subset fits in one word.
inline constexpr int kMaxPoints = 64;

/// A subset of the point set {0, ..., n-1}, one bit per point.
///
/// The owning context (a topology or a map) carries n; masks themselves are
/// plain words. Ordering is by numeric value of the word, which doubles as
/// the canonical order for open-set lists and witness reporting: if A is a
/// subset of B then value(A) <= value(B), so ascending scans meet
/// inclusion-minimal elements first.
class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  explicit constexpr SubsetMask(std::uint64_t bits) : bits_(bits) {}

  static constexpr SubsetMask empty_set() { return SubsetMask{0}; }

  /// The full space {0, ..., n-1}.
  static constexpr SubsetMask universe(int n) {
    return SubsetMask{n >= kMaxPoints ? ~std::uint64_t{0}
                                      : (std::uint64_t{1} << n) - 1};
  }

  static constexpr SubsetMask singleton(int x) {
    return SubsetMask{std::uint64_t{1} << x};
  }

  constexpr std::uint64_t bits() const { return bits_; }

  constexpr bool contains(int x) const { return (bits_ >> x) & 1u; }
  constexpr void add(int x) { bits_ |= std::uint64_t{1} << x; }
  constexpr void remove(int x) { bits_ &= ~(std::uint64_t{1} << x); }

  constexpr bool is_empty() const { return bits_ == 0; }
  constexpr bool nonempty() const { return bits_ != 0; }
  constexpr int size() const { return std::popcount(bits_); }

  constexpr bool subset_of(SubsetMask other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(SubsetMask other) const {
    return (bits_ & other.bits_) != 0;
  }

  constexpr SubsetMask complement_in(int n) const {
    return SubsetMask{~bits_ & universe(n).bits_};
  }

  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) {
    return SubsetMask{a.bits_ | b.bits_};
  }
  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) {
    return SubsetMask{a.bits_ & b.bits_};
  }
  /// Set difference a \ b.
  friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) {
    return SubsetMask{a.bits_ & ~b.bits_};
  }

  constexpr SubsetMask& operator|=(SubsetMask other) {
    bits_ |= other.bits_;
    return *this;
  }
  constexpr SubsetMask& operator&=(SubsetMask other) {
    bits_ &= other.bits_;
    return *this;
  }

  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;

  /// Index of the lowest point in the set, or -1 when empty.
  constexpr int first_point() const {
    return bits_ == 0 ? -1 : std::countr_zero(bits_);
  }

  /// Visits the points of the set in ascending order.
  template <typename Fn>
  constexpr void for_each_point(Fn&& fn) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      fn(std::countr_zero(rest));
    }
  }

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace topodyn
