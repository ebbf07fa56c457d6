#ifndef MVDL_VARSET_HPP
#define MVDL_VARSET_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

namespace mvdl {

/// Hard ceiling on universe size imposed by the 64-bit representation.
inline constexpr std::size_t kMaxUniverseSize = 64;

/// Default ceiling for anything that enumerates all 2^n interpretations.
inline constexpr std::size_t kDefaultEnumerationCap = 24;

/// A subset of variable indices {0, ..., n-1}, stored as a bit vector.
class VarSet {
 public:
  using Bits = std::uint64_t;

  constexpr VarSet() = default;
  constexpr explicit VarSet(Bits bits) : bits_(bits) {}

  static constexpr VarSet full(std::size_t n) {
    return VarSet(n >= 64 ? ~Bits{0} : ((Bits{1} << n) - 1));
  }
  static constexpr VarSet single(std::size_t i) { return VarSet(Bits{1} << i); }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  constexpr bool subset_of(VarSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool proper_subset_of(VarSet o) const { return subset_of(o) && bits_ != o.bits_; }
  constexpr bool intersects(VarSet o) const { return (bits_ & o.bits_) != 0; }

  /// Index of the smallest member; the set must be non-empty.
  constexpr std::size_t lowest() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  constexpr VarSet& insert(std::size_t i) {
    bits_ |= Bits{1} << i;
    return *this;
  }
  constexpr VarSet& erase(std::size_t i) {
    bits_ &= ~(Bits{1} << i);
    return *this;
  }

  constexpr VarSet& operator|=(VarSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr VarSet& operator&=(VarSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr VarSet& operator-=(VarSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  friend constexpr VarSet operator|(VarSet a, VarSet b) { return a |= b; }
  friend constexpr VarSet operator&(VarSet a, VarSet b) { return a &= b; }
  friend constexpr VarSet operator-(VarSet a, VarSet b) { return a -= b; }

  friend constexpr bool operator==(VarSet, VarSet) = default;
  friend constexpr auto operator<=>(VarSet, VarSet) = default;

  class iterator {
   public:
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;

    constexpr iterator() = default;
    constexpr explicit iterator(Bits rest) : rest_(rest) {}
    constexpr std::size_t operator*() const { return static_cast<std::size_t>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    Bits rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

 private:
  Bits bits_ = 0;
};

/// Visits every subset of {0..n-1} ordered by ascending size, then
/// lexicographically by ascending index list. Stops when `visit` returns true
/// and yields that subset.
template <class Visit>
std::optional<VarSet> find_first_subset(std::size_t n, Visit&& visit) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k <= n; ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      VarSet s;
      for (std::size_t i : idx) s.insert(i);
      if (visit(s)) return s;
      // advance to the next k-combination in lexicographic order
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return std::nullopt;
}

/// Same ordering as find_first_subset, restricted to supersets of `base`
/// that stay inside `allowed`.
template <class Visit>
std::optional<VarSet> find_first_between(VarSet base, VarSet allowed, Visit&& visit) {
  std::vector<std::size_t> free_vars;
  for (std::size_t v : allowed - base) free_vars.push_back(v);
  auto hit = find_first_subset(free_vars.size(), [&](VarSet pick) {
    VarSet s = base;
    for (std::size_t i : pick) s.insert(free_vars[i]);
    return visit(s);
  });
  if (!hit) return std::nullopt;
  VarSet s = base;
  for (std::size_t i : *hit) s.insert(free_vars[i]);
  return s;
}

}  // namespace mvdl

#endif  // MVDL_VARSET_HPP
