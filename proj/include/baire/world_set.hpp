#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace baire {

/// Maximum number of worlds any frame may carry; subsets are 64-bit masks.
inline constexpr int kMaxWorlds = 64;

/// A subset of the worlds of a finite frame, encoded over dense indices.
class WorldSet {
public:
  constexpr WorldSet() = default;
  constexpr explicit WorldSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr WorldSet singleton(int w) { return WorldSet{std::uint64_t{1} << w}; }
  static constexpr WorldSet first(int n) {
    return WorldSet{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int w) const { return (bits_ >> w) & 1u; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool subset_of(WorldSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(WorldSet o) const { return (bits_ & o.bits_) != 0; }
  /// Index of the lowest member; undefined on the empty set.
  constexpr int lowest() const { return std::countr_zero(bits_); }

  constexpr WorldSet& insert(int w) { bits_ |= std::uint64_t{1} << w; return *this; }
  constexpr WorldSet& erase(int w) { bits_ &= ~(std::uint64_t{1} << w); return *this; }

  constexpr WorldSet operator|(WorldSet o) const { return WorldSet{bits_ | o.bits_}; }
  constexpr WorldSet operator&(WorldSet o) const { return WorldSet{bits_ & o.bits_}; }
  constexpr WorldSet operator-(WorldSet o) const { return WorldSet{bits_ & ~o.bits_}; }
  constexpr WorldSet operator^(WorldSet o) const { return WorldSet{bits_ ^ o.bits_}; }
  constexpr WorldSet& operator|=(WorldSet o) { bits_ |= o.bits_; return *this; }
  constexpr WorldSet& operator&=(WorldSet o) { bits_ &= o.bits_; return *this; }
  constexpr WorldSet& operator-=(WorldSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr auto operator<=>(const WorldSet&) const = default;

  /// Member indices in increasing order.
  std::vector<int> members() const {
    std::vector<int> out;
    for (auto b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

private:
  std::uint64_t bits_ = 0;
};

/// Calls fn on every subset of `mask`, starting from the empty set and
/// ending with `mask` itself (increasing order of the encoded value).
template <typename Fn>
void for_each_subset(WorldSet mask, Fn&& fn) {
  const auto m = mask.bits();
  std::uint64_t sub = 0;
  while (true) {
    fn(WorldSet{sub});
    if (sub == m) break;
    sub = (sub - m) & m;
  }
}

/// Deposits the low bits of `packed` into the positions of `mask`.
inline WorldSet deposit(std::uint64_t packed, WorldSet mask) {
  std::uint64_t out = 0;
  for (auto m = mask.bits(); m && packed; m &= m - 1, packed >>= 1)
    if (packed & 1u) out |= m & (~m + 1);
  return WorldSet{out};
}

}  // namespace baire
