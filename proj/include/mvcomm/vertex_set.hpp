#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace mvcomm {

inline constexpr int kMaxVertices = 64;

// Subset of {0, ..., 63} stored as a bitmask. Interpreted against the vertex
// count of whichever graph it is used with.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<int> members) {
    for (int v : members) insert(v);
  }

  static constexpr VertexSet all(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static VertexSet from_list(const std::vector<int>& members) {
    VertexSet s;
    for (int v : members) s.insert(v);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1U; }
  constexpr void insert(int v) { bits_ |= std::uint64_t{1} << v; }
  constexpr void erase(int v) { bits_ &= ~(std::uint64_t{1} << v); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }
  // Largest member + 1, i.e. the smallest n this set fits into.
  constexpr int span() const { return 64 - std::countl_zero(bits_); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
  }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  constexpr VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
  constexpr VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
  constexpr VertexSet& operator-=(VertexSet o) { bits_ &= ~o.bits_; return *this; }
  friend constexpr bool operator==(VertexSet, VertexSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Element-wise comparison of the sorted member lists; a proper prefix
// compares smaller.
constexpr bool lex_less(VertexSet a, VertexSet b) {
  const std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  const int v = std::countr_zero(diff);
  const std::uint64_t from_v = ~((std::uint64_t{1} << v) - 1);
  if (a.contains(v)) return (b.bits() & from_v) != 0;
  return (a.bits() & from_v) == 0;
}

inline std::ostream& operator<<(std::ostream& os, VertexSet s) {
  os << '{';
  bool first = true;
  s.for_each([&](int v) {
    if (!first) os << ',';
    os << v;
    first = false;
  });
  return os << '}';
}

}  // namespace mvcomm
