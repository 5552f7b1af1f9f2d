#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace submax {

using SetMask = std::uint64_t;

// A subset of a ground set of at most 64 elements, canonically encoded as a
// bit mask (element i present iff bit i is set).  Two equal sets compare
// bit-equal by construction.
struct ElementSet {
  SetMask bits = 0;

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(SetMask m) : bits(m) {}

  static ElementSet of(std::initializer_list<int> ids) {
    ElementSet s;
    for (int e : ids) s.bits |= SetMask{1} << e;
    return s;
  }
  static constexpr ElementSet full(int n) {
    return ElementSet{n >= 64 ? ~SetMask{0} : (SetMask{1} << n) - 1};
  }

  constexpr bool contains(int e) const { return (bits >> e) & 1u; }
  constexpr ElementSet with(int e) const {
    return ElementSet{bits | (SetMask{1} << e)};
  }
  constexpr ElementSet without(int e) const {
    return ElementSet{bits & ~(SetMask{1} << e)};
  }
  constexpr int count() const { return std::popcount(bits); }
  constexpr bool empty() const { return bits == 0; }
  constexpr bool subset_of(ElementSet o) const { return (bits & ~o.bits) == 0; }
  constexpr bool intersects(ElementSet o) const { return (bits & o.bits) != 0; }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) {
    return ElementSet{a.bits | b.bits};
  }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) {
    return ElementSet{a.bits & b.bits};
  }
  constexpr ElementSet minus(ElementSet o) const {
    return ElementSet{bits & ~o.bits};
  }
  friend constexpr bool operator==(ElementSet a, ElementSet b) {
    return a.bits == b.bits;
  }
  friend constexpr bool operator!=(ElementSet a, ElementSet b) {
    return a.bits != b.bits;
  }

  std::vector<int> ids() const {
    std::vector<int> out;
    for (SetMask m = bits; m; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }
};

// Iterates the element ids of a mask: for (int e : BitRange(s)) { ... }
class BitRange {
 public:
  explicit BitRange(ElementSet s) : mask_(s.bits) {}
  explicit BitRange(SetMask m) : mask_(m) {}

  class iterator {
   public:
    explicit iterator(SetMask m) : m_(m) {}
    int operator*() const { return std::countr_zero(m_); }
    iterator& operator++() {
      m_ &= m_ - 1;
      return *this;
    }
    bool operator!=(const iterator& o) const { return m_ != o.m_; }

   private:
    SetMask m_;
  };

  iterator begin() const { return iterator(mask_); }
  iterator end() const { return iterator(0); }

 private:
  SetMask mask_;
};

// Iterates all subsets of `full`, including the empty set and `full` itself,
// via the (sub - 1) & full walk.  Order: full, full-1 patterns, ..., 0.
class SubsetsOf {
 public:
  explicit SubsetsOf(ElementSet full) : full_(full.bits) {}

  class iterator {
   public:
    iterator(SetMask sub, SetMask full, bool done)
        : sub_(sub), full_(full), done_(done) {}
    ElementSet operator*() const { return ElementSet{sub_}; }
    iterator& operator++() {
      if (sub_ == 0) {
        done_ = true;
      } else {
        sub_ = (sub_ - 1) & full_;
      }
      return *this;
    }
    bool operator!=(const iterator& o) const {
      return done_ != o.done_ || (!done_ && sub_ != o.sub_);
    }

   private:
    SetMask sub_, full_;
    bool done_;
  };

  iterator begin() const { return iterator(full_, full_, false); }
  iterator end() const { return iterator(0, full_, true); }

 private:
  SetMask full_;
};

// Sorted-id lexicographic order on sets: the set containing the lowest
// differing element comes first.  Used for deterministic tie-breaking.
inline bool lex_less(ElementSet a, ElementSet b) {
  if (a.bits == b.bits) return false;
  SetMask diff = a.bits ^ b.bits;
  return a.bits & (diff & -diff);
}

}  // namespace submax
