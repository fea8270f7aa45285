#pragma once

#include <vector>

#include "baire/algebra.hpp"
#include "baire/frame.hpp"
#include "baire/world_set.hpp"

namespace baire {

/// Frames above this size are refused by the open/closed set enumerators.
inline constexpr int kMaxEnumerableWorlds = 20;

/// Interior of the closure is empty.
bool nowhere_dense(const Frame& sp, WorldSet a);

/// On a finite space the meager sets are exactly the subsets of W \ qmax W.
bool is_meager(const Frame& sp, WorldSet a);

/// Every nonempty open set is non-meager.
bool is_baire_space(const Frame& sp);

/// All up-sets of the frame, in increasing encoded order.
std::vector<WorldSet> enumerate_opens(const Frame& sp);
/// All down-sets of the frame, in increasing encoded order.
std::vector<WorldSet> enumerate_closed(const Frame& sp);

struct MeagerIdeal {
  WorldSet largest_meager;
  bool contains(WorldSet a) const { return a.subset_of(largest_meager); }
};

/// The Baire algebra P(X)/M of a finite Alexandroff space.
///
/// Each class [A] is carried by its canonical representative A & qmax, so
/// elements are subsets of qmax() and equality of classes is equality of
/// representatives. The closure of [A] is the least closed element above it.
class Quotient {
public:
  explicit Quotient(Frame sp);

  const Frame& space() const { return space_; }
  WorldSet qmax() const { return qmax_; }
  const MeagerIdeal& ideal() const { return ideal_; }
  /// qmax is empty: the one-element algebra.
  bool trivial() const { return qmax_.empty(); }

  /// Canonical representative of [A].
  WorldSet cls(WorldSet a) const { return a & qmax_; }
  bool equivalent(WorldSet a, WorldSet b) const { return ideal_.contains((a - b) | (b - a)); }

  WorldSet top() const { return qmax_; }
  WorldSet meet(WorldSet a, WorldSet b) const { return cls(a) & cls(b); }
  WorldSet join(WorldSet a, WorldSet b) const { return cls(a) | cls(b); }
  WorldSet complement(WorldSet a) const { return qmax_ - a; }
  bool leq(WorldSet a, WorldSet b) const { return cls(a).subset_of(cls(b)); }
  WorldSet closure(WorldSet a) const;
  WorldSet interior(WorldSet a) const { return complement(closure(complement(cls(a)))); }

  /// [A] = [U] for some open U.
  bool is_open_element(WorldSet a) const;
  /// [A] = [C] for some closed C.
  bool is_closed_element(WorldSet a) const;

  /// The quotient as a closure algebra over the atoms {q}, q in qmax.
  const ClosureAlgebra& algebra() const { return algebra_; }

private:
  Frame space_;
  WorldSet qmax_;
  MeagerIdeal ideal_;
  ClosureAlgebra algebra_;
};

Quotient build_quotient(const Frame& sp);

/// Least closed element above a.
WorldSet closure_in_quotient(const Quotient& q, WorldSet a);

struct BanachVerdict {
  bool pass = true;
  WorldSet union_of_family;
};

/// Checks that the union of open meager sets is meager. Throws
/// PreconditionError if a listed set is not open or not meager.
BanachVerdict banach_category_check(const Frame& sp, const std::vector<WorldSet>& opens);

}  // namespace baire
