#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baire/frame.hpp"
#include "baire/world_set.hpp"

namespace baire {

/// Above this many atoms the carrier is virtual: elements can be evaluated
/// but not enumerated, and no closure table is built.
inline constexpr int kMaxEnumerableAtoms = 16;

using ClosureRule = std::function<WorldSet(WorldSet)>;

/// A finite atomic Boolean algebra of subsets of `top` together with a
/// closure operator.
///
/// The carrier is every union of `atoms()`, which partition `top`. A full
/// powerset has singleton atoms; a subalgebra has coarser ones. Elements are
/// plain WorldSets. Internally an element also has "coordinates": the bit
/// vector over atoms, so element index i of the enumeration is the union of
/// the atoms whose bit is set in i.
class ClosureAlgebra {
public:
  ClosureAlgebra(std::string name, WorldSet top, std::vector<WorldSet> atoms, ClosureRule closure);

  const std::string& name() const { return name_; }
  WorldSet top() const { return top_; }
  const std::vector<WorldSet>& atoms() const { return atoms_; }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  bool enumerable() const { return atom_count() <= kMaxEnumerableAtoms; }
  /// 2^atom_count; throws BudgetExceeded for virtual carriers.
  std::uint64_t carrier_size() const;

  bool contains(WorldSet a) const;
  WorldSet meet(WorldSet a, WorldSet b) const { return a & b; }
  WorldSet join(WorldSet a, WorldSet b) const { return a | b; }
  WorldSet complement(WorldSet a) const { return top_ - a; }
  bool leq(WorldSet a, WorldSet b) const { return a.subset_of(b); }
  WorldSet closure(WorldSet a) const;
  /// i a = -c-a
  WorldSet interior(WorldSet a) const { return complement(closure(complement(a))); }
  bool is_closed(WorldSet a) const { return closure(a) == a; }
  bool is_open(WorldSet a) const { return interior(a) == a; }
  bool is_clopen(WorldSet a) const { return is_closed(a) && is_open(a); }

  /// Least carrier element above an arbitrary subset of top.
  WorldSet least_above(WorldSet a) const;

  std::uint64_t encode(WorldSet a) const;
  WorldSet decode(std::uint64_t coords) const;

  /// All elements in coordinate order; throws BudgetExceeded if virtual.
  std::vector<WorldSet> elements() const;

  /// Closure in coordinates, indexed by coordinates; empty if virtual or
  /// if closure leaves the carrier.
  const std::vector<std::uint32_t>& closure_table() const { return table_; }

  /// Whether closure maps the carrier into itself.
  bool closed_under_closure() const;

  /// Clopen elements, found by filtering the carrier.
  std::vector<WorldSet> clopens() const;
  /// Minimal nonzero clopens; they partition top.
  std::vector<WorldSet> clopen_atoms() const;

  const ClosureRule& rule() const { return rule_; }

private:
  void require_enumerable(const char* what) const;

  std::string name_;
  WorldSet top_;
  std::vector<WorldSet> atoms_;
  ClosureRule rule_;
  std::vector<std::uint32_t> table_;
  bool closure_closed_ = true;
};

/// Kur of an S4 frame: the full powerset with closure R^-1.
ClosureAlgebra kur_algebra_from_frame(const Frame& fr);

enum class AxiomKind { Closure, Monadic };

struct AxiomVerdict {
  bool pass = true;
  /// 1: a <= ca, 2: cca <= ca, 3: c(a|b) = ca|cb, 4: c0 = 0,
  /// 5: ca = ica (monadic), 0 when passing.
  int axiom = 0;
  WorldSet a;
  WorldSet b;
};

struct AxiomOptions {
  /// Cap on the number of (a, b) pairs swept for additivity.
  std::uint64_t max_pairs = std::uint64_t{1} << 26;
};

/// Exhaustive check of the closure axioms, and of ca = ica for Monadic.
/// Elements are visited in coordinate order; the first failure is reported.
AxiomVerdict verify_axioms(const ClosureAlgebra& alg, AxiomKind kind, const AxiomOptions& opts = {});

enum class GenerationMode { Boolean, Closure };

/// Least subalgebra containing the generators, closed under the Boolean
/// operations (and under closure for GenerationMode::Closure). The closure
/// rule is inherited; in Boolean mode it may leave the sub-carrier, see
/// ClosureAlgebra::closed_under_closure().
ClosureAlgebra generated_subalgebra(const ClosureAlgebra& alg, const std::vector<WorldSet>& generators,
                                    GenerationMode mode);

/// The Boolean subalgebra of clopens of `alg`.
ClosureAlgebra clopen_subalgebra(const ClosureAlgebra& alg);

struct NormalPair {
  WorldSet clopen;
  WorldSet coefficient;
  friend bool operator==(const NormalPair&, const NormalPair&) = default;
};

/// Writes c as a join of clopen_i & b_i with pairwise orthogonal clopen_i
/// from `clopens` and b_i from `b`. c = 0 gives an empty list. Throws
/// PreconditionError when c is outside the subalgebra generated by both.
std::vector<NormalPair> orthogonal_normal_form(WorldSet c, const ClosureAlgebra& clopens,
                                               const ClosureAlgebra& b);

struct CompatibleForm {
  /// Pairwise orthogonal, nonzero, joining to top.
  std::vector<WorldSet> partition;
  /// coefficients[j][i] pairs with partition[i] to rebuild input j.
  std::vector<std::vector<WorldSet>> coefficients;
};

CompatibleForm compatible_normal_form(const std::vector<WorldSet>& cs, const ClosureAlgebra& clopens,
                                      const ClosureAlgebra& b);

/// k nonzero pairwise orthogonal clopens joining to top, or nullopt.
/// Clopen atoms are sorted by decreasing size (ties by least member); the
/// first k-1 are returned singly and the last entry joins the remainder.
std::optional<std::vector<WorldSet>> kappa_disconnected(const ClosureAlgebra& alg, int k);

}  // namespace baire
