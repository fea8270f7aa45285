#pragma once

#include <string>
#include <utility>
#include <vector>

#include "baire/errors.hpp"
#include "baire/world_set.hpp"

namespace baire {

/// Default cap on the number of worlds accepted by build_frame.
inline constexpr int kDefaultMaxWorlds = 24;

/// A relation that fails reflexivity or transitivity; carries the missing pair.
class NotS4Error : public Error {
public:
  NotS4Error(const std::string& what, std::string from, std::string to)
      : Error(what), from_(std::move(from)), to_(std::move(to)) {}
  const std::string& from() const { return from_; }
  const std::string& to() const { return to_; }

private:
  std::string from_;
  std::string to_;
};

/// A finite reflexive-transitive frame. Doubles as a finite Alexandroff
/// space whose opens are the up-sets (R(U) <= U) and whose closure is R^-1.
class Frame {
public:
  /// Requires successors[w] to already be reflexive and transitive.
  Frame(std::vector<std::string> names, std::vector<WorldSet> successors);

  int size() const { return static_cast<int>(names_.size()); }
  WorldSet worlds() const { return WorldSet::first(size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int w) const { return names_[w]; }
  /// Index of a named world, or -1.
  int index_of(const std::string& name) const;

  bool related(int w, int v) const { return succ_[w].contains(v); }
  /// R(w)
  WorldSet successors(int w) const { return succ_[w]; }
  /// R^-1(w)
  WorldSet predecessors(int w) const { return pred_[w]; }
  /// R(A), the least open set containing A.
  WorldSet up(WorldSet a) const;
  /// R^-1(A), the closure of A.
  WorldSet down(WorldSet a) const;

  bool is_s5() const { return s5_; }
  bool is_open(WorldSet a) const { return up(a) == a; }
  bool is_closed(WorldSet a) const { return down(a) == a; }

  /// All pairs (w, v) with wRv, ordered by w then v.
  std::vector<std::pair<int, int>> pairs() const;

private:
  std::vector<std::string> names_;
  std::vector<WorldSet> succ_;
  std::vector<WorldSet> pred_;
  bool s5_ = false;
};

struct FrameLimits {
  int max_worlds = kDefaultMaxWorlds;
};

/// Builds a frame from named worlds and edges. With auto_close the
/// reflexive-transitive closure is taken; otherwise a missing reflexive or
/// transitive pair raises NotS4Error.
Frame build_frame(const std::vector<std::string>& worlds,
                  const std::vector<std::pair<std::string, std::string>>& edges,
                  bool auto_close, const FrameLimits& limits = {});

/// Index-based variant used by generators and tests.
Frame frame_from_relation(int n, const std::vector<std::pair<int, int>>& edges, bool auto_close);

/// Closure of A in the Alexandroff topology: R^-1(A).
WorldSet alexandroff_closure(const Frame& fr, WorldSet a);

/// Interior of A: the largest up-set inside A.
WorldSet alexandroff_interior(const Frame& fr, WorldSet a);

struct ClusterDecomposition {
  std::vector<WorldSet> clusters;
  int number_of_clusters = 0;
  int lower_size = 0;
  int upper_size = 0;
};

/// R-equivalence classes of an S5 frame, ordered by least member.
ClusterDecomposition clusters(const Frame& fr);

/// Equivalence classes of R ∩ R^-1 on any S4 frame, ordered by least member.
std::vector<WorldSet> s4_clusters(const Frame& fr);

/// Quasimaximal points: wRv implies vRw.
WorldSet qmax(const Frame& fr);

/// One cluster of n worlds named w0..w{n-1}.
Frame n_cluster(int n);

/// Disjoint union of clusters with the given sizes. World names are
/// c<i>w<j> for cluster i, point j.
Frame cluster_frame(const std::vector<int>& sizes);

/// Subspace on `region` with the induced preorder. `index_map[i]` is the
/// world of `fr` that became world i of the result.
struct Subframe {
  Frame frame;
  std::vector<int> index_map;
};
Subframe subframe(const Frame& fr, WorldSet region);

/// Disjoint union; worlds of `b` follow those of `a`. Names are prefixed
/// with `a.` and `b.` when they would collide.
Frame disjoint_union(const Frame& a, const Frame& b);

}  // namespace baire
