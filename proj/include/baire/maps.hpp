#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baire/algebra.hpp"
#include "baire/frame.hpp"
#include "baire/quotient.hpp"
#include "baire/world_set.hpp"

namespace baire {

/// A partial function between the worlds of two finite frames.
class PartialMap {
public:
  /// graph[x] is the image of source world x, or -1 where undefined.
  PartialMap(Frame source, Frame target, std::vector<int> graph);

  const Frame& source() const { return source_; }
  const Frame& target() const { return target_; }
  const std::vector<int>& graph() const { return graph_; }
  std::optional<int> at(int x) const;

  WorldSet domain() const;
  /// f^-1(B)
  WorldSet preimage(WorldSet b) const;
  /// f(A), ignoring points outside the domain.
  WorldSet image(WorldSet a) const;

private:
  Frame source_;
  Frame target_;
  std::vector<int> graph_;
};

/// Builds a map from named pairs; rejects unknown worlds and pairs that
/// would make the graph multi-valued.
PartialMap partial_map_from_pairs(Frame source, Frame target,
                                  const std::vector<std::pair<std::string, std::string>>& graph);

struct BaireMapProperties {
  bool almost_everywhere = false;
  bool proper = false;
  bool baire_continuous = false;
  bool baire_open = false;
  bool exact = false;
  bool is_baire_map = false;
};

struct MapCheckOptions {
  /// Cap on the number of quantifier instances visited by any one flag.
  std::uint64_t max_checks = std::uint64_t{1} << 26;
};

/// Each flag is decided by sweeping its defining quantifier over the finite
/// families involved: meager subsets, open subsets, (open, meager) pairs,
/// all target subsets.
BaireMapProperties check_baire_map(const PartialMap& f, const MapCheckOptions& opts = {});

/// A meets every nonempty open set in a non-meager set.
bool nowhere_meager(const Frame& sp, WorldSet a);
/// The same, relative to the subspace `region` (which must be open).
bool nowhere_meager_in(const Frame& sp, WorldSet region, WorldSet a);

/// A partition of `region` into nowhere meager parts. Part 0 also carries
/// the meager residue.
struct Resolution {
  Frame space;
  WorldSet region;
  std::vector<WorldSet> parts;
};

/// Partition is exact and every part is nowhere meager in the region.
bool is_valid_resolution(const Resolution& res);

/// Backtracking search for a Baire k-resolution of the whole space.
/// Quasimaximal worlds are assigned in index order; each first tries part
/// (rank within its cluster) mod k, then the remaining parts in order.
/// Meager worlds go to part 0.
std::optional<Resolution> find_baire_resolution(const Frame& sp, int k);
/// The same for the open subspace `region`.
std::optional<Resolution> find_baire_resolution_in(const Frame& sp, WorldSet region, int k);

/// h[A] = [f^-1(A)], from the quotient of the target to that of the source.
class InducedHom {
public:
  explicit InducedHom(PartialMap f);

  const PartialMap& map() const { return f_; }
  const Quotient& source_quotient() const { return source_q_; }
  const Quotient& target_quotient() const { return target_q_; }
  /// Canonical image of [a] for any a subset of the target worlds.
  WorldSet apply(WorldSet a) const { return source_q_.cls(f_.preimage(a)); }
  /// Whether every representative of every class gave the same image.
  bool well_defined() const { return well_defined_; }

private:
  PartialMap f_;
  Quotient source_q_;
  Quotient target_q_;
  bool well_defined_ = true;
};

/// Requires the map to be defined almost everywhere and proper; throws
/// PreconditionError naming the failed flags otherwise.
InducedHom induced_hom(const PartialMap& f, const MapCheckOptions& opts = {});

struct HomomorphismCheck {
  bool meets = true;
  bool complements = true;
  bool closure = true;
  bool injective = true;
  bool ok() const { return meets && complements && closure && injective; }
};

/// Exhaustive check over the target quotient.
HomomorphismCheck check_homomorphism(const InducedHom& h);

/// Sends part i to world w_i of the k-cluster. Worlds outside the region
/// stay undefined.
PartialMap map_from_resolution(const Resolution& res);

/// Fibres over the target cluster, with the undefined residue added to
/// part 0. Requires an exact Baire map into a single cluster.
Resolution resolution_from_map(const PartialMap& f, const MapCheckOptions& opts = {});

struct Embedding {
  /// The map X -> W whose induced homomorphism is the embedding.
  PartialMap map;
  InducedHom hom;
  /// Open carrier of each cluster of W, indexed like clusters(W).clusters.
  std::vector<WorldSet> carriers;
};

/// Embeds Kur(W) into the quotient of sp, or nullopt when the quotient is
/// not disconnected enough or some carrier is not resolvable enough.
std::optional<Embedding> embed_s5_frame(const Frame& w, const Frame& sp);

/// Subalgebra of the quotient generated by an embedded Kur(C_n) and all
/// clopens, or nullopt if sp has no Baire n-resolution.
std::optional<ClosureAlgebra> build_s5n_subalgebra(const Frame& sp, int n);

}  // namespace baire
