#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "baire/algebra.hpp"
#include "baire/formula.hpp"
#include "baire/frame.hpp"
#include "baire/world_set.hpp"

namespace baire {

using Valuation = std::map<unsigned, WorldSet>;

/// Compositional value of f: meet, complement, closure, and the two-valued
/// top test for the universal modality. Works on virtual carriers too.
WorldSet eval_formula(const ClosureAlgebra& alg, const Valuation& v, const Formula& f);

struct Countermodel {
  std::string algebra;
  /// Set when the model lives on a cluster frame (one entry per cluster).
  std::vector<int> cluster_sizes;
  std::optional<Frame> frame;
  Valuation valuation;
  WorldSet value;
  WorldSet top;
};

struct Verdict {
  bool valid = true;
  std::optional<Countermodel> countermodel;
};

struct SweepOptions {
  std::uint64_t max_assignments = std::uint64_t{1} << 30;
  bool parallel = true;
};

/// Sweeps every assignment of carrier elements to the variables of f. The
/// countermodel is the least failing assignment, reading the first variable
/// as the most significant digit. Needs a tabled algebra closed under its
/// closure; throws BudgetExceeded above max_assignments.
Verdict valid_in_algebra(const ClosureAlgebra& alg, const Formula& f, const SweepOptions& opts = {});

struct DecideOptions {
  /// Cap on the number of cluster models (or S5U models) examined.
  std::uint64_t max_models = std::uint64_t{1} << 26;
  /// Replace the cluster-count bound of s5u_decide.
  std::optional<int> max_clusters;
  /// Replace the cluster-size bound of s5u_decide.
  std::optional<int> max_cluster_size;
};

/// Validity of a universal-free formula on every cluster of size at most
/// `size` (equivalently on the cluster of exactly that size). Models are
/// cluster valuations up to bisimulation: sets of realized variable types.
/// Smaller clusters are tried first, so a countermodel has minimal size.
Verdict cluster_decide(const Formula& f, int size, const DecideOptions& opts = {});

/// S5 validity: cluster_decide with size = #diamond subformulas + 1.
Verdict s5_decide(const Formula& f, const DecideOptions& opts = {});

/// S5n validity: cluster_decide with size n.
Verdict s5n_decide(const Formula& f, int n, const DecideOptions& opts = {});

struct ScroggsClass {
  enum Kind { Inconsistent, Finite, S5 } kind = S5;
  /// The largest n whose cluster validates f, for Kind::Finite.
  int n = 0;
};

/// Where S5 + f sits in the chain of consistent extensions of S5. Throws
/// BudgetExceeded when the answer is a finite n above `cap`.
ScroggsClass classify_scroggs(const Formula& f, int cap = 8, const DecideOptions& opts = {});

/// S5U validity on every S5 frame with at most c clusters of size at most
/// m, c = #universal subformulas + 1, m = #diamond subformulas + 1 (either
/// bound can be overridden). Models are sets of distinct cluster types.
Verdict s5u_decide(const Formula& f, const DecideOptions& opts = {});

struct Entailment {
  bool holds = true;
  /// First premise not valid in the algebra, which makes `holds` vacuous.
  std::optional<std::size_t> failed_premise;
  std::optional<Verdict> premise_verdict;
  std::optional<Verdict> conclusion;
};

/// Global consequence in one algebra: if every premise is valid, so is f.
Entailment entails_global(const ClosureAlgebra& alg, const std::vector<Formula>& gamma,
                          const Formula& f, const SweepOptions& opts = {});

}  // namespace baire
