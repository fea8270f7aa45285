#include "baire/decision.hpp"

#include <cmath>
#include <functional>

#include "baire/errors.hpp"
#include "baire/sweep.hpp"

namespace baire {

namespace {

WorldSet eval_rec(const ClosureAlgebra& alg, const Valuation& v, const Formula& f) {
  switch (f.op()) {
    case Op::Var: {
      auto it = v.find(f.var_index());
      if (it == v.end())
        throw PreconditionError("variable p" + std::to_string(f.var_index()) + " is unassigned");
      return it->second;
    }
    case Op::And: return alg.meet(eval_rec(alg, v, f.left()), eval_rec(alg, v, f.right()));
    case Op::Not: return alg.complement(eval_rec(alg, v, f.child()));
    case Op::Diamond: return alg.closure(eval_rec(alg, v, f.child()));
    case Op::Forall: return eval_rec(alg, v, f.child()) == alg.top() ? alg.top() : WorldSet{};
    default: throw PreconditionError("formula is not desugared");
  }
}

}  // namespace

WorldSet eval_formula(const ClosureAlgebra& alg, const Valuation& v, const Formula& f) {
  for (const auto& [var, a] : v)
    if (!alg.contains(a))
      throw PreconditionError("value of p" + std::to_string(var) + " is not in the carrier");
  return eval_rec(alg, v, is_desugared(f) ? f : desugar(f));
}

Verdict valid_in_algebra(const ClosureAlgebra& alg, const Formula& f, const SweepOptions& opts) {
  if (!alg.enumerable())
    throw BudgetExceeded("algebra " + alg.name() + " has " + std::to_string(alg.atom_count()) +
                         " atoms; sweeps need at most " + std::to_string(kMaxEnumerableAtoms));
  if (alg.closure_table().empty())
    throw PreconditionError("closure leaves the carrier of " + alg.name());
  const Formula g = is_desugared(f) ? f : desugar(f);
  const CompiledFormula cf(g);
  const auto bits = static_cast<std::uint64_t>(alg.atom_count()) * cf.slot_count();
  if (bits >= 63 || (std::uint64_t{1} << bits) > opts.max_assignments)
    throw BudgetExceeded("2^" + std::to_string(bits) + " assignments exceed the budget of " +
                         std::to_string(opts.max_assignments));
  const std::uint64_t total = std::uint64_t{1} << bits;
  const auto bad = opts.parallel ? sweep_parallel(alg, cf, 0, total) : sweep_serial(alg, cf, 0, total);
  Verdict v;
  if (!bad) return v;
  v.valid = false;
  std::vector<std::uint64_t> slots(cf.slot_count() + 1);
  decode_assignment(*bad, alg.atom_count(), cf.slot_count(), slots.data());
  Countermodel cm{alg.name(), {}, std::nullopt, {}, {}, alg.top()};
  for (std::size_t j = 0; j < cf.slot_count(); ++j) cm.valuation[cf.variables()[j]] = alg.decode(slots[j]);
  cm.value = eval_formula(alg, cm.valuation, g);
  v.countermodel = std::move(cm);
  return v;
}

namespace {

// A model up to bisimulation: each cluster is its set of realized types,
// a type being the bit vector of true variables (slot j is bit j).
using Cluster = std::vector<std::uint32_t>;
using Model = std::vector<Cluster>;

struct Layout {
  std::vector<std::uint64_t> slots;
  std::vector<std::uint64_t> cluster_masks;
  std::uint64_t top = 0;
};

Layout lay_out(const Model& m, std::size_t k) {
  Layout l;
  l.slots.assign(k + 1, 0);
  int p = 0;
  for (const auto& c : m) {
    std::uint64_t mask = 0;
    for (auto t : c) {
      for (std::size_t j = 0; j < k; ++j)
        if (t >> j & 1) l.slots[j] |= std::uint64_t{1} << p;
      mask |= std::uint64_t{1} << p;
      ++p;
    }
    l.cluster_masks.push_back(mask);
    l.top |= mask;
  }
  return l;
}

std::uint64_t model_value(const CompiledFormula& cf, const Model& m, std::vector<std::uint64_t>& scratch) {
  const auto l = lay_out(m, cf.slot_count());
  return cf.run(l.top, l.slots.data(), scratch.data(), [&](std::uint64_t x) {
    std::uint64_t r = 0;
    for (auto c : l.cluster_masks)
      if (c & x) r |= c;
    return r;
  });
}

bool falsified(const CompiledFormula& cf, const Model& m, std::vector<std::uint64_t>& scratch) {
  std::uint64_t top = 0;
  std::size_t points = 0;
  for (const auto& c : m) points += c.size();
  top = points == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << points) - 1;
  return model_value(cf, m, scratch) != top;
}

// Drop points, then whole clusters, while the model stays falsifying.
Model minimize(const CompiledFormula& cf, Model m, std::vector<std::uint64_t>& scratch) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < m.size() && !changed; ++i) {
      for (std::size_t j = 0; j < m[i].size() && !changed; ++j) {
        Model trial = m;
        if (trial[i].size() == 1) {
          if (trial.size() == 1) continue;
          trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          trial[i].erase(trial[i].begin() + static_cast<std::ptrdiff_t>(j));
        }
        if (falsified(cf, trial, scratch)) {
          m = std::move(trial);
          changed = true;
        }
      }
    }
  }
  return m;
}

Countermodel to_countermodel(const CompiledFormula& cf, const Model& m, std::vector<std::uint64_t>& scratch) {
  std::vector<int> sizes;
  for (const auto& c : m) sizes.push_back(static_cast<int>(c.size()));
  Frame fr = sizes.size() == 1 ? n_cluster(sizes[0]) : cluster_frame(sizes);
  const auto l = lay_out(m, cf.slot_count());
  std::string name = "Kur(C" + std::to_string(sizes[0]);
  for (std::size_t i = 1; i < sizes.size(); ++i) name += " + C" + std::to_string(sizes[i]);
  name += ")";
  Countermodel cm{name, sizes, std::move(fr), {}, WorldSet{model_value(cf, m, scratch)}, WorldSet{l.top}};
  for (std::size_t j = 0; j < cf.slot_count(); ++j) cm.valuation[cf.variables()[j]] = WorldSet{l.slots[j]};
  return cm;
}

// Visits the r-subsets of {0..n-1} in lexicographic order until fn is true.
bool any_combination(std::size_t n, std::size_t r, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (r > n) return false;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    if (fn(idx)) return true;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

long double choose_sum(long double n, std::size_t upto) {
  long double total = 0, c = 1;
  for (std::size_t i = 1; i <= upto && i <= n; ++i) {
    c = c * (n - static_cast<long double>(i) + 1) / static_cast<long double>(i);
    total += c;
  }
  return total;
}

void check_budget(long double count, std::uint64_t cap, const std::string& what) {
  if (count > static_cast<long double>(cap))
    throw BudgetExceeded(what + ": about " + std::to_string(static_cast<double>(count)) +
                         " models exceed the budget of " + std::to_string(cap));
}

std::size_t type_count(std::size_t k) {
  if (k > 20) throw BudgetExceeded("too many variables for type enumeration: " + std::to_string(k));
  return std::size_t{1} << k;
}

Formula prepared(const Formula& f) { return is_desugared(f) ? f : desugar(f); }

}  // namespace

Verdict cluster_decide(const Formula& f, int size, const DecideOptions& opts) {
  if (size < 1) throw PreconditionError("cluster size must be positive");
  const Formula g = prepared(f);
  const auto info = subformulas(g);
  if (info.foralls > 0) throw PreconditionError("cluster validity needs a formula without A/E");
  const CompiledFormula cf(g);
  const std::size_t types = type_count(cf.slot_count());
  const std::size_t s = std::min<std::size_t>(static_cast<std::size_t>(size), types);
  if (s > 64) throw BudgetExceeded("cluster models above 64 points");
  check_budget(choose_sum(static_cast<long double>(types), s), opts.max_models, "cluster validity");

  std::vector<std::uint64_t> scratch(cf.program().size());
  Model found;
  for (std::size_t r = 1; r <= s && found.empty(); ++r) {
    any_combination(types, r, [&](const std::vector<std::size_t>& idx) {
      Model m{Cluster(idx.begin(), idx.end())};
      if (!falsified(cf, m, scratch)) return false;
      found = std::move(m);
      return true;
    });
  }
  Verdict v;
  if (found.empty()) return v;
  v.valid = false;
  v.countermodel = to_countermodel(cf, minimize(cf, found, scratch), scratch);
  return v;
}

Verdict s5_decide(const Formula& f, const DecideOptions& opts) {
  const Formula g = prepared(f);
  return cluster_decide(g, subformulas(g).diamonds + 1, opts);
}

Verdict s5n_decide(const Formula& f, int n, const DecideOptions& opts) { return cluster_decide(f, n, opts); }

ScroggsClass classify_scroggs(const Formula& f, int cap, const DecideOptions& opts) {
  const auto v = s5_decide(f, opts);
  if (v.valid) return {ScroggsClass::S5, 0};
  // The countermodel has the least falsifying cluster size t, so exactly
  // the clusters of size below t validate f.
  const int t = v.countermodel->cluster_sizes.front();
  if (t == 1) return {ScroggsClass::Inconsistent, 0};
  if (t - 1 > cap)
    throw BudgetExceeded("formula holds on clusters up to size " + std::to_string(t - 1) +
                         ", above the cap of " + std::to_string(cap));
  return {ScroggsClass::Finite, t - 1};
}

Verdict s5u_decide(const Formula& f, const DecideOptions& opts) {
  const Formula g = prepared(f);
  const auto info = subformulas(g);
  const int c = opts.max_clusters.value_or(info.foralls + 1);
  const int m = opts.max_cluster_size.value_or(info.diamonds + 1);
  if (c < 1 || m < 1) throw PreconditionError("cluster bounds must be positive");
  const CompiledFormula cf(g);
  const std::size_t types = type_count(cf.slot_count());
  const std::size_t s = std::min<std::size_t>(static_cast<std::size_t>(m), types);
  if (s * static_cast<std::size_t>(c) > 64) throw BudgetExceeded("S5U models above 64 points");
  const long double clusters = choose_sum(static_cast<long double>(types), s);
  check_budget(clusters, opts.max_models, "S5U validity");
  check_budget(choose_sum(clusters, static_cast<std::size_t>(c)), opts.max_models, "S5U validity");

  std::vector<Cluster> kinds;
  for (std::size_t r = 1; r <= s; ++r)
    any_combination(types, r, [&](const std::vector<std::size_t>& idx) {
      kinds.emplace_back(idx.begin(), idx.end());
      return false;
    });

  std::vector<std::uint64_t> scratch(cf.program().size());
  Model found;
  for (std::size_t r = 1; r <= static_cast<std::size_t>(c) && found.empty(); ++r) {
    any_combination(kinds.size(), r, [&](const std::vector<std::size_t>& idx) {
      Model model;
      for (auto i : idx) model.push_back(kinds[i]);
      if (!falsified(cf, model, scratch)) return false;
      found = std::move(model);
      return true;
    });
  }
  Verdict v;
  if (found.empty()) return v;
  v.valid = false;
  v.countermodel = to_countermodel(cf, minimize(cf, found, scratch), scratch);
  return v;
}

Entailment entails_global(const ClosureAlgebra& alg, const std::vector<Formula>& gamma, const Formula& f,
                          const SweepOptions& opts) {
  Entailment e;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    auto v = valid_in_algebra(alg, gamma[i], opts);
    if (!v.valid) {
      e.failed_premise = i;
      e.premise_verdict = std::move(v);
      return e;
    }
  }
  e.conclusion = valid_in_algebra(alg, f, opts);
  e.holds = e.conclusion->valid;
  return e;
}

}  // namespace baire
