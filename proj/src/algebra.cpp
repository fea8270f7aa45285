#include "baire/algebra.hpp"

#include <algorithm>

#include "baire/errors.hpp"

namespace baire {

ClosureAlgebra::ClosureAlgebra(std::string name, WorldSet top, std::vector<WorldSet> atoms,
                               ClosureRule closure)
    : name_(std::move(name)), top_(top), atoms_(std::move(atoms)), rule_(std::move(closure)) {
  WorldSet seen;
  for (auto a : atoms_) {
    if (a.empty()) throw PreconditionError("algebra atoms must be nonempty");
    if (a.intersects(seen)) throw PreconditionError("algebra atoms must be disjoint");
    seen |= a;
  }
  if (seen != top_) throw PreconditionError("algebra atoms must cover top");
  std::sort(atoms_.begin(), atoms_.end(),
            [](WorldSet x, WorldSet y) { return x.lowest() < y.lowest(); });
  if (enumerable()) {
    const std::uint64_t n = std::uint64_t{1} << atom_count();
    table_.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto c = rule_(decode(i)) & top_;
      if (!contains(c)) {
        // Closure leaves the carrier; keep evaluating through the rule.
        table_.clear();
        closure_closed_ = false;
        break;
      }
      table_[i] = static_cast<std::uint32_t>(encode(c));
    }
  }
}

std::uint64_t ClosureAlgebra::carrier_size() const {
  require_enumerable("carrier size");
  return std::uint64_t{1} << atom_count();
}

void ClosureAlgebra::require_enumerable(const char* what) const {
  if (!enumerable())
    throw BudgetExceeded(std::string(what) + " needs an enumerable carrier; '" + name_ + "' has " +
                         std::to_string(atom_count()) + " atoms (limit " +
                         std::to_string(kMaxEnumerableAtoms) + ")");
}

bool ClosureAlgebra::contains(WorldSet a) const {
  if (!a.subset_of(top_)) return false;
  for (auto at : atoms_)
    if (at.intersects(a) && !at.subset_of(a)) return false;
  return true;
}

WorldSet ClosureAlgebra::closure(WorldSet a) const {
  if (!table_.empty()) return decode(table_[encode(a)]);
  return rule_(a) & top_;
}

WorldSet ClosureAlgebra::least_above(WorldSet a) const {
  WorldSet out;
  for (auto at : atoms_)
    if (at.intersects(a)) out |= at;
  return out;
}

std::uint64_t ClosureAlgebra::encode(WorldSet a) const {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].intersects(a)) out |= std::uint64_t{1} << i;
  return out;
}

WorldSet ClosureAlgebra::decode(std::uint64_t coords) const {
  WorldSet out;
  for (auto b = coords; b; b &= b - 1) out |= atoms_[std::countr_zero(b)];
  return out;
}

std::vector<WorldSet> ClosureAlgebra::elements() const {
  require_enumerable("element enumeration");
  std::vector<WorldSet> out(carrier_size());
  for (std::uint64_t i = 0; i < out.size(); ++i) out[i] = decode(i);
  return out;
}

bool ClosureAlgebra::closed_under_closure() const {
  require_enumerable("closure check");
  return closure_closed_;
}

std::vector<WorldSet> ClosureAlgebra::clopens() const {
  std::vector<WorldSet> out;
  for (auto a : elements())
    if (is_clopen(a)) out.push_back(a);
  return out;
}

std::vector<WorldSet> ClosureAlgebra::clopen_atoms() const {
  const auto cl = clopens();
  std::vector<WorldSet> out;
  WorldSet covered;
  for (auto at : atoms_) {
    if (at.intersects(covered)) continue;
    WorldSet least = top_;
    for (auto c : cl)
      if (at.subset_of(c)) least &= c;
    out.push_back(least);
    covered |= least;
  }
  return out;
}

ClosureAlgebra kur_algebra_from_frame(const Frame& fr) {
  std::vector<WorldSet> atoms;
  for (int w = 0; w < fr.size(); ++w) atoms.push_back(WorldSet::singleton(w));
  return ClosureAlgebra("Kur", fr.worlds(), std::move(atoms),
                        [fr](WorldSet a) { return fr.down(a); });
}

AxiomVerdict verify_axioms(const ClosureAlgebra& alg, AxiomKind kind, const AxiomOptions& opts) {
  const auto n = alg.carrier_size();
  if (n > 0 && n > opts.max_pairs / n)
    throw BudgetExceeded("axiom check needs " + std::to_string(n) + "^2 pairs; budget is " +
                         std::to_string(opts.max_pairs));
  AxiomVerdict v;
  auto fail = [&](int axiom, WorldSet a, WorldSet b = {}) {
    v = AxiomVerdict{false, axiom, a, b};
    return v;
  };
  if (!alg.closure({}).empty()) return fail(4, {});
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto a = alg.decode(i);
    const auto ca = alg.closure(a);
    if (!alg.contains(ca)) return fail(1, a);
    if (!a.subset_of(ca)) return fail(1, a);
    if (!alg.closure(ca).subset_of(ca)) return fail(2, a);
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto a = alg.decode(i);
    const auto ca = alg.closure(a);
    for (std::uint64_t j = i; j < n; ++j) {
      const auto b = alg.decode(j);
      if (alg.closure(a | b) != (ca | alg.closure(b))) return fail(3, a, b);
    }
  }
  if (kind == AxiomKind::Monadic) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto a = alg.decode(i);
      const auto ca = alg.closure(a);
      if (alg.interior(ca) != ca) return fail(5, a);
    }
  }
  return v;
}

namespace {

// Splits every cell of `cells` along `cut`.
std::vector<WorldSet> refine(const std::vector<WorldSet>& cells, WorldSet cut) {
  std::vector<WorldSet> out;
  for (auto c : cells) {
    if (!(c & cut).empty()) out.push_back(c & cut);
    if (!(c - cut).empty()) out.push_back(c - cut);
  }
  return out;
}

}  // namespace

ClosureAlgebra generated_subalgebra(const ClosureAlgebra& alg, const std::vector<WorldSet>& generators,
                                    GenerationMode mode) {
  std::vector<WorldSet> cells;
  if (!alg.top().empty()) cells.push_back(alg.top());
  for (auto g : generators) {
    if (!alg.contains(g)) throw PreconditionError("generator is not an element of " + alg.name());
    cells = refine(cells, g);
  }
  if (mode == GenerationMode::Closure) {
    // Closure is additive, so the closures of the cells suffice.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < cells.size() && !changed; ++i) {
        auto next = refine(cells, alg.closure(cells[i]));
        if (next.size() != cells.size()) {
          cells = std::move(next);
          changed = true;
        }
      }
    }
  }
  return ClosureAlgebra(alg.name() + "/sub", alg.top(), std::move(cells), alg.rule());
}

ClosureAlgebra clopen_subalgebra(const ClosureAlgebra& alg) {
  return ClosureAlgebra(alg.name() + "/clopen", alg.top(), alg.clopen_atoms(), alg.rule());
}

namespace {

void require_same_top(const ClosureAlgebra& x, const ClosureAlgebra& y) {
  if (x.top() != y.top()) throw PreconditionError("subalgebras must share the same top element");
}

// Atoms of the Boolean algebra generated by both subalgebras.
std::vector<WorldSet> joint_atoms(const ClosureAlgebra& clopens, const ClosureAlgebra& b) {
  std::vector<WorldSet> out;
  for (auto a : clopens.atoms())
    for (auto x : b.atoms())
      if (a.intersects(x)) out.push_back(a & x);
  return out;
}

}  // namespace

std::vector<NormalPair> orthogonal_normal_form(WorldSet c, const ClosureAlgebra& clopens,
                                               const ClosureAlgebra& b) {
  require_same_top(clopens, b);
  const auto atoms = joint_atoms(clopens, b);
  {
    WorldSet rebuilt;
    for (auto at : atoms)
      if (at.intersects(c)) {
        if (!at.subset_of(c))
          throw PreconditionError("element is outside the generated subalgebra");
        rebuilt |= at;
      }
    if (rebuilt != c) throw PreconditionError("element is outside the generated subalgebra");
  }
  if (c.empty()) return {};

  const auto a_star = clopens.least_above(c);
  const auto b_star = b.least_above(c);
  if ((a_star & b_star) == c) return {{a_star, b_star}};

  // Initial representation: one term per joint atom below c, with the
  // clopen atom and the B atom as its factors.
  std::vector<NormalPair> terms;
  for (auto a : clopens.atoms())
    for (auto x : b.atoms())
      if (a.intersects(x) && (a & x).subset_of(c)) terms.push_back({a, x});

  // (a1&b1) | (a2&b2) = ((a1-a2)&b1) | ((a1&a2)&(b1|b2)) | ((a2-a1)&b2)
  std::uint64_t guard = 1;
  for (std::size_t i = 0; i < terms.size() && guard < (std::uint64_t{1} << 40); ++i) guard *= 3;
  for (std::uint64_t step = 0;; ++step) {
    if (step > guard) throw Error("normal form rewriting did not terminate");
    std::size_t i = 0, j = 0;
    bool found = false;
    for (i = 0; i < terms.size() && !found; ++i)
      for (j = i + 1; j < terms.size() && !found; ++j)
        found = terms[i].clopen.intersects(terms[j].clopen);
    if (!found) break;
    --i;
    --j;
    const auto [a1, b1] = terms[i];
    const auto [a2, b2] = terms[j];
    std::vector<NormalPair> replacement = {{a1 - a2, b1}, {a1 & a2, b1 | b2}, {a2 - a1, b2}};
    terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(j));
    terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(i));
    for (auto t : replacement)
      if (!(t.clopen & t.coefficient).empty()) terms.push_back(t);
  }
  std::sort(terms.begin(), terms.end(), [](const NormalPair& x, const NormalPair& y) {
    return x.clopen.lowest() < y.clopen.lowest();
  });
  return terms;
}

CompatibleForm compatible_normal_form(const std::vector<WorldSet>& cs, const ClosureAlgebra& clopens,
                                      const ClosureAlgebra& b) {
  require_same_top(clopens, b);
  CompatibleForm form;
  if (clopens.top().empty()) {
    form.coefficients.assign(cs.size(), {});
    return form;
  }
  form.partition = {clopens.top()};
  form.coefficients.clear();
  for (auto c : cs) {
    auto pairs = orthogonal_normal_form(c, clopens, b);
    WorldSet covered;
    for (const auto& p : pairs) covered |= p.clopen;
    if (covered != clopens.top()) pairs.push_back({clopens.top() - covered, WorldSet{}});

    std::vector<WorldSet> partition;
    std::vector<std::vector<WorldSet>> coeffs(form.coefficients.size() + 1);
    for (std::size_t i = 0; i < form.partition.size(); ++i)
      for (const auto& p : pairs) {
        const auto cell = form.partition[i] & p.clopen;
        if (cell.empty()) continue;
        partition.push_back(cell);
        for (std::size_t j = 0; j < form.coefficients.size(); ++j)
          coeffs[j].push_back(form.coefficients[j][i]);
        coeffs.back().push_back(p.coefficient);
      }
    form.partition = std::move(partition);
    form.coefficients = std::move(coeffs);
  }
  return form;
}

std::optional<std::vector<WorldSet>> kappa_disconnected(const ClosureAlgebra& alg, int k) {
  if (k < 1) throw PreconditionError("disconnectedness needs k >= 1");
  if (alg.top().empty()) return std::nullopt;
  if (k == 1) return std::vector<WorldSet>{alg.top()};
  auto atoms = alg.clopen_atoms();
  // Any k nonzero orthogonal clopens need at least k clopen atoms.
  if (static_cast<int>(atoms.size()) < k) return std::nullopt;
  std::stable_sort(atoms.begin(), atoms.end(), [](WorldSet x, WorldSet y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x.lowest() < y.lowest();
  });
  std::vector<WorldSet> out(atoms.begin(), atoms.begin() + (k - 1));
  WorldSet rest;
  for (std::size_t i = static_cast<std::size_t>(k - 1); i < atoms.size(); ++i) rest |= atoms[i];
  out.push_back(rest);
  return out;
}

}  // namespace baire
