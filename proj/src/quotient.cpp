#include "baire/quotient.hpp"

#include "baire/errors.hpp"

namespace baire {

bool nowhere_dense(const Frame& sp, WorldSet a) {
  return alexandroff_interior(sp, alexandroff_closure(sp, a)).empty();
}

bool is_meager(const Frame& sp, WorldSet a) { return !a.intersects(qmax(sp)); }

bool is_baire_space(const Frame& sp) {
  // Every nonempty open set contains some R(w), so these suffice.
  for (int w = 0; w < sp.size(); ++w)
    if (is_meager(sp, sp.successors(w))) return false;
  return true;
}

namespace {

template <typename Pred>
std::vector<WorldSet> filter_subsets(const Frame& sp, Pred pred) {
  if (sp.size() > kMaxEnumerableWorlds)
    throw BudgetExceeded("enumerating subsets of a " + std::to_string(sp.size()) +
                         "-world frame exceeds the limit of " +
                         std::to_string(kMaxEnumerableWorlds));
  std::vector<WorldSet> out;
  for_each_subset(sp.worlds(), [&](WorldSet s) {
    if (pred(s)) out.push_back(s);
  });
  return out;
}

}  // namespace

std::vector<WorldSet> enumerate_opens(const Frame& sp) {
  return filter_subsets(sp, [&](WorldSet s) { return sp.is_open(s); });
}

std::vector<WorldSet> enumerate_closed(const Frame& sp) {
  return filter_subsets(sp, [&](WorldSet s) { return sp.is_closed(s); });
}

namespace {

ClosureAlgebra quotient_algebra(const Frame& sp, WorldSet top) {
  std::vector<WorldSet> atoms;
  for (int q : top.members()) atoms.push_back(WorldSet::singleton(q));
  // The least closed set above [A] is R^-1(A & qmax); its class is the closure.
  return ClosureAlgebra("Baire", top, std::move(atoms),
                        [sp, top](WorldSet a) { return sp.down(a & top) & top; });
}

}  // namespace

Quotient::Quotient(Frame sp)
    : space_(std::move(sp)),
      qmax_(baire::qmax(space_)),
      ideal_{space_.worlds() - qmax_},
      algebra_(quotient_algebra(space_, qmax_)) {}

WorldSet Quotient::closure(WorldSet a) const { return space_.down(cls(a)) & qmax_; }

bool Quotient::is_open_element(WorldSet a) const {
  // R(A) is the least open set containing A; any open U with [U] = [A]
  // contains cls(A), hence R(cls(A)).
  const auto r = cls(a);
  return cls(space_.up(r)) == r;
}

bool Quotient::is_closed_element(WorldSet a) const {
  const auto r = cls(a);
  return cls(space_.down(r)) == r;
}

Quotient build_quotient(const Frame& sp) { return Quotient(sp); }

WorldSet closure_in_quotient(const Quotient& q, WorldSet a) { return q.closure(a); }

BanachVerdict banach_category_check(const Frame& sp, const std::vector<WorldSet>& opens) {
  BanachVerdict v;
  for (auto u : opens) {
    if (!sp.is_open(u)) throw PreconditionError("listed set is not open");
    if (!is_meager(sp, u)) throw PreconditionError("listed set is not meager");
    v.union_of_family |= u;
  }
  v.pass = is_meager(sp, v.union_of_family);
  return v;
}

}  // namespace baire
