#pragma once

// Brute-force reference implementations. They work on raw relation bitmasks
// and follow the textbook definitions directly, sharing nothing with the
// library beyond the Formula tree type.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "baire/formula.hpp"
#include "baire/frame.hpp"

namespace oracle {

using Mask = std::uint64_t;

inline Mask full(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline bool has(Mask m, int i) { return (m >> i) & 1; }

/// succ[w] = R(w) as a bitmask.
struct Rel {
  int n = 0;
  std::vector<Mask> succ;

  static Rel of(const baire::Frame& fr) {
    Rel r{fr.size(), std::vector<Mask>(fr.size(), 0)};
    for (int w = 0; w < fr.size(); ++w)
      for (int v = 0; v < fr.size(); ++v)
        if (fr.related(w, v)) r.succ[w] |= Mask{1} << v;
    return r;
  }

  bool related(int w, int v) const { return has(succ[w], v); }

  /// {w : w sees some point of a}
  Mask closure(Mask a) const {
    Mask out = 0;
    for (int w = 0; w < n; ++w)
      if (succ[w] & a) out |= Mask{1} << w;
    return out;
  }

  /// {w : every point w sees lies in a}
  Mask interior(Mask a) const {
    Mask out = 0;
    for (int w = 0; w < n; ++w)
      if ((succ[w] & ~a) == 0) out |= Mask{1} << w;
    return out;
  }

  bool is_open(Mask a) const {
    for (int w = 0; w < n; ++w)
      if (has(a, w) && (succ[w] & ~a)) return false;
    return true;
  }

  bool is_closed(Mask a) const { return is_open(full(n) & ~a); }

  /// w with wRv implying vRw.
  Mask qmax() const {
    Mask out = 0;
    for (int w = 0; w < n; ++w) {
      bool ok = true;
      for (int v = 0; v < n; ++v)
        if (related(w, v) && !related(v, w)) ok = false;
      if (ok) out |= Mask{1} << w;
    }
    return out;
  }

  bool reflexive_transitive() const {
    for (int w = 0; w < n; ++w) {
      if (!related(w, w)) return false;
      for (int v = 0; v < n; ++v)
        if (related(w, v) && (succ[v] & ~succ[w])) return false;
    }
    return true;
  }
};

/// Visits every subset of `m`, including 0 and m.
inline void subsets(Mask m, const std::function<void(Mask)>& fn) {
  Mask s = 0;
  while (true) {
    fn(s);
    if (s == m) break;
    s = (s - m) & m;
  }
}

/// Topological facts about a small space, tabulated over all subsets.
struct Space {
  Rel rel;
  std::vector<std::uint8_t> nowhere_dense;
  std::vector<std::uint8_t> meager;
  std::vector<Mask> opens;
  std::vector<Mask> closeds;
  /// rep[a]: the numerically least subset meager-equivalent to a.
  std::vector<Mask> rep;
  mutable std::vector<Mask> qclosure_memo;

  explicit Space(Rel r) : rel(std::move(r)) {
    if (rel.n > 10) throw std::runtime_error("oracle space too large");
    const std::size_t count = std::size_t{1} << rel.n;
    nowhere_dense.resize(count);
    meager.resize(count);
    for (Mask a = 0; a < count; ++a) {
      nowhere_dense[a] = rel.interior(rel.closure(a)) == 0;
      if (rel.is_open(a)) opens.push_back(a);
      if (rel.is_closed(a)) closeds.push_back(a);
    }
    // Meager: a union of nowhere dense sets. In a finite space every union
    // is finite, so a is meager iff its nowhere dense subsets cover it.
    for (Mask a = 0; a < count; ++a) {
      Mask cover = 0;
      subsets(a, [&](Mask s) {
        if (nowhere_dense[s]) cover |= s;
      });
      meager[a] = cover == a;
    }
    rep.assign(count, 0);
    for (Mask a = 0; a < count; ++a) {
      rep[a] = a;
      for (Mask b = 0; b < a; ++b)
        if (equivalent(a, b)) {
          rep[a] = b;
          break;
        }
    }
  }

  int n() const { return rel.n; }
  Mask all() const { return full(rel.n); }
  bool is_meager(Mask a) const { return meager[a]; }
  bool equivalent(Mask a, Mask b) const { return meager[a & ~b] && meager[b & ~a]; }
  /// [a] below [b]
  bool below(Mask a, Mask b) const { return meager[a & ~b]; }

  /// A closed C whose class is the least closed class above [a].
  Mask least_closed_above(Mask a) const {
    std::vector<Mask> above;
    for (auto c : closeds)
      if (below(a, c)) above.push_back(c);
    for (auto c : above) {
      bool least = true;
      for (auto d : above)
        if (!below(c, d)) {
          least = false;
          break;
        }
      if (least) return c;
    }
    throw std::runtime_error("no least closed class above a set");
  }

  /// Canonical class representatives, ascending.
  std::vector<Mask> classes() const {
    std::vector<Mask> out;
    for (Mask a = 0; a < rep.size(); ++a)
      if (rep[a] == a) out.push_back(a);
    return out;
  }

  /// The quotient closure on class representatives (memoized).
  Mask qclosure(Mask a) const {
    if (qclosure_memo.empty()) qclosure_memo.assign(rep.size(), ~Mask{0});
    auto& m = qclosure_memo[rep[a]];
    if (m == ~Mask{0}) m = rep[least_closed_above(a)];
    return m;
  }
  Mask qcomplement(Mask a) const { return rep[all() & ~a]; }
  Mask qmeet(Mask a, Mask b) const { return rep[a & b]; }
  Mask qtop() const { return rep[all()]; }
};

/// Kripke evaluation: <>phi holds at w iff some successor satisfies phi.
inline Mask eval(const Rel& r, const baire::Formula& f, const std::map<unsigned, Mask>& val) {
  using baire::Op;
  switch (f.op()) {
    case Op::Var: return val.at(f.var_index());
    case Op::And: return eval(r, f.left(), val) & eval(r, f.right(), val);
    case Op::Not: return full(r.n) & ~eval(r, f.child(), val);
    case Op::Diamond: return r.closure(eval(r, f.child(), val));
    case Op::Forall: return eval(r, f.child(), val) == full(r.n) ? full(r.n) : 0;
    default: throw std::runtime_error("oracle needs a desugared formula");
  }
}

/// Evaluation in the quotient of `sp`, on class representatives.
inline Mask eval_quotient(const Space& sp, const baire::Formula& f, const std::map<unsigned, Mask>& val) {
  using baire::Op;
  switch (f.op()) {
    case Op::Var: return sp.rep[val.at(f.var_index())];
    case Op::And: return sp.qmeet(eval_quotient(sp, f.left(), val), eval_quotient(sp, f.right(), val));
    case Op::Not: return sp.qcomplement(eval_quotient(sp, f.child(), val));
    case Op::Diamond: return sp.qclosure(eval_quotient(sp, f.child(), val));
    case Op::Forall: return eval_quotient(sp, f.child(), val) == sp.qtop() ? sp.qtop() : sp.rep[0];
    default: throw std::runtime_error("oracle needs a desugared formula");
  }
}

/// Variables of f, ascending.
inline std::vector<unsigned> variables(const baire::Formula& f) {
  std::vector<unsigned> out;
  std::function<void(const baire::Formula&)> walk = [&](const baire::Formula& g) {
    if (g.op() == baire::Op::Var) {
      auto it = std::lower_bound(out.begin(), out.end(), g.var_index());
      if (it == out.end() || *it != g.var_index()) out.insert(it, g.var_index());
      return;
    }
    if (g.is_binary()) {
      walk(g.left());
      walk(g.right());
    } else if (g.is_unary()) {
      walk(g.child());
    }
  };
  walk(f);
  return out;
}

/// Every assignment of `values` to `vars`; stops when fn returns true.
inline bool any_valuation(const std::vector<unsigned>& vars, const std::vector<Mask>& values,
                          const std::function<bool(const std::map<unsigned, Mask>&)>& fn) {
  std::map<unsigned, Mask> val;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) return fn(val);
    for (auto v : values) {
      val[vars[i]] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

/// Validity on a frame by sweeping every valuation.
inline bool valid_on_frame(const Rel& r, const baire::Formula& f) {
  std::vector<Mask> values;
  subsets(full(r.n), [&](Mask s) { values.push_back(s); });
  return !any_valuation(variables(f), values, [&](const std::map<unsigned, Mask>& v) {
    return eval(r, f, v) != full(r.n);
  });
}

/// Validity in the quotient of a space by sweeping valuations into classes.
inline bool valid_in_quotient(const Space& sp, const baire::Formula& f) {
  const auto cls = sp.classes();
  return !any_valuation(variables(f), cls, [&](const std::map<unsigned, Mask>& v) {
    return eval_quotient(sp, f, v) != sp.qtop();
  });
}

/// Non-decreasing sequences of length `len` over [0, bound): multisets.
inline bool any_multiset(int bound, int len, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> seq(len, 0);
  std::function<bool(int, int)> rec = [&](int i, int lo) {
    if (i == len) return fn(seq);
    for (int t = lo; t < bound; ++t) {
      seq[i] = t;
      if (rec(i + 1, t)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

/// Relation of disjoint clusters with the given sizes (laid out in order).
inline Rel cluster_rel(const std::vector<int>& sizes) {
  Rel r;
  int base = 0;
  for (int s : sizes) {
    const Mask block = full(s) << base;
    for (int j = 0; j < s; ++j) r.succ.push_back(block);
    base += s;
  }
  r.n = base;
  return r;
}

/// Valuation giving point i the type types[i] (bit j of a type is variable vars[j]).
inline std::map<unsigned, Mask> typed_valuation(const std::vector<unsigned>& vars, const std::vector<int>& types) {
  std::map<unsigned, Mask> val;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    Mask m = 0;
    for (std::size_t i = 0; i < types.size(); ++i)
      if (has(static_cast<Mask>(types[i]), static_cast<int>(j))) m |= Mask{1} << i;
    val[vars[j]] = m;
  }
  return val;
}

/// Validity on the n-point cluster. Any permutation of a cluster is an
/// automorphism, so valuations are swept up to permutation: a multiset of
/// point types.
inline bool valid_on_cluster(const baire::Formula& f, int n) {
  const auto vars = variables(f);
  const Rel r = cluster_rel({n});
  const int types = 1 << vars.size();
  return !any_multiset(types, n, [&](const std::vector<int>& seq) {
    return eval(r, f, typed_valuation(vars, seq)) != full(n);
  });
}

/// Validity on every S5 frame with at most `clusters` clusters of size at
/// most `size`. A cluster is a multiset of point types; a frame is a
/// multiset of clusters.
inline bool valid_on_small_s5_frames(const baire::Formula& f, int clusters, int size) {
  const auto vars = variables(f);
  const int types = 1 << vars.size();
  std::vector<std::vector<int>> kinds;
  for (int s = 1; s <= size; ++s)
    any_multiset(types, s, [&](const std::vector<int>& seq) {
      kinds.push_back(seq);
      return false;
    });
  for (int c = 1; c <= clusters; ++c) {
    const bool bad = any_multiset(static_cast<int>(kinds.size()), c, [&](const std::vector<int>& pick) {
      std::vector<int> sizes, point_types;
      for (int k : pick) {
        sizes.push_back(static_cast<int>(kinds[k].size()));
        point_types.insert(point_types.end(), kinds[k].begin(), kinds[k].end());
      }
      const Rel r = cluster_rel(sizes);
      return eval(r, f, typed_valuation(vars, point_types)) != full(r.n);
    });
    if (bad) return false;
  }
  return true;
}

/// Whether Kur(W) embeds into the quotient of sp: images of the points of W
/// must partition the top class into nonzero classes, and the closure of
/// each image must be the join of the images of its cluster. Any such
/// family lifts to a partition of the worlds of sp, so every labelling of
/// those worlds by points of W is tried.
inline bool embedding_exists(const Rel& w, const Space& sp) {
  std::vector<int> pts;
  for (int i = 0; i < sp.n(); ++i) pts.push_back(i);
  std::vector<Mask> image(w.n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == pts.size()) {
      for (int a = 0; a < w.n; ++a)
        if (sp.rep[image[a]] == sp.rep[0]) return false;
      for (int a = 0; a < w.n; ++a) {
        Mask cluster_image = 0;
        for (int b = 0; b < w.n; ++b)
          if (w.related(a, b)) cluster_image |= image[b];
        if (sp.qclosure(sp.rep[image[a]]) != sp.rep[cluster_image]) return false;
      }
      return true;
    }
    for (int a = 0; a < w.n; ++a) {
      image[a] |= Mask{1} << pts[i];
      if (rec(i + 1)) return true;
      image[a] &= ~(Mask{1} << pts[i]);
    }
    return false;
  };
  if (w.n == 0) return false;
  return rec(0);
}

}  // namespace oracle
