#include "baire/frame.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace baire {

Frame::Frame(std::vector<std::string> names, std::vector<WorldSet> successors)
    : names_(std::move(names)), succ_(std::move(successors)), pred_(succ_.size()) {
  const int n = size();
  for (int w = 0; w < n; ++w)
    for (int v : succ_[w].members()) pred_[v].insert(w);
  s5_ = true;
  for (int w = 0; w < n && s5_; ++w) s5_ = succ_[w] == pred_[w];
}

int Frame::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

WorldSet Frame::up(WorldSet a) const {
  WorldSet out;
  for (auto b = a.bits(); b; b &= b - 1) out |= succ_[std::countr_zero(b)];
  return out;
}

WorldSet Frame::down(WorldSet a) const {
  WorldSet out;
  for (auto b = a.bits(); b; b &= b - 1) out |= pred_[std::countr_zero(b)];
  return out;
}

std::vector<std::pair<int, int>> Frame::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int w = 0; w < size(); ++w)
    for (int v : succ_[w].members()) out.emplace_back(w, v);
  return out;
}

namespace {

void close_reflexive_transitive(std::vector<WorldSet>& succ) {
  const int n = static_cast<int>(succ.size());
  for (int w = 0; w < n; ++w) succ[w].insert(w);
  // Warshall over bit rows.
  for (int k = 0; k < n; ++k)
    for (int w = 0; w < n; ++w)
      if (succ[w].contains(k)) succ[w] |= succ[k];
}

Frame checked_frame(std::vector<std::string> names, std::vector<WorldSet> succ, bool auto_close) {
  const int n = static_cast<int>(succ.size());
  if (auto_close) {
    close_reflexive_transitive(succ);
  } else {
    for (int w = 0; w < n; ++w)
      if (!succ[w].contains(w))
        throw NotS4Error("relation is not reflexive: missing (" + names[w] + ", " + names[w] + ")",
                         names[w], names[w]);
    for (int w = 0; w < n; ++w)
      for (int v : succ[w].members())
        for (int u : succ[v].members())
          if (!succ[w].contains(u))
            throw NotS4Error("relation is not transitive: missing (" + names[w] + ", " + names[u] +
                                 ") via " + names[v],
                             names[w], names[u]);
  }
  return Frame(std::move(names), std::move(succ));
}

}  // namespace

Frame build_frame(const std::vector<std::string>& worlds,
                  const std::vector<std::pair<std::string, std::string>>& edges, bool auto_close,
                  const FrameLimits& limits) {
  const int cap = std::min(limits.max_worlds, kMaxWorlds);
  if (static_cast<int>(worlds.size()) > cap)
    throw BudgetExceeded("frame has " + std::to_string(worlds.size()) +
                         " worlds; the limit is " + std::to_string(cap));
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < worlds.size(); ++i)
    if (!index.emplace(worlds[i], static_cast<int>(i)).second)
      throw PreconditionError("duplicate world '" + worlds[i] + "'");
  std::vector<WorldSet> succ(worlds.size());
  for (const auto& [from, to] : edges) {
    auto a = index.find(from);
    auto b = index.find(to);
    if (a == index.end()) throw PreconditionError("edge endpoint '" + from + "' is not a world");
    if (b == index.end()) throw PreconditionError("edge endpoint '" + to + "' is not a world");
    succ[a->second].insert(b->second);
  }
  return checked_frame(worlds, std::move(succ), auto_close);
}

Frame frame_from_relation(int n, const std::vector<std::pair<int, int>>& edges, bool auto_close) {
  if (n < 0 || n > kMaxWorlds) throw PreconditionError("world count out of range");
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
  std::vector<WorldSet> succ(n);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw PreconditionError("edge endpoint out of range");
    succ[a].insert(b);
  }
  return checked_frame(std::move(names), std::move(succ), auto_close);
}

WorldSet alexandroff_closure(const Frame& fr, WorldSet a) { return fr.down(a); }

WorldSet alexandroff_interior(const Frame& fr, WorldSet a) {
  WorldSet out;
  for (int w : a.members())
    if (fr.successors(w).subset_of(a)) out.insert(w);
  return out;
}

std::vector<WorldSet> s4_clusters(const Frame& fr) {
  std::vector<WorldSet> out;
  WorldSet seen;
  for (int w = 0; w < fr.size(); ++w) {
    if (seen.contains(w)) continue;
    const auto c = fr.successors(w) & fr.predecessors(w);
    out.push_back(c);
    seen |= c;
  }
  return out;
}

ClusterDecomposition clusters(const Frame& fr) {
  if (!fr.is_s5()) throw PreconditionError("cluster decomposition needs an S5 frame");
  ClusterDecomposition d;
  d.clusters = s4_clusters(fr);
  d.number_of_clusters = static_cast<int>(d.clusters.size());
  if (!d.clusters.empty()) {
    d.lower_size = kMaxWorlds;
    for (auto c : d.clusters) {
      d.lower_size = std::min(d.lower_size, c.size());
      d.upper_size = std::max(d.upper_size, c.size());
    }
  }
  return d;
}

WorldSet qmax(const Frame& fr) {
  WorldSet out;
  for (int w = 0; w < fr.size(); ++w)
    if (fr.successors(w).subset_of(fr.predecessors(w))) out.insert(w);
  return out;
}

Frame n_cluster(int n) {
  if (n < 1) throw PreconditionError("a cluster needs at least one world");
  if (n > kMaxWorlds) throw BudgetExceeded("cluster size exceeds " + std::to_string(kMaxWorlds));
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = "w" + std::to_string(i);
  return Frame(std::move(names), std::vector<WorldSet>(n, WorldSet::first(n)));
}

Frame cluster_frame(const std::vector<int>& sizes) {
  const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
  if (total > kMaxWorlds) throw BudgetExceeded("cluster frame exceeds " + std::to_string(kMaxWorlds));
  std::vector<std::string> names;
  std::vector<WorldSet> succ;
  int base = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] < 1) throw PreconditionError("cluster sizes must be positive");
    const WorldSet block{WorldSet::first(sizes[c]).bits() << base};
    for (int j = 0; j < sizes[c]; ++j) {
      names.push_back("c" + std::to_string(c) + "w" + std::to_string(j));
      succ.push_back(block);
    }
    base += sizes[c];
  }
  return Frame(std::move(names), std::move(succ));
}

Subframe subframe(const Frame& fr, WorldSet region) {
  Subframe s{Frame({}, {}), region.members()};
  std::vector<int> local(fr.size(), -1);
  for (std::size_t i = 0; i < s.index_map.size(); ++i) local[s.index_map[i]] = static_cast<int>(i);
  std::vector<std::string> names;
  std::vector<WorldSet> succ;
  for (int w : s.index_map) {
    names.push_back(fr.name(w));
    WorldSet row;
    for (int v : (fr.successors(w) & region).members()) row.insert(local[v]);
    succ.push_back(row);
  }
  s.frame = Frame(std::move(names), std::move(succ));
  return s;
}

Frame disjoint_union(const Frame& a, const Frame& b) {
  if (a.size() + b.size() > kMaxWorlds)
    throw BudgetExceeded("disjoint union exceeds " + std::to_string(kMaxWorlds) + " worlds");
  bool collide = false;
  for (const auto& n : b.names()) collide = collide || a.index_of(n) >= 0;
  std::vector<std::string> names;
  std::vector<WorldSet> succ;
  for (int w = 0; w < a.size(); ++w) {
    names.push_back(collide ? "a." + a.name(w) : a.name(w));
    succ.push_back(a.successors(w));
  }
  for (int w = 0; w < b.size(); ++w) {
    names.push_back(collide ? "b." + b.name(w) : b.name(w));
    succ.push_back(WorldSet{b.successors(w).bits() << a.size()});
  }
  return Frame(std::move(names), std::move(succ));
}

}  // namespace baire
