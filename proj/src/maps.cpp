#include "baire/maps.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "baire/errors.hpp"

namespace baire {

PartialMap::PartialMap(Frame source, Frame target, std::vector<int> graph)
    : source_(std::move(source)), target_(std::move(target)), graph_(std::move(graph)) {
  if (static_cast<int>(graph_.size()) != source_.size())
    throw PreconditionError("map graph must list every source world");
  for (int y : graph_)
    if (y < -1 || y >= target_.size()) throw PreconditionError("map value outside the target");
}

std::optional<int> PartialMap::at(int x) const {
  if (graph_[x] < 0) return std::nullopt;
  return graph_[x];
}

WorldSet PartialMap::domain() const {
  WorldSet out;
  for (int x = 0; x < source_.size(); ++x)
    if (graph_[x] >= 0) out.insert(x);
  return out;
}

WorldSet PartialMap::preimage(WorldSet b) const {
  WorldSet out;
  for (int x = 0; x < source_.size(); ++x)
    if (graph_[x] >= 0 && b.contains(graph_[x])) out.insert(x);
  return out;
}

WorldSet PartialMap::image(WorldSet a) const {
  WorldSet out;
  for (int x : a.members())
    if (graph_[x] >= 0) out.insert(graph_[x]);
  return out;
}

PartialMap partial_map_from_pairs(Frame source, Frame target,
                                  const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<int> graph(source.size(), -1);
  for (const auto& [x, y] : pairs) {
    const int xi = source.index_of(x);
    const int yi = target.index_of(y);
    if (xi < 0) throw PreconditionError("map argument '" + x + "' is not a source world");
    if (yi < 0) throw PreconditionError("map value '" + y + "' is not a target world");
    if (graph[xi] >= 0 && graph[xi] != yi)
      throw PreconditionError("map is not single-valued at '" + x + "'");
    graph[xi] = yi;
  }
  return PartialMap(std::move(source), std::move(target), std::move(graph));
}

namespace {

class CheckBudget {
public:
  explicit CheckBudget(std::uint64_t cap) : cap_(cap) {}
  void require(std::uint64_t n, const char* what) const {
    if (n > cap_)
      throw BudgetExceeded(std::string(what) + " needs " + std::to_string(n) +
                           " checks; budget is " + std::to_string(cap_));
  }

private:
  std::uint64_t cap_;
};

std::uint64_t pow2(int n) { return n >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << n; }

}  // namespace

BaireMapProperties check_baire_map(const PartialMap& f, const MapCheckOptions& opts) {
  const auto& x = f.source();
  const auto& y = f.target();
  const Quotient qx(x);
  const Quotient qy(y);
  const CheckBudget budget(opts.max_checks);
  BaireMapProperties p;

  p.almost_everywhere = is_meager(x, x.worlds() - f.domain());

  // Every meager B of Y has meager preimage.
  budget.require(pow2(qy.ideal().largest_meager.size()), "properness");
  p.proper = true;
  for_each_subset(qy.ideal().largest_meager, [&](WorldSet b) {
    if (p.proper && !is_meager(x, f.preimage(b))) p.proper = false;
  });

  // Every open V of Y has [f^-1(V)] open.
  const auto opens_y = enumerate_opens(y);
  p.baire_continuous = std::all_of(opens_y.begin(), opens_y.end(), [&](WorldSet v) {
    return qx.is_open_element(f.preimage(v));
  });

  // Every nonempty open U and meager M of X give a nonzero open [f(U \ M)].
  const auto opens_x = enumerate_opens(x);
  budget.require(opens_x.size() * pow2(qx.ideal().largest_meager.size()), "Baire-openness");
  p.baire_open = true;
  for (auto u : opens_x) {
    if (u.empty()) continue;
    for_each_subset(qx.ideal().largest_meager, [&](WorldSet m) {
      if (!p.baire_open) return;
      const auto img = qy.cls(f.image(u - m));
      if (img.empty() || !qy.is_open_element(img)) p.baire_open = false;
    });
    if (!p.baire_open) break;
  }

  // f^-1(A) meager implies A meager, for every A of Y.
  budget.require(pow2(y.size()), "exactness");
  p.exact = true;
  for_each_subset(y.worlds(), [&](WorldSet a) {
    if (p.exact && is_meager(x, f.preimage(a)) && !is_meager(y, a)) p.exact = false;
  });

  p.is_baire_map = p.almost_everywhere && p.proper && p.baire_continuous && p.baire_open;
  return p;
}

bool nowhere_meager_in(const Frame& sp, WorldSet region, WorldSet a) {
  if (!sp.is_open(region)) throw PreconditionError("resolution region must be open");
  // Nonempty opens of the subspace are up-sets inside the region; each
  // contains some R(w), and non-meagerness passes to supersets.
  const auto q = qmax(sp);
  for (int w : region.members())
    if ((a & sp.successors(w) & q).empty()) return false;
  return true;
}

bool nowhere_meager(const Frame& sp, WorldSet a) { return nowhere_meager_in(sp, sp.worlds(), a); }

bool is_valid_resolution(const Resolution& res) {
  if (res.parts.empty()) return false;
  WorldSet seen;
  for (auto p : res.parts) {
    if (p.intersects(seen)) return false;
    seen |= p;
  }
  if (seen != res.region) return false;
  return std::all_of(res.parts.begin(), res.parts.end(), [&](WorldSet p) {
    return nowhere_meager_in(res.space, res.region, p);
  });
}

namespace {

class ResolutionSearch {
public:
  ResolutionSearch(const Frame& sp, WorldSet region, int k) : sp_(sp), k_(k) {
    const auto q = qmax(sp) & region;
    for (auto c : s4_clusters(sp))
      if (c.subset_of(q)) clusters_.push_back(c);
    for (std::size_t ci = 0; ci < clusters_.size(); ++ci) {
      int rank = 0;
      for (int w : clusters_[ci].members()) points_.push_back({w, static_cast<int>(ci), rank++});
    }
    std::sort(points_.begin(), points_.end(),
              [](const Point& a, const Point& b) { return a.world < b.world; });
    remaining_.resize(clusters_.size());
    hit_.assign(clusters_.size(), std::vector<bool>(k, false));
    missing_.assign(clusters_.size(), k);
    for (std::size_t ci = 0; ci < clusters_.size(); ++ci) remaining_[ci] = clusters_[ci].size();
    parts_.assign(k, WorldSet{});
  }

  std::optional<std::vector<WorldSet>> run() {
    if (!assign(0)) return std::nullopt;
    return parts_;
  }

private:
  struct Point {
    int world;
    int cluster;
    int rank;
  };

  bool assign(std::size_t i) {
    if (i == points_.size()) {
      return std::all_of(missing_.begin(), missing_.end(), [](int m) { return m == 0; });
    }
    const auto& pt = points_[i];
    const int c = pt.cluster;
    --remaining_[c];
    for (int step = 0; step < k_; ++step) {
      const int part = (pt.rank + step) % k_;
      const bool fresh = !hit_[c][part];
      // Prune: the cluster's unassigned points must cover its missing parts.
      if (missing_[c] - (fresh ? 1 : 0) > remaining_[c]) continue;
      parts_[part].insert(pt.world);
      if (fresh) {
        hit_[c][part] = true;
        --missing_[c];
      }
      if (assign(i + 1)) return true;
      parts_[part].erase(pt.world);
      if (fresh) {
        hit_[c][part] = false;
        ++missing_[c];
      }
    }
    ++remaining_[c];
    return false;
  }

  const Frame& sp_;
  int k_;
  std::vector<WorldSet> clusters_;
  std::vector<Point> points_;
  std::vector<int> remaining_;
  std::vector<std::vector<bool>> hit_;
  std::vector<int> missing_;
  std::vector<WorldSet> parts_;
};

}  // namespace

std::optional<Resolution> find_baire_resolution_in(const Frame& sp, WorldSet region, int k) {
  if (k < 1) throw PreconditionError("resolution needs k >= 1");
  if (!is_baire_space(sp)) throw PreconditionError("space is not a Baire space");
  if (!sp.is_open(region)) throw PreconditionError("resolution region must be open");
  if (region.empty()) return std::nullopt;
  auto parts = ResolutionSearch(sp, region, k).run();
  if (!parts) return std::nullopt;
  (*parts)[0] |= region - qmax(sp);
  return Resolution{sp, region, std::move(*parts)};
}

std::optional<Resolution> find_baire_resolution(const Frame& sp, int k) {
  return find_baire_resolution_in(sp, sp.worlds(), k);
}

InducedHom::InducedHom(PartialMap f)
    : f_(std::move(f)), source_q_(f_.source()), target_q_(f_.target()) {
  const auto meager = target_q_.ideal().largest_meager;
  for_each_subset(target_q_.qmax(), [&](WorldSet rep) {
    if (!well_defined_) return;
    const auto image = apply(rep);
    for_each_subset(meager, [&](WorldSet m) {
      if (well_defined_ && apply(rep | m) != image) well_defined_ = false;
    });
  });
}

InducedHom induced_hom(const PartialMap& f, const MapCheckOptions& opts) {
  const auto p = check_baire_map(f, opts);
  if (!p.almost_everywhere || !p.proper) {
    std::string why;
    if (!p.almost_everywhere) why += " not defined almost everywhere;";
    if (!p.proper) why += " not proper;";
    throw PreconditionError("induced homomorphism needs an almost-everywhere proper map:" + why);
  }
  return InducedHom(f);
}

HomomorphismCheck check_homomorphism(const InducedHom& h) {
  HomomorphismCheck out;
  const auto& t = h.target_quotient();
  const auto& s = h.source_quotient();
  const auto elems = t.algebra().elements();
  std::set<std::uint64_t> images;
  for (auto a : elems) {
    const auto ha = h.apply(a);
    images.insert(ha.bits());
    if (h.apply(t.complement(a)) != s.complement(ha)) out.complements = false;
    if (h.apply(t.closure(a)) != s.closure(ha)) out.closure = false;
    for (auto b : elems)
      if (h.apply(t.meet(a, b)) != s.meet(ha, h.apply(b))) out.meets = false;
  }
  out.injective = images.size() == elems.size();
  return out;
}

PartialMap map_from_resolution(const Resolution& res) {
  if (!is_valid_resolution(res)) throw PreconditionError("invalid resolution");
  const int k = static_cast<int>(res.parts.size());
  std::vector<int> graph(res.space.size(), -1);
  for (int i = 0; i < k; ++i)
    for (int x : res.parts[i].members()) graph[x] = i;
  return PartialMap(res.space, n_cluster(k), std::move(graph));
}

Resolution resolution_from_map(const PartialMap& f, const MapCheckOptions& opts) {
  const auto& y = f.target();
  if (!y.is_s5() || clusters(y).number_of_clusters != 1)
    throw PreconditionError("resolution_from_map needs a map into a single cluster");
  const auto p = check_baire_map(f, opts);
  if (!p.is_baire_map || !p.exact) throw PreconditionError("map is not an exact Baire map");
  Resolution res{f.source(), f.source().worlds(), {}};
  for (int w = 0; w < y.size(); ++w) res.parts.push_back(f.preimage(WorldSet::singleton(w)));
  res.parts[0] |= f.source().worlds() - f.domain();
  return res;
}

std::optional<Embedding> embed_s5_frame(const Frame& w, const Frame& sp) {
  if (!w.is_s5()) throw PreconditionError("embedded frame must be S5");
  if (!is_baire_space(sp)) throw PreconditionError("space is not a Baire space");
  const auto wc = clusters(w);
  const int kappa = wc.number_of_clusters;
  if (kappa == 0) return std::nullopt;
  const Quotient q(sp);
  const auto pieces = kappa_disconnected(q.algebra(), kappa);
  if (!pieces) return std::nullopt;

  std::vector<WorldSet> carriers;
  std::vector<int> resolvability;
  for (auto rep : *pieces) {
    // A clopen element is carried by the least open set above it.
    const auto u = sp.up(rep);
    carriers.push_back(u);
    int least = kMaxWorlds;
    for (auto c : s4_clusters(sp))
      if (c.subset_of(u & q.qmax())) least = std::min(least, c.size());
    resolvability.push_back(least);
  }

  // Largest clusters of W go to the most resolvable carriers.
  std::vector<int> by_size(kappa), by_res(kappa);
  std::iota(by_size.begin(), by_size.end(), 0);
  std::iota(by_res.begin(), by_res.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(), [&](int a, int b) {
    return wc.clusters[a].size() > wc.clusters[b].size();
  });
  std::stable_sort(by_res.begin(), by_res.end(),
                   [&](int a, int b) { return resolvability[a] > resolvability[b]; });

  std::vector<int> graph(sp.size(), -1);
  std::vector<WorldSet> assigned(kappa);
  for (int i = 0; i < kappa; ++i) {
    const int ci = by_size[i];
    const auto u = carriers[by_res[i]];
    const auto members = wc.clusters[ci].members();
    const auto res = find_baire_resolution_in(sp, u, static_cast<int>(members.size()));
    if (!res) return std::nullopt;
    for (std::size_t nu = 0; nu < members.size(); ++nu)
      for (int x : res->parts[nu].members()) graph[x] = members[nu];
    assigned[ci] = u;
  }
  PartialMap f(sp, w, std::move(graph));
  InducedHom h = induced_hom(f);
  return Embedding{std::move(f), std::move(h), std::move(assigned)};
}

std::optional<ClosureAlgebra> build_s5n_subalgebra(const Frame& sp, int n) {
  const auto res = find_baire_resolution(sp, n);
  if (!res) return std::nullopt;
  const InducedHom h = induced_hom(map_from_resolution(*res));
  const auto& qa = h.source_quotient().algebra();
  std::vector<WorldSet> generators;
  for (int i = 0; i < n; ++i) generators.push_back(h.apply(WorldSet::singleton(i)));
  for (auto c : qa.clopens()) generators.push_back(c);
  auto sub = generated_subalgebra(qa, generators, GenerationMode::Boolean);
  if (!sub.closed_under_closure())
    throw Error("subalgebra generated by clopens and a monadic subalgebra is not monadic");
  return sub;
}

}  // namespace baire
