#include "bushlab/containment.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace bushlab {

namespace {

// Tree vertices get combined ids: u_i -> i-1, v_j -> s+j-1.
struct SearchCtx {
  const Hypergraph& host;
  const BipartiteTree& tree;
  BlowupSpec spec;
  std::vector<Vset> blob;       // per combined id, 0 = unassigned
  Vset used = 0;
  // Edges ordered so each introduces exactly one new endpoint.
  struct Step {
    int known;  // combined id already assigned
    int fresh;  // combined id assigned at this step
  };
  std::vector<Step> steps;

  SearchCtx(const Hypergraph& h, const BipartiteTree& t, BlowupSpec sp)
      : host(h), tree(t), spec(sp), blob(t.s + t.t, 0) {}

  int blob_size(int id) const { return id < tree.s ? spec.b : spec.a; }

  // Orders the remaining tree edges by BFS from the assigned seed vertices.
  bool plan(const std::vector<int>& seed) {
    std::vector<bool> reached(tree.s + tree.t, false);
    for (int id : seed) reached[id] = true;
    steps.clear();
    std::vector<std::pair<int, int>> ids;
    for (auto [i, j] : tree.edges) ids.push_back({i - 1, tree.s + j - 1});
    std::vector<bool> done(ids.size(), false);
    // Seed edges with both endpoints assigned are checked by the caller.
    for (std::size_t e = 0; e < ids.size(); ++e)
      if (reached[ids[e].first] && reached[ids[e].second]) done[e] = true;
    for (std::size_t added = 0; added < ids.size();) {
      bool progress = false;
      for (std::size_t e = 0; e < ids.size(); ++e) {
        if (done[e]) {
          continue;
        }
        auto [x, y] = ids[e];
        if (reached[x] || reached[y]) {
          steps.push_back(reached[x] ? Step{x, y} : Step{y, x});
          reached[reached[x] ? y : x] = true;
          done[e] = true;
          progress = true;
        }
      }
      added = steps.size();
      if (!progress) break;
    }
    std::size_t pre = 0;
    for (std::size_t e = 0; e < ids.size(); ++e)
      if (reached[ids[e].first] && reached[ids[e].second] &&
          std::none_of(steps.begin(), steps.end(), [&](const Step& st) {
            return (st.known == ids[e].first && st.fresh == ids[e].second) ||
                   (st.known == ids[e].second && st.fresh == ids[e].first);
          }))
        ++pre;
    return steps.size() + pre == ids.size();
  }

  bool dfs(std::size_t k) {
    if (k == steps.size()) return true;
    const Step& st = steps[k];
    Vset base = blob[st.known];
    for (Vset e : host.edges()) {
      if ((e & base) != base) continue;
      Vset fresh = e & ~base;
      if (fresh & used) continue;
      if (vsize(fresh) != blob_size(st.fresh)) continue;  // holds when sizes add to r
      blob[st.fresh] = fresh;
      used |= fresh;
      if (dfs(k + 1)) return true;
      used &= ~fresh;
      blob[st.fresh] = 0;
    }
    return false;
  }

  BlowupEmbedding extract() const {
    BlowupEmbedding emb;
    emb.u_blobs.assign(blob.begin(), blob.begin() + tree.s);
    emb.v_blobs.assign(blob.begin() + tree.s, blob.end());
    return emb;
  }
};

}  // namespace

std::optional<BlowupEmbedding> contains_blowup(const Hypergraph& host,
                                               const BipartiteTree& t, BlowupSpec spec) {
  t.validate();
  if (host.r() != spec.r()) throw std::invalid_argument("contains_blowup: uniformity mismatch");
  if (spec.a * t.t + spec.b * t.s > host.n()) return std::nullopt;
  if (host.size() < t.edges.size()) return std::nullopt;

  // Root at the max-degree tree vertex for early pruning.
  int best = 0, best_deg = -1;
  for (int i = 1; i <= t.s; ++i)
    if (t.degree_u(i) > best_deg) best = i - 1, best_deg = t.degree_u(i);
  for (int j = 1; j <= t.t; ++j)
    if (t.degree_v(j) > best_deg) best = t.s + j - 1, best_deg = t.degree_v(j);

  SearchCtx ctx(host, t, spec);
  if (!ctx.plan({best})) return std::nullopt;

  int z = ctx.blob_size(best);
  std::vector<Vset> roots;
  for (Vset e : host.edges()) for_each_ksubset(e, z, [&](Vset s) { roots.push_back(s); });
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  for (Vset rb : roots) {
    ctx.blob[best] = rb;
    ctx.used = rb;
    if (ctx.dfs(0)) return ctx.extract();
  }
  return std::nullopt;
}

std::optional<BlowupEmbedding> contains_blowup_using(const Hypergraph& host,
                                                     const BipartiteTree& t, BlowupSpec spec,
                                                     Vset anchor) {
  t.validate();
  if (host.r() != spec.r()) throw std::invalid_argument("contains_blowup: uniformity mismatch");
  if (!host.has_edge(anchor)) return std::nullopt;
  if (spec.a * t.t + spec.b * t.s > host.n()) return std::nullopt;

  for (auto [i, j] : t.edges) {
    int uid = i - 1, vid = t.s + j - 1;
    // Split the anchor into the b-set for u_i and the a-set for v_j.
    std::vector<Vset> usides;
    for_each_ksubset(anchor, spec.b, [&](Vset s) { usides.push_back(s); });
    for (Vset us : usides) {
      SearchCtx ctx(host, t, spec);
      ctx.blob[uid] = us;
      ctx.blob[vid] = anchor & ~us;
      ctx.used = anchor;
      if (!ctx.plan({uid, vid})) continue;
      if (ctx.dfs(0)) return ctx.extract();
    }
  }
  return std::nullopt;
}

std::optional<BushEmbedding> contains_bush(const Hypergraph& host, BushParams p,
                                           BlowupSpec spec) {
  auto t = bush_tree(p);
  auto emb = contains_blowup(host, t, spec);
  if (!emb) return std::nullopt;
  BushEmbedding be;
  be.center = emb->v_blobs[0];
  be.middles = emb->u_blobs;
  be.leaves.assign(p.s, std::vector<Vset>(p.h, 0));
  for (int i = 0; i < p.s; ++i)
    for (int j = 0; j < p.h; ++j) be.leaves[i][j] = emb->v_blobs[1 + i * p.h + j];
  return be;
}

bool check_blowup_embedding(const Hypergraph& host, const BipartiteTree& t, BlowupSpec spec,
                            const BlowupEmbedding& emb) {
  if (static_cast<int>(emb.u_blobs.size()) != t.s) return false;
  if (static_cast<int>(emb.v_blobs.size()) != t.t) return false;
  Vset seen = 0;
  for (Vset b : emb.u_blobs) {
    if (vsize(b) != spec.b || (b & seen)) return false;
    seen |= b;
  }
  for (Vset b : emb.v_blobs) {
    if (vsize(b) != spec.a || (b & seen)) return false;
    seen |= b;
  }
  if (seen & ~vfull(host.n())) return false;
  for (auto [i, j] : t.edges)
    if (!host.has_edge(emb.u_blobs[i - 1] | emb.v_blobs[j - 1])) return false;
  return true;
}

bool check_bush_embedding(const Hypergraph& host, BushParams p, BlowupSpec spec,
                          const BushEmbedding& emb) {
  if (static_cast<int>(emb.middles.size()) != p.s) return false;
  if (static_cast<int>(emb.leaves.size()) != p.s) return false;
  BlowupEmbedding be;
  be.u_blobs = emb.middles;
  be.v_blobs.push_back(emb.center);
  for (int i = 0; i < p.s; ++i) {
    if (static_cast<int>(emb.leaves[i].size()) != p.h) return false;
    for (int j = 0; j < p.h; ++j) be.v_blobs.push_back(emb.leaves[i][j]);
  }
  return check_blowup_embedding(host, bush_tree(p), spec, be);
}

}  // namespace bushlab
