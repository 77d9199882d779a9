#include "bushlab/bush_engine.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bushlab {

BushEmbedding assemble_bush(const Hypergraph& host, const AssemblyInput& inp, int h) {
  int s = static_cast<int>(inp.kernels.size());
  if (s < 1 || h < 1) throw std::invalid_argument("precondition-failed: s,h >= 1 required");
  int a = vsize(inp.center);
  if (a < 1) throw std::invalid_argument("precondition-failed: center blob empty");
  int b = host.r() - a;
  Vset seen = inp.center;
  for (Vset k : inp.kernels) {
    if (vsize(k) != b)
      throw std::invalid_argument("precondition-failed: kernel size must be r-|A0|");
    if (k & seen) throw std::invalid_argument("precondition-failed: blobs not disjoint");
    seen |= k;
  }
  for (Vset k : inp.kernels)
    if (!host.has_edge(inp.center | k))
      throw std::invalid_argument("precondition-failed: A0 u B_i not an edge");

  std::vector<Sunflower> stars;
  for (Vset k : inp.kernels) {
    auto sf = find_sunflower(host, k, inp.q);
    if (!sf)
      throw std::invalid_argument("precondition-failed: B_i is not a (b,q)-kernel");
    stars.push_back(*sf);
  }

  BushEmbedding emb;
  emb.center = inp.center;
  emb.middles = inp.kernels;
  emb.leaves.assign(s, {});
  Vset used = seen;  // D_0 = A_0 u B_1 u ... u B_s
  for (int i = 0; i < s; ++i) {
    int got = 0;
    for (Vset petal : stars[i].petals) {
      if (petal & used) continue;
      emb.leaves[i].push_back(petal);
      used |= petal;
      if (++got == h) break;
    }
    if (got < h)
      throw std::runtime_error("assembly-failed: not enough disjoint petals (q too small)");
  }
  BushParams p{s, h};
  BlowupSpec spec{a, b};
  if (!check_bush_embedding(host, p, spec, emb))
    throw std::runtime_error("assembly-failed: embedding re-check failed");
  return emb;
}

namespace {

// Classify a certificate by the (r-1)-sized members of its J.
ClassType classify_class(const ExtractionCertificate& cert) {
  int r = cert.subfamily.r();
  // The type taxonomy presumes an intersection-closed (r-2)-covering J;
  // degenerate classes (e.g. single-edge fallbacks) stay unclassified.
  if (!cert.j.closed_under_intersection() || !is_m_covering(cert.j, r - 2))
    return ClassType::Unclassified;
  int k = cert.j.count_of_size(r - 1);
  if (k == r - 1) return ClassType::Alpha;
  if (k == 0) return ClassType::BetaFlat;
  if (r == 4 && k == 1) return ClassType::BetaPointed;
  return ClassType::Unclassified;
}

// Part index of the distinguished element for an Alpha class: the unique
// element common to all (r-1)-sized members of J.
int alpha_special_part(const ExtractionCertificate& cert) {
  int r = cert.subfamily.r();
  std::uint32_t common = (1u << r) - 1;
  for (std::uint32_t m : cert.j.members)
    if (std::popcount(m) == r - 1) common &= m;
  if (std::popcount(common) != 1) return 0;
  return std::countr_zero(common) + 1;
}

// Part index of b(E) for a BetaPointed class: the element outside the unique
// (r-1)-sized member.
int beta_special_part(const ExtractionCertificate& cert) {
  int r = cert.subfamily.r();
  for (std::uint32_t m : cert.j.members)
    if (std::popcount(m) == r - 1) return std::countr_zero(~m & ((1u << r) - 1)) + 1;
  return 0;
}

}  // namespace

int AlphaBetaReport::max_alpha() const {
  int m = 0;
  for (const auto& [y, ab] : counts) m = std::max(m, ab.first);
  return m;
}

std::string AlphaBetaReport::to_csv() const {
  std::ostringstream out;
  out << "Y,alpha,beta\n";
  for (const auto& [y, ab] : counts) {
    auto vs = to_vertices(y);
    for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << vs[i];
    out << ',' << ab.first << ',' << ab.second << '\n';
  }
  return out.str();
}

AlphaBetaReport alpha_beta_count(const PartitionResult& pr) {
  AlphaBetaReport rep;
  rep.n = pr.residue.n();
  rep.r = pr.residue.r();
  std::vector<Vset> classified_edges;
  for (std::size_t ci = 0; ci < pr.classes.size(); ++ci) {
    const auto& cert = pr.classes[ci];
    ClassType type = classify_class(cert);
    rep.class_types.push_back(type);
    if (type == ClassType::Unclassified) {
      rep.excluded.push_back(ci);
      continue;
    }
    int r = cert.subfamily.r();
    for (Vset e : cert.subfamily.edges()) {
      classified_edges.push_back(e);
      switch (type) {
        case ClassType::Alpha: {
          int part = cert.special_part ? *cert.special_part : alpha_special_part(cert);
          Vset ce = e & cert.partition.parts[part - 1];
          Vset y = e & ~ce;
          ++rep.counts[y].first;
          ++rep.sum_alpha;
          ++rep.alpha_edges;
          break;
        }
        case ClassType::BetaPointed: {
          int part = beta_special_part(cert);
          Vset be = e & cert.partition.parts[part - 1];
          for_each_ksubset(e, r - 1, [&](Vset y) {
            if ((y & be) == be) {
              ++rep.counts[y].second;
              ++rep.sum_beta;
            }
          });
          ++rep.beta_edges;
          break;
        }
        case ClassType::BetaFlat: {
          for_each_ksubset(e, r - 1, [&](Vset y) {
            ++rep.counts[y].second;
            ++rep.sum_beta;
          });
          ++rep.beta_edges;
          break;
        }
        default:
          break;
      }
    }
  }
  rep.shadow_size = shadow_of(classified_edges).size();
  return rep;
}

Hypergraph s_normalize(const Hypergraph& h, int s) {
  Hypergraph cur = h;
  for (;;) {
    std::map<Vset, int> codeg;
    for (Vset e : cur.edges()) {
      Vset rest = e;
      while (rest) {
        Vset low = rest & (~rest + 1);
        ++codeg[e & ~low];
        rest &= rest - 1;
      }
    }
    std::vector<Vset> doomed;
    for (Vset e : cur.edges()) {
      Vset rest = e;
      bool bad = false;
      while (rest && !bad) {
        Vset low = rest & (~rest + 1);
        int c = codeg[e & ~low];
        if (c >= 1 && c < s) bad = true;
        rest &= rest - 1;
      }
      if (bad) doomed.push_back(e);
    }
    if (doomed.empty()) return cur;
    cur = cur.without(doomed);
  }
}

Vset exchange_set(const Hypergraph& h, Vset y, int u) {
  if (!vhas(y, u)) throw std::invalid_argument("exchange_set: u must lie in Y");
  Vset base = y & ~vbit(u);
  Vset q = 0;
  for (Vset e : h.edges()) {
    if ((e & base) != base) continue;
    Vset extra = e & ~base;
    if (vsize(extra) == 1 && !(extra & y)) q |= extra;
  }
  return q;
}

Vset exchange_subset(const Hypergraph& h, Vset y, int u, int s) {
  Vset q = exchange_set(h, y, u);
  int want = std::min(s, vsize(q));
  Vset out = 0;
  for (int i = 0; i < want; ++i) {
    Vset low = q & (~q + 1);
    out |= low;
    q &= ~low;
  }
  return out;
}

bool is_separable(const Hypergraph& h, int u, const std::vector<Vset>& fam, int s) {
  Vset uni = 0, qs = 0;
  for (Vset p : fam) {
    uni |= p;
    qs |= exchange_subset(h, p, u, s);
  }
  return (qs & uni) == 0;
}

namespace {

void require_star(const std::vector<Vset>& star, int u) {
  Vset ub = vbit(u);
  for (std::size_t i = 0; i < star.size(); ++i) {
    if (!(star[i] & ub)) throw std::invalid_argument("not a star: member misses u");
    for (std::size_t j = i + 1; j < star.size(); ++j)
      if ((star[i] & star[j]) != ub)
        throw std::invalid_argument("not a star: pairwise intersection differs from {u}");
  }
}

}  // namespace

std::vector<Vset> separable_star(const Hypergraph& h, int u, const std::vector<Vset>& star,
                                 int s) {
  require_star(star, u);
  std::size_t m = star.size();
  std::vector<Vset> qsub(m);
  for (std::size_t i = 0; i < m; ++i) qsub[i] = exchange_subset(h, star[i], u, s);

  // Underlying graph of the exchange-conflict digraph.
  std::vector<std::vector<int>> adj(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (star[j] & qsub[i]) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
    }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  // Smallest-last (degeneracy) order, then greedy coloring in reverse.
  std::vector<int> deg(m), order;
  std::vector<bool> removed(m, false);
  for (std::size_t i = 0; i < m; ++i) deg[i] = static_cast<int>(adj[i].size());
  for (std::size_t step = 0; step < m; ++step) {
    int best = -1;
    for (std::size_t i = 0; i < m; ++i)
      if (!removed[i] && (best < 0 || deg[i] < deg[best])) best = static_cast<int>(i);
    removed[best] = true;
    order.push_back(best);
    for (int j : adj[best])
      if (!removed[j]) --deg[j];
  }
  std::reverse(order.begin(), order.end());
  std::vector<int> color(m, -1);
  int ncolors = 0;
  for (int v : order) {
    std::set<int> taken;
    for (int j : adj[v])
      if (color[j] >= 0) taken.insert(color[j]);
    int c = 0;
    while (taken.count(c)) ++c;
    color[v] = c;
    ncolors = std::max(ncolors, c + 1);
  }
  std::vector<std::vector<Vset>> classes(ncolors);
  for (std::size_t i = 0; i < m; ++i) classes[color[i]].push_back(star[i]);
  std::size_t best = 0;
  for (std::size_t c = 1; c < classes.size(); ++c)
    if (classes[c].size() > classes[best].size()) best = c;
  std::vector<Vset> out = classes[best];
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Hopcroft-Karp is overkill here: simple augmenting-path matching from the
// chosen members into their exchange subsets.
std::optional<std::vector<int>> distinct_representatives(const std::vector<Vset>& sets) {
  std::vector<int> verts;
  Vset uni = 0;
  for (Vset s : sets) uni |= s;
  verts = to_vertices(uni);
  std::map<int, int> owner;  // vertex -> set index
  std::vector<int> rep(sets.size(), 0);

  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) -> bool {
    for (int v : to_vertices(sets[i])) {
      std::size_t vi = 0;
      while (verts[vi] != v) ++vi;
      if (visited[vi]) continue;
      visited[vi] = 1;
      auto it = owner.find(v);
      if (it == owner.end() || augment(static_cast<std::size_t>(it->second))) {
        owner[v] = static_cast<int>(i);
        rep[i] = v;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < sets.size(); ++i) {
    visited.assign(verts.size(), 0);
    if (!augment(i)) return std::nullopt;
  }
  return rep;
}

// Given a separable star at w with some s members whose exchange subsets
// jointly cover >= s vertices, produce the bush via an SDR.
std::optional<BushEmbedding> bush_from_star(const Hypergraph& h, int w,
                                            const std::vector<Vset>& star, int s) {
  if (static_cast<int>(star.size()) < s) return std::nullopt;
  std::vector<Vset> qsub(star.size());
  for (std::size_t i = 0; i < star.size(); ++i) qsub[i] = exchange_subset(h, star[i], w, s);

  // Pick s members whose exchange subsets cover at least s vertices.
  std::vector<std::size_t> chosen;
  std::size_t big = star.size();
  for (std::size_t i = 0; i < star.size(); ++i)
    if (vsize(qsub[i]) >= s) {
      big = i;
      break;
    }
  if (big < star.size()) {
    chosen.push_back(big);
  } else {
    std::size_t x = star.size(), y = star.size();
    for (std::size_t i = 0; i < star.size() && x == star.size(); ++i)
      for (std::size_t j = i + 1; j < star.size(); ++j)
        if (qsub[i] != qsub[j]) {
          x = i;
          y = j;
          break;
        }
    if (x == star.size()) return std::nullopt;  // all subsets equal and small
    chosen.push_back(x);
    chosen.push_back(y);
  }
  for (std::size_t i = 0; i < star.size() && static_cast<int>(chosen.size()) < s; ++i)
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
  if (static_cast<int>(chosen.size()) < s) return std::nullopt;

  std::vector<Vset> sets;
  for (std::size_t i : chosen) sets.push_back(qsub[i]);
  auto rep = distinct_representatives(sets);
  if (!rep) return std::nullopt;

  BushEmbedding emb;
  emb.center = vbit(w);
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    emb.middles.push_back(star[chosen[k]] & ~vbit(w));
    emb.leaves.push_back({vbit((*rep)[k])});
  }
  BushParams p{s, 1};
  BlowupSpec spec{1, h.r() - 1};
  if (!check_bush_embedding(h, p, spec, emb)) return std::nullopt;
  return emb;
}

}  // namespace

DiscoverResult discover_T(const Hypergraph& h, int u, const std::vector<Vset>& sep_star,
                          int s) {
  int r = h.r();
  if (static_cast<int>(sep_star.size()) < r + 2 * s - 2)
    throw std::invalid_argument("discover_T: |P'| >= r+2s-2 required");
  require_star(sep_star, u);
  if (!is_separable(h, u, sep_star, s))
    throw std::invalid_argument("discover_T: star not separable");

  DiscoverResult res;
  std::vector<Vset> qs(sep_star.size());
  bool consistent = true;
  for (std::size_t i = 0; i < sep_star.size(); ++i) {
    qs[i] = exchange_set(h, sep_star[i], u);
    if (vsize(qs[i]) != s - 1 || qs[i] != qs[0]) consistent = false;
  }
  if (!consistent) {
    res.witness = bush_from_star(h, u, sep_star, s);
    res.note = res.witness ? "inconsistent exchange sets: bush witness extracted"
                           : "inconsistent exchange sets but no witness found";
    return res;
  }
  Vset t = qs[0];

  // Exchange identity on every edge at u avoiding T(u).
  for (Vset y : h.edges()) {
    if (!vhas(y, u) || (y & t)) continue;
    bool holds = true;
    Vset base = y & ~vbit(u);
    for (int z : to_vertices(t))
      if (!h.has_edge(base | vbit(z))) {
        holds = false;
        break;
      }
    if (holds) continue;
    // Build a star {Y, P_1..P_{s-1}} with members of P' avoiding Y and its
    // exchange subset, and extract a witness from it.
    Vset avoid = (y & ~vbit(u)) | exchange_subset(h, y, u, s);
    std::vector<Vset> star{y};
    for (Vset p : sep_star) {
      if (static_cast<int>(star.size()) == s) break;
      if (p & avoid) continue;
      star.push_back(p);
    }
    if (static_cast<int>(star.size()) == s) res.witness = bush_from_star(h, u, star, s);
    res.note = res.witness ? "exchange identity failed: bush witness extracted"
                           : "exchange identity failed but no witness found";
    return res;
  }

  // Closure: T+(z) must coincide with T+(u) for each z in T(u).
  Vset tplus = t | vbit(u);
  for (int z : to_vertices(t)) {
    std::vector<Vset> shifted;
    for (Vset p : sep_star) shifted.push_back((p & ~vbit(u)) | vbit(z));
    bool ok = true;
    for (Vset p : shifted) {
      if (!h.has_edge(p)) {
        ok = false;
        break;
      }
      if (exchange_set(h, p, z) != (tplus & ~vbit(z))) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      bool star_ok = true;
      try {
        require_star(shifted, z);
      } catch (const std::invalid_argument&) {
        star_ok = false;
      }
      if (star_ok && is_separable(h, z, shifted, s))
        res.witness = bush_from_star(h, z, shifted, s);
      res.note = res.witness ? "closure failed: bush witness extracted"
                             : "closure failed but no witness found";
      return res;
    }
  }

  res.tset = t;
  res.checks_passed = true;
  return res;
}

}  // namespace bushlab
