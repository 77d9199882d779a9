#include "bushlab/hypergraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bushlab {

Hypergraph::Hypergraph(int n, int r, std::vector<Vset> edges)
    : n_(n), r_(r), edges_(std::move(edges)) {
  if (n < 0 || n > kMaxVertices) throw std::invalid_argument("vertex count out of range");
  if (r < 1 || r > n) {
    if (!(r >= 1 && edges_.empty())) throw std::invalid_argument("uniformity out of range");
  }
  Vset full = vfull(n_);
  for (Vset e : edges_) {
    if ((e & ~full) != 0) throw std::invalid_argument("edge vertex out of range");
    if (vsize(e) != r_) throw std::invalid_argument("edge has wrong size");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");
}

Hypergraph Hypergraph::from_vertex_lists(int n, int r,
                                         const std::vector<std::vector<int>>& edges) {
  std::vector<Vset> masks;
  masks.reserve(edges.size());
  for (const auto& e : edges) {
    Vset m = 0;
    for (int v : e) {
      if (v < 1 || v > n) throw std::invalid_argument("edge vertex out of range");
      if (vhas(m, v)) throw std::invalid_argument("repeated vertex in edge");
      m |= vbit(v);
    }
    masks.push_back(m);
  }
  return Hypergraph(n, r, std::move(masks));
}

bool Hypergraph::has_edge(Vset e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::size_t Hypergraph::index_of(Vset e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return npos;
  return static_cast<std::size_t>(it - edges_.begin());
}

Vset Hypergraph::support() const {
  Vset s = 0;
  for (Vset e : edges_) s |= e;
  return s;
}

int Hypergraph::degree(int v) const {
  int d = 0;
  for (Vset e : edges_)
    if (vhas(e, v)) ++d;
  return d;
}

Hypergraph Hypergraph::without(const std::vector<Vset>& removed) const {
  std::vector<Vset> rm = removed;
  std::sort(rm.begin(), rm.end());
  std::vector<Vset> kept;
  kept.reserve(edges_.size());
  for (Vset e : edges_)
    if (!std::binary_search(rm.begin(), rm.end(), e)) kept.push_back(e);
  return Hypergraph(n_, r_, std::move(kept));
}

void Partition::validate() const {
  Vset seen = 0;
  for (Vset p : parts) {
    if (p & seen) throw std::invalid_argument("partition parts overlap");
    seen |= p;
  }
  if (seen != ground) throw std::invalid_argument("partition does not cover ground set");
}

int Partition::part_of(int v) const {
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (vhas(parts[i], v)) return static_cast<int>(i) + 1;
  return 0;
}

std::vector<Vset> shadow_of(const std::vector<Vset>& edges) {
  std::vector<Vset> out;
  out.reserve(edges.size() * 4);
  for (Vset e : edges) {
    Vset rest = e;
    while (rest) {
      Vset low = rest & (~rest + 1);
      out.push_back(e & ~low);
      rest &= rest - 1;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vset> shadow(const Hypergraph& h) { return shadow_of(h.edges()); }

int codegree(const Hypergraph& h, Vset y) {
  if (vsize(y) > h.r()) throw std::invalid_argument("codegree: |Y| > r");
  int c = 0;
  for (Vset e : h.edges())
    if ((e & y) == y) ++c;
  return c;
}

std::uint32_t pattern(Vset s, const Partition& p) {
  Vset covered = 0;
  std::uint32_t pat = 0;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    if (s & p.parts[i]) pat |= 1u << i;
    covered |= p.parts[i];
  }
  if (s & ~covered) throw std::invalid_argument("pattern: set outside ground set");
  return pat;
}

Hypergraph read_hypergraph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1, r = -1;
  std::vector<std::vector<int>> edges;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> r)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
          n = -1;
          continue;
        }
        throw std::runtime_error("malformed header: expected \"n r\"");
      }
      std::string junk;
      if (ls >> junk) throw std::runtime_error("malformed header: trailing tokens");
      if (n < 0 || n > kMaxVertices || r < 1)
        throw std::runtime_error("malformed header: values out of range");
      continue;
    }
    std::vector<int> edge;
    int v;
    while (ls >> v) edge.push_back(v);
    if (!ls.eof()) throw std::runtime_error("malformed edge line: non-integer token");
    if (edge.empty()) continue;
    if (static_cast<int>(edge.size()) != r)
      throw std::runtime_error("edge has wrong number of vertices");
    edges.push_back(std::move(edge));
  }
  if (n < 0) throw std::runtime_error("malformed header: missing");
  // from_vertex_lists / constructor reject out-of-range vertices, repeats
  // inside an edge, and duplicate edges, each with its own message.
  try {
    return Hypergraph::from_vertex_lists(n, r, edges);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

std::string write_hypergraph(const Hypergraph& h) {
  std::vector<Vset> es = h.edges();
  std::sort(es.begin(), es.end(), lex_less);
  std::ostringstream out;
  out << h.n() << ' ' << h.r() << '\n';
  for (Vset e : es) {
    bool first = true;
    for (int v : to_vertices(e)) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

// Iterated vertex invariant used only to split vertices into candidate
// classes before the exact backtracking; any isomorphism-invariant works.
std::vector<std::uint64_t> refine_invariants(const Hypergraph& h) {
  int n = h.n();
  std::vector<std::uint64_t> color(n + 1, 0);
  for (int v = 1; v <= n; ++v) color[v] = static_cast<std::uint64_t>(h.degree(v));
  for (int round = 0; round < n; ++round) {
    std::vector<std::vector<std::uint64_t>> sig(n + 1);
    for (Vset e : h.edges()) {
      std::uint64_t esig = 0;
      for (int v : to_vertices(e)) esig += color[v] * 1000003u + 17;
      for (int v : to_vertices(e)) sig[v].push_back(esig - color[v]);
    }
    std::vector<std::pair<std::pair<std::uint64_t, std::vector<std::uint64_t>>, int>> keyed;
    keyed.reserve(n);
    for (int v = 1; v <= n; ++v) {
      std::sort(sig[v].begin(), sig[v].end());
      keyed.push_back({{color[v], sig[v]}, v});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::uint64_t> next(n + 1, 0);
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      if (i > 0 && keyed[i].first != keyed[i - 1].first) ++c;
      next[keyed[i].second] = c;
    }
    if (next == color) break;
    color = next;
  }
  return color;
}

struct CanonSearch {
  const Hypergraph& h;
  int n;
  std::vector<std::uint64_t> color;   // refinement class per vertex
  std::vector<int> label;             // label[v] = assigned canonical label or 0
  std::vector<int> order;             // order[i] = original vertex given label i+1
  std::vector<Vset> best;             // best (minimal) relabeled edge sequence
  std::vector<int> best_order;
  std::vector<Vset> partial;          // relabeled edges completed so far
  bool have_best = false;
  // swap_aut[u] holds the vertices w > u with the transposition (u w) an
  // automorphism of h; lets us try one representative per symmetric class.
  std::vector<Vset> swap_aut;

  explicit CanonSearch(const Hypergraph& hg) : h(hg), n(hg.n()) {
    color = refine_invariants(hg);
    label.assign(n + 1, 0);
    swap_aut.assign(n + 1, 0);
    for (int u = 1; u <= n; ++u)
      for (int w = u + 1; w <= n; ++w)
        if (color[u] == color[w] && transposition_is_automorphism(u, w))
          swap_aut[u] |= vbit(w);
  }

  bool transposition_is_automorphism(int u, int w) const {
    for (Vset e : h.edges()) {
      bool hu = vhas(e, u), hw = vhas(e, w);
      if (hu == hw) continue;
      Vset img = (e & ~(vbit(u) | vbit(w))) | (hu ? vbit(w) : vbit(u));
      if (!h.has_edge(img)) return false;
    }
    return true;
  }

  // Relabels edges of h that are fully contained in the labeled set and
  // contain the vertex just labeled.
  void run() {
    order.reserve(n);
    dfs(0);
  }

  void dfs(int depth) {
    if (depth == n) {
      if (!have_best || partial < best) {
        best = partial;
        best_order = order;
        have_best = true;
      }
      return;
    }
    // Candidates: unlabeled vertices, grouped by refinement color. Trying
    // every color keeps the search exact; the invariant only breaks ties in
    // output order, so restrict to the minimal color among unlabeled
    // vertices is NOT valid in general. Try all unlabeled vertices, but
    // prune via partial comparison, which kills symmetric branches fast.
    std::size_t partial_size = partial.size();
    Vset skipped = 0;  // symmetric to an already-tried candidate
    for (int v = 1; v <= n; ++v) {
      if (label[v]) continue;
      if (vhas(skipped, v)) continue;
      skipped |= swap_aut[v];
      label[v] = depth + 1;
      order.push_back(v);
      // New completed edges all contain v and get the current max label, so
      // in colex (numeric mask) order they extend the sequence at the end.
      std::vector<Vset> added;
      for (Vset e : h.edges()) {
        if (!vhas(e, v)) continue;
        Vset img = 0;
        bool complete = true;
        for (int w : to_vertices(e)) {
          if (!label[w]) {
            complete = false;
            break;
          }
          img |= vbit(label[w]);
        }
        if (complete) added.push_back(img);
      }
      std::sort(added.begin(), added.end());
      partial.insert(partial.end(), added.begin(), added.end());

      bool prune = false;
      if (have_best) {
        // Compare the whole prefix to the incumbent: the incumbent may have
        // improved since an ancestor compared, and an ancestor that went
        // strictly below the incumbent must never be cut on a later segment.
        std::size_t m = std::min(partial.size(), best.size());
        int cmp = 0;
        for (std::size_t i = 0; i < m && cmp == 0; ++i)
          cmp = partial[i] < best[i] ? -1 : (partial[i] > best[i] ? 1 : 0);
        if (cmp > 0) prune = true;
      }
      if (!prune) dfs(depth + 1);

      partial.resize(partial_size);
      order.pop_back();
      label[v] = 0;
    }
  }
};

}  // namespace

CanonicalForm canonical_form(const Hypergraph& h) {
  CanonicalForm cf;
  cf.n = h.n();
  cf.r = h.r();
  cf.relabel.assign(h.n() + 1, 0);
  if (h.n() == 0) return cf;
  CanonSearch search(h);
  search.run();
  cf.edges = search.best;
  for (int i = 0; i < h.n(); ++i) cf.relabel[search.best_order[i]] = i + 1;
  return cf;
}

bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.n() != b.n() || a.r() != b.r() || a.size() != b.size()) return false;
  return canonical_form(a).same_label(canonical_form(b));
}

}  // namespace bushlab
