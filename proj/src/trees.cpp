#include "bushlab/trees.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace bushlab {

namespace {

// Adjacency over combined vertex ids: U-vertex i -> i-1, V-vertex j -> s+j-1.
std::vector<std::vector<int>> adjacency(const BipartiteTree& t) {
  std::vector<std::vector<int>> adj(t.s + t.t);
  for (auto [i, j] : t.edges) {
    adj[i - 1].push_back(t.s + j - 1);
    adj[t.s + j - 1].push_back(i - 1);
  }
  return adj;
}

std::vector<int> bfs_dist(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : adj[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
  }
  return dist;
}

}  // namespace

void BipartiteTree::validate() const {
  if (s < 1 || t < 1) throw std::invalid_argument("tree: parts must be nonempty");
  if (static_cast<int>(edges.size()) != s + t - 1)
    throw std::invalid_argument("tree: edge count must be s+t-1");
  for (auto [i, j] : edges)
    if (i < 1 || i > s || j < 1 || j > t)
      throw std::invalid_argument("tree: edge endpoint out of range");
  auto adj = adjacency(*this);
  auto dist = bfs_dist(adj, 0);
  for (int d : dist)
    if (d < 0) throw std::invalid_argument("tree: not connected");
}

int BipartiteTree::degree_u(int i) const {
  int d = 0;
  for (auto [a, b] : edges)
    if (a == i) ++d;
  return d;
}

int BipartiteTree::degree_v(int j) const {
  int d = 0;
  for (auto [a, b] : edges)
    if (b == j) ++d;
  return d;
}

BipartiteTree bush_tree(BushParams p) {
  if (p.s < 1 || p.h < 1) throw std::invalid_argument("bush_tree: s,h >= 1 required");
  BipartiteTree t;
  t.s = p.s;
  t.t = 1 + p.s * p.h;
  for (int i = 1; i <= p.s; ++i) t.edges.push_back({i, 1});
  for (int i = 1; i <= p.s; ++i)
    for (int j = 1; j <= p.h; ++j) t.edges.push_back({i, 1 + (i - 1) * p.h + j});
  return t;
}

Hypergraph blowup(const BipartiteTree& t, BlowupSpec spec) {
  t.validate();
  if (spec.a < 1 || spec.b < 1) throw std::invalid_argument("blowup: a,b >= 1 required");
  int n = spec.a * t.t + spec.b * t.s;
  if (n > kMaxVertices) throw std::invalid_argument("blowup: too many vertices");
  // V-blobs occupy vertices 1..a*t, U-blobs a*t+1..a*t+b*s.
  auto v_blob = [&](int j) {
    Vset m = 0;
    for (int k = 0; k < spec.a; ++k) m |= vbit((j - 1) * spec.a + k + 1);
    return m;
  };
  auto u_blob = [&](int i) {
    Vset m = 0;
    for (int k = 0; k < spec.b; ++k) m |= vbit(spec.a * t.t + (i - 1) * spec.b + k + 1);
    return m;
  };
  std::vector<Vset> edges;
  for (auto [i, j] : t.edges) edges.push_back(u_blob(i) | v_blob(j));
  return Hypergraph(n, spec.r(), std::move(edges));
}

std::optional<TreeCenter> is_diameter4_center_degree(const BipartiteTree& t) {
  t.validate();
  int m = t.s + t.t;
  auto adj = adjacency(t);
  std::vector<int> ecc(m, 0);
  int diam = 0;
  for (int x = 0; x < m; ++x) {
    auto dist = bfs_dist(adj, x);
    ecc[x] = *std::max_element(dist.begin(), dist.end());
    diam = std::max(diam, ecc[x]);
  }
  if (diam != 4) return std::nullopt;
  for (int x = 0; x < m; ++x) {
    if (ecc[x] == 2) {
      TreeCenter c;
      c.in_u = x < t.s;
      c.index = c.in_u ? x + 1 : x - t.s + 1;
      c.degree = static_cast<int>(adj[x].size());
      return c;
    }
  }
  return std::nullopt;  // unreachable for a tree of diameter 4
}

BipartiteTree read_tree(const std::string& text) {
  std::istringstream in(text);
  BipartiteTree t;
  if (!(in >> t.s >> t.t)) throw std::runtime_error("malformed tree header");
  int i, j;
  while (in >> i >> j) t.edges.push_back({i, j});
  t.validate();
  return t;
}

std::string write_tree(const BipartiteTree& t) {
  std::ostringstream out;
  out << t.s << ' ' << t.t << '\n';
  for (auto [i, j] : t.edges) out << i << ' ' << j << '\n';
  return out.str();
}

}  // namespace bushlab
