#ifndef BUSHLAB_TREES_HPP
#define BUSHLAB_TREES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bushlab/hypergraph.hpp"

namespace bushlab {

/// A tree on parts U = {u_1..u_s}, V = {v_1..v_t}; every edge joins a
/// U-vertex to a V-vertex.
struct BipartiteTree {
  int s = 0;
  int t = 0;
  std::vector<std::pair<int, int>> edges;  // (i, j) meaning u_i v_j

  // Throws std::invalid_argument unless connected with s+t-1 edges.
  void validate() const;

  int degree_u(int i) const;
  int degree_v(int j) const;
};

/// Blob sizes for a blowup; r = a + b. V-vertices (the part holding the
/// center and leaves of a bush) become a-sets, U-vertices become b-sets.
struct BlowupSpec {
  int a = 1;
  int b = 1;
  int r() const { return a + b; }
};

struct BushParams {
  int s = 1;  // center degree
  int h = 1;  // leaves per middle vertex
};

// The bush B_{s,h}: star K_{1,s} with h leaves hung on each tip.
// U = the s middle vertices; V = center (v_1) followed by the leaves, where
// the leaves of u_i are v_{1+(i-1)h+1} .. v_{1+ih}.
BipartiteTree bush_tree(BushParams p);

// (a,b)-blowup of T. V-blobs come first in vertex order (a-sets), then
// U-blobs (b-sets); vertex count is a*t + b*s, edge count |E(T)|.
Hypergraph blowup(const BipartiteTree& t, BlowupSpec spec);

struct TreeCenter {
  bool in_u = false;  // which part the center lies in
  int index = 0;      // 1-based within its part
  int degree = 0;
};

// Center and its degree if T has diameter exactly 4, otherwise nullopt.
std::optional<TreeCenter> is_diameter4_center_degree(const BipartiteTree& t);

// Text format: "s t" header, then lines "i j" for edges u_i v_j.
BipartiteTree read_tree(const std::string& text);
std::string write_tree(const BipartiteTree& t);

}  // namespace bushlab

#endif
