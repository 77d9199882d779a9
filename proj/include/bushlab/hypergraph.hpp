#ifndef BUSHLAB_HYPERGRAPH_HPP
#define BUSHLAB_HYPERGRAPH_HPP

#include <string>
#include <vector>

#include "bushlab/vset.hpp"

namespace bushlab {

/// An r-uniform hypergraph on vertex set [n]. Edges are stored as bitmasks,
/// deduplicated and sorted in colex (numeric mask) order, so iteration is
/// deterministic and membership tests are binary searches.
class Hypergraph {
 public:
  Hypergraph() = default;

  // Throws std::invalid_argument on out-of-range vertices, wrong edge size,
  // or duplicate edges.
  Hypergraph(int n, int r, std::vector<Vset> edges);

  static Hypergraph from_vertex_lists(int n, int r,
                                      const std::vector<std::vector<int>>& edges);

  int n() const { return n_; }
  int r() const { return r_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const std::vector<Vset>& edges() const { return edges_; }
  Vset edge(std::size_t i) const { return edges_[i]; }

  bool has_edge(Vset e) const;
  // Index of e in edges(), or npos.
  std::size_t index_of(Vset e) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Union of all edges.
  Vset support() const;

  // Number of edges containing v.
  int degree(int v) const;

  // Subfamily with the given edges removed (same n, r).
  Hypergraph without(const std::vector<Vset>& removed) const;

  bool operator==(const Hypergraph& o) const = default;

 private:
  int n_ = 0;
  int r_ = 0;
  std::vector<Vset> edges_;
};

/// Ordered partition (X_1, ..., X_r) of a ground set; parts may be empty.
struct Partition {
  Vset ground = 0;
  std::vector<Vset> parts;

  // Throws std::invalid_argument if parts overlap or do not cover ground.
  void validate() const;

  // Index (1-based) of the part containing v, or 0 if v is outside ground.
  int part_of(int v) const;
};

// The shadow: all (r-1)-sets lying in some edge.
std::vector<Vset> shadow(const Hypergraph& h);

// Shadow of an arbitrary k-uniform family given as masks.
std::vector<Vset> shadow_of(const std::vector<Vset>& edges);

// Number of edges of h containing Y. Requires |Y| <= r.
int codegree(const Hypergraph& h, Vset y);

// Pattern of S w.r.t. the partition: {i : S meets X_i}, as a bitmask over [r].
// Requires S to lie inside the partition's ground set.
std::uint32_t pattern(Vset s, const Partition& p);

// Text format: "n r" header, then one edge per line as r space-separated
// vertices; '#' lines and blank lines ignored.
Hypergraph read_hypergraph(const std::string& text);
std::string write_hypergraph(const Hypergraph& h);

struct CanonicalForm {
  int n = 0;
  int r = 0;
  // Edge masks of the relabeled hypergraph, sorted; minimal over all
  // vertex relabelings.
  std::vector<Vset> edges;
  // relabel[v] is the canonical label of original vertex v (1-based, index 0
  // unused).
  std::vector<int> relabel;

  bool same_label(const CanonicalForm& o) const {
    return n == o.n && r == o.r && edges == o.edges;
  }
};

// Exact canonical form: two hypergraphs are isomorphic iff their canonical
// labels (n, r, edges) coincide. Backtracking over vertex orderings with
// refinement-based pruning; intended for desk-scale n.
CanonicalForm canonical_form(const Hypergraph& h);

bool isomorphic(const Hypergraph& a, const Hypergraph& b);

}  // namespace bushlab

#endif
