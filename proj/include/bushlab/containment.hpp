#ifndef BUSHLAB_CONTAINMENT_HPP
#define BUSHLAB_CONTAINMENT_HPP

#include <optional>
#include <vector>

#include "bushlab/trees.hpp"

namespace bushlab {

/// An embedding of a blowup T(T,a,b) into a host: one pairwise-disjoint blob
/// per tree vertex such that every tree edge maps to a host edge.
struct BlowupEmbedding {
  std::vector<Vset> u_blobs;  // b-sets, indexed by u_i
  std::vector<Vset> v_blobs;  // a-sets, indexed by v_j
};

/// Embedding of a bush B_{s,h}(a,b): center a-set A, middle b-sets B_i and
/// leaf a-sets A_{i,j}.
struct BushEmbedding {
  Vset center = 0;
  std::vector<Vset> middles;
  std::vector<std::vector<Vset>> leaves;  // leaves[i][j] = A_{i+1,j+1}
};

// Exact decision: does H contain the (a,b)-blowup of T with pairwise-disjoint
// blobs?  Backtracking over tree edges in BFS order from the max-degree tree
// vertex, with bitset disjointness pruning. Requires H.r == a+b.
std::optional<BlowupEmbedding> contains_blowup(const Hypergraph& host,
                                               const BipartiteTree& t, BlowupSpec spec);

// Variant restricted to embeddings using the host edge `anchor` as the image
// of at least one tree edge; used for incremental freeness checks.
std::optional<BlowupEmbedding> contains_blowup_using(const Hypergraph& host,
                                                     const BipartiteTree& t, BlowupSpec spec,
                                                     Vset anchor);

std::optional<BushEmbedding> contains_bush(const Hypergraph& host, BushParams p,
                                           BlowupSpec spec);

// Independent re-check of the BushEmbedding invariants against the host.
bool check_bush_embedding(const Hypergraph& host, BushParams p, BlowupSpec spec,
                          const BushEmbedding& emb);

bool check_blowup_embedding(const Hypergraph& host, const BipartiteTree& t, BlowupSpec spec,
                            const BlowupEmbedding& emb);

}  // namespace bushlab

#endif
