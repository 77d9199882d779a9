#ifndef BUSHLAB_TEST_HELPERS_HPP
#define BUSHLAB_TEST_HELPERS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "bushlab/containment.hpp"
#include "bushlab/hypergraph.hpp"
#include "bushlab/trees.hpp"

namespace bushlab::testing {

// Uniform random m-edge r-graph on [n] (m capped at C(n,r)).
inline Hypergraph random_hypergraph(int n, int r, std::size_t m, std::uint64_t seed) {
  std::vector<Vset> all;
  for_each_ksubset(vfull(n), r, [&](Vset e) { all.push_back(e); });
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(m, all.size()));
  return Hypergraph(n, r, std::move(all));
}

// Reference containment decision: try every injection of the pattern's
// vertices into [n]. No pruning beyond edge-presence, so only for small n.
inline bool naive_contains_blowup(const Hypergraph& host, const BipartiteTree& t,
                                  BlowupSpec spec) {
  Hypergraph pat = blowup(t, spec);
  int p = pat.n(), n = host.n();
  if (p > n) return false;
  std::vector<int> image(p + 1);
  Vset used = 0;
  auto rec = [&](auto&& self, int v) -> bool {
    if (v > p) {
      for (Vset e : pat.edges()) {
        Vset mapped = 0;
        for (int x : to_vertices(e)) mapped |= vbit(image[x]);
        if (!host.has_edge(mapped)) return false;
      }
      return true;
    }
    for (int w = 1; w <= n; ++w) {
      if (vhas(used, w)) continue;
      image[v] = w;
      used |= vbit(w);
      if (self(self, v + 1)) return true;
      used &= ~vbit(w);
    }
    return false;
  };
  return rec(rec, 1);
}

// Largest q such that `a` kernels a q-star in f, by exhaustive petal packing.
inline int naive_max_star(const Hypergraph& f, Vset a) {
  std::vector<Vset> petals;
  for (Vset e : f.edges())
    if ((e & a) == a) petals.push_back(e & ~a);
  int best = 0;
  auto rec = [&](auto&& self, std::size_t i, Vset used, int count) -> void {
    best = std::max(best, count);
    for (std::size_t j = i; j < petals.size(); ++j)
      if (!(petals[j] & used)) self(self, j + 1, used | petals[j], count + 1);
  };
  rec(rec, 0, 0, 0);
  return best;
}

}  // namespace bushlab::testing

#endif
