#include "bushlab/constructions.hpp"

#include <set>
#include <stdexcept>

namespace bushlab {

Hypergraph star_construction(int n, int r, int s) {
  if (n < r || r < 2 || s < 1) throw std::invalid_argument("star_construction: need n >= r >= 2, s >= 1");
  Vset apex = vfull(s - 1);  // [s-1]; empty when s = 1
  std::vector<Vset> edges;
  for_each_ksubset(vfull(n), r, [&](Vset e) {
    if (e & apex) edges.push_back(e);
  });
  return Hypergraph(n, r, std::move(edges));
}

std::uint64_t lower_bound_value(int n, int r, int s) {
  return binom(n, r) - binom(n - s + 1, r);
}

ConstructionReport star_construction_report(int n, int r, int s) {
  ConstructionReport rep;
  rep.hypergraph = star_construction(n, r, s);
  rep.realized = rep.hypergraph.size();
  rep.closed_form = lower_bound_value(n, r, s);
  return rep;
}

ConstructionReport steiner_augmented(int n, int r, int s) {
  if (n - s + 1 < r) throw std::invalid_argument("steiner_augmented: need n-s+1 >= r");
  Vset apex = vfull(s - 1);
  Vset rest = vfull(n) & ~apex;
  std::vector<Vset> edges;
  for_each_ksubset(vfull(n), r, [&](Vset e) {
    if (vsize(e & apex) == 1) edges.push_back(e);
  });
  // Greedy partial packing on [n]\[s-1]: accept a block iff none of its
  // (r-1)-subsets is already covered.
  std::set<Vset> covered;
  std::uint64_t blocks = 0;
  for_each_ksubset(rest, r, [&](Vset e) {
    Vset sub = e;
    std::vector<Vset> faces;
    while (sub) {
      Vset low = sub & (~sub + 1);
      faces.push_back(e & ~low);
      sub &= sub - 1;
    }
    for (Vset f : faces)
      if (covered.count(f)) return;
    for (Vset f : faces) covered.insert(f);
    edges.push_back(e);
    ++blocks;
  });
  ConstructionReport rep;
  rep.hypergraph = Hypergraph(n, r, std::move(edges));
  rep.realized = rep.hypergraph.size();
  rep.packing_ideal = static_cast<double>(binom(n - s + 1, r - 1)) / r;
  rep.packing_blocks = blocks;
  return rep;
}

}  // namespace bushlab
