#ifndef BUSHLAB_CONSTRUCTIONS_HPP
#define BUSHLAB_CONSTRUCTIONS_HPP

#include <cstdint>
#include <optional>

#include "bushlab/hypergraph.hpp"

namespace bushlab {

struct ConstructionReport {
  Hypergraph hypergraph;
  // Closed-form edge count where one is claimed (the star family).
  std::optional<std::uint64_t> closed_form;
  std::uint64_t realized = 0;
  // For the packing-augmented family: ideal block count C(n-s+1,r-1)/r and
  // the greedy shortfall against it.
  std::optional<double> packing_ideal;
  std::optional<std::uint64_t> packing_blocks;
};

// All r-subsets of [n] meeting [s-1]; edge count C(n,r) - C(n-s+1,r).
Hypergraph star_construction(int n, int r, int s);

ConstructionReport star_construction_report(int n, int r, int s);

// C(n,r) - C(n-s+1,r), exact integers.
std::uint64_t lower_bound_value(int n, int r, int s);

// E_1 = r-sets with exactly one vertex in [s-1], plus E_2 = a greedy maximal
// partial packing of r-sets on [n]\[s-1] in which no two blocks share r-1
// vertices (lexicographic greedy).
ConstructionReport steiner_augmented(int n, int r, int s);

}  // namespace bushlab

#endif
