#include <set>

#include "doctest.h"
#include "helpers.hpp"

#include "bushlab/constructions.hpp"

using namespace bushlab;

TEST_CASE("star construction edge count matches the closed form") {
  for (int r = 3; r <= 5; ++r)
    for (int n = r; n <= 12; ++n)
      for (int s = 1; s <= 4; ++s) {
        Hypergraph h = star_construction(n, r, s);
        CHECK(h.size() == binom(n, r) - binom(n - s + 1, r));
        CHECK(h.size() == lower_bound_value(n, r, s));
        for (Vset e : h.edges()) CHECK((s == 1) == ((e & vfull(s - 1)) == 0));
      }
  CHECK(star_construction(8, 3, 1).empty());
  CHECK_THROWS_AS(star_construction(2, 3, 2), std::invalid_argument);
}

TEST_CASE("star construction report") {
  auto rep = star_construction_report(10, 3, 3);
  CHECK(rep.realized == rep.closed_form);
  CHECK(rep.realized == rep.hypergraph.size());
}

TEST_CASE("star construction avoids its bush") {
  for (int s = 1; s <= 3; ++s) {
    Hypergraph h = star_construction(9, 3, s);
    CHECK(!contains_bush(h, {s, 1}, {2, 1}).has_value());
    CHECK(!contains_bush(h, {s, 1}, {1, 2}).has_value());
  }
}

TEST_CASE("steiner augmentation structure") {
  auto rep = steiner_augmented(9, 3, 2);
  const Hypergraph& h = rep.hypergraph;
  CHECK(rep.realized == h.size());
  REQUIRE(rep.packing_blocks.has_value());
  REQUIRE(rep.packing_ideal.has_value());
  CHECK(*rep.packing_blocks > 0);
  CHECK(static_cast<double>(*rep.packing_blocks) <= *rep.packing_ideal + 1e-9);

  // split the edges back into the apex part and the packing part
  Vset apex = vfull(1);
  std::size_t through = 0;
  std::vector<Vset> packing;
  for (Vset e : h.edges()) {
    if (vsize(e & apex) == 1)
      ++through;
    else {
      CHECK((e & apex) == 0);
      packing.push_back(e);
    }
  }
  CHECK(through == binom(8, 2));
  CHECK(packing.size() == *rep.packing_blocks);
  // packing blocks never share a pair
  std::set<Vset> pairs;
  for (Vset e : packing)
    for_each_ksubset(e, 2, [&](Vset y) { CHECK(pairs.insert(y).second); });
}

TEST_CASE("steiner augmentation avoids B_{s,2}(1,r-1)") {
  for (int s = 1; s <= 3; ++s)
    CHECK(!contains_bush(steiner_augmented(10, 3, s).hypergraph, {s, 2}, {1, 2}).has_value());
}

TEST_CASE("steiner packing is maximal at friendly sizes") {
  // n = 9, r = 3: an affine plane of order 3 realizes the ideal 12 blocks;
  // the greedy packing need not reach it, but must at least cover plenty
  auto rep = steiner_augmented(9, 3, 1);
  CHECK(*rep.packing_ideal == doctest::Approx(12.0));
  CHECK(*rep.packing_blocks >= 8);
}
