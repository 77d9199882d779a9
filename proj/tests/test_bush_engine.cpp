#include <set>

#include "doctest.h"
#include "helpers.hpp"

#include "bushlab/bush_engine.hpp"
#include "bushlab/constructions.hpp"

using namespace bushlab;
using bushlab::testing::random_hypergraph;

namespace {

Hypergraph complete_graph(int n, int r) {
  std::vector<Vset> edges;
  for_each_ksubset(vfull(n), r, [&](Vset e) { edges.push_back(e); });
  return Hypergraph(n, r, std::move(edges));
}

}  // namespace

TEST_CASE("assemble_bush on a complete host") {
  Hypergraph k20 = complete_graph(20, 3);
  AssemblyInput inp;
  inp.center = from_vertices({1, 2});
  inp.kernels = {from_vertices({3}), from_vertices({4})};
  inp.q = 6;
  BushEmbedding emb = assemble_bush(k20, inp, 1);
  CHECK(emb.center == inp.center);
  CHECK(emb.middles == inp.kernels);
  CHECK(check_bush_embedding(k20, {2, 1}, {2, 1}, emb));
  // and the containment module agrees a bush exists
  CHECK(contains_bush(k20, {2, 1}, {2, 1}).has_value());
}

TEST_CASE("assemble_bush precondition failures name the clause") {
  Hypergraph k = complete_graph(10, 3);
  AssemblyInput overlap;
  overlap.center = from_vertices({1, 2});
  overlap.kernels = {from_vertices({2})};
  overlap.q = 3;
  CHECK_THROWS_AS(assemble_bush(k, overlap, 1), std::invalid_argument);

  Hypergraph sparse = Hypergraph::from_vertex_lists(8, 3, {{1, 2, 3}});
  AssemblyInput no_kernel;
  no_kernel.center = from_vertices({1, 2});
  no_kernel.kernels = {from_vertices({3})};
  no_kernel.q = 2;  // {3} is not a (1,2)-kernel here
  CHECK_THROWS_AS(assemble_bush(sparse, no_kernel, 1), std::invalid_argument);
}

TEST_CASE("assemble_bush succeeds whenever q >= shr and inputs are valid") {
  // greedy petal picking can only fail below the s*h*r threshold
  std::mt19937_64 rng(404);
  int s = 2, h = 1, r = 3, q = s * h * r;
  for (int iter = 0; iter < 30; ++iter) {
    Hypergraph host = random_hypergraph(12, r, 30 + rng() % 60, rng());
    auto ks = kernels(host, 1, q);
    for (Vset b1 : ks) {
      for (Vset b2 : ks) {
        if (b1 >= b2) continue;
        for (Vset e : host.edges()) {
          Vset a0 = e & ~b1;
          if (vsize(e & b1) != 1 || (a0 & b2)) continue;
          if (!host.has_edge(a0 | b2)) continue;
          AssemblyInput inp{a0, {b1, b2}, q};
          BushEmbedding emb = assemble_bush(host, inp, h);  // must not throw
          CHECK(check_bush_embedding(host, {s, h}, {2, 1}, emb));
          CHECK(contains_bush(host, {s, h}, {2, 1}).has_value());
          goto next_iter;
        }
      }
    }
  next_iter:;
  }
}

TEST_CASE("s_normalize fixpoint") {
  Hypergraph k = complete_graph(8, 3);
  CHECK(s_normalize(k, 2) == k);  // all pair codegrees are 6

  Hypergraph single = Hypergraph::from_vertex_lists(5, 3, {{1, 2, 3}});
  CHECK(s_normalize(single, 2).empty());

  std::mt19937_64 rng(55);
  for (int iter = 0; iter < 20; ++iter) {
    Hypergraph h = random_hypergraph(9, 3, 10 + rng() % 25, rng());
    for (int s = 2; s <= 3; ++s) {
      Hypergraph norm = s_normalize(h, s);
      // s-normal: no (r-1)-set with codegree in [1, s-1]
      for_each_ksubset(vfull(9), 2, [&](Vset y) {
        int c = codegree(norm, y);
        CHECK((c == 0 || c >= s));
      });
      CHECK(s_normalize(norm, s) == norm);  // idempotent
    }
  }
}

TEST_CASE("s_normalize is order independent") {
  // one-at-a-time deletion in random order reaches the same fixpoint
  std::mt19937_64 rng(56);
  for (int iter = 0; iter < 10; ++iter) {
    Hypergraph h = random_hypergraph(8, 3, 15 + rng() % 15, rng());
    int s = 2;
    Hypergraph cur = h;
    for (;;) {
      std::vector<Vset> bad;
      for (Vset e : cur.edges()) {
        bool doomed = false;
        for_each_ksubset(e, 2, [&](Vset y) {
          int c = codegree(cur, y);
          if (c >= 1 && c < s) doomed = true;
        });
        if (doomed) bad.push_back(e);
      }
      if (bad.empty()) break;
      cur = cur.without({bad[rng() % bad.size()]});
    }
    CHECK(cur == s_normalize(h, s));
  }
}

TEST_CASE("exchange sets against direct enumeration") {
  std::mt19937_64 rng(60);
  for (int iter = 0; iter < 25; ++iter) {
    Hypergraph h = random_hypergraph(9, 3, 12 + rng() % 15, rng());
    for (Vset y : h.edges()) {
      for (int u : to_vertices(y)) {
        Vset q = exchange_set(h, y, u);
        for (int z = 1; z <= 9; ++z) {
          bool expect = !vhas(y, z) && h.has_edge((y & ~vbit(u)) | vbit(z));
          CHECK(vhas(q, z) == expect);
        }
        Vset qs = exchange_subset(h, y, u, 2);
        CHECK(vsize(qs) == std::min(2, vsize(q)));
        CHECK((qs & q) == qs);
        // lexicographically least = smallest vertices
        if (vsize(q) > 2) CHECK(vmin(q) == vmin(qs));
      }
    }
  }
  Hypergraph h = random_hypergraph(6, 3, 8, 1);
  int outside = vmin(~h.edge(0) & vfull(6));
  CHECK_THROWS_AS(exchange_set(h, h.edge(0), outside), std::invalid_argument);
}

TEST_CASE("separable_star bound and predicate") {
  std::mt19937_64 rng(70);
  int found = 0;
  for (int iter = 0; iter < 200 && found < 60; ++iter) {
    int n = 10 + static_cast<int>(rng() % 8);
    Hypergraph h = random_hypergraph(n, 3, 25 + rng() % 40, rng());
    int u = 1 + static_cast<int>(rng() % n);
    // grow a star at u greedily from the host's edges
    std::vector<Vset> star;
    Vset used = vbit(u);
    for (Vset e : h.edges()) {
      if (!vhas(e, u)) continue;
      if ((e & used) != vbit(u)) continue;
      star.push_back(e);
      used |= e;
    }
    if (star.size() < 3) continue;
    ++found;
    int s = 2;
    auto sep = separable_star(h, u, star, s);
    CHECK(sep.size() * (2 * s + 1) >= star.size());
    CHECK(is_separable(h, u, sep, s));
    for (Vset p : sep)
      CHECK(std::find(star.begin(), star.end(), p) != star.end());
  }
  CHECK(found >= 30);
}

TEST_CASE("separable_star rejects non-stars") {
  Hypergraph h = complete_graph(7, 3);
  std::vector<Vset> notstar = {from_vertices({1, 2, 3}), from_vertices({1, 2, 4})};
  CHECK_THROWS_AS(separable_star(h, 1, notstar, 2), std::invalid_argument);
}

TEST_CASE("discover_T finds the planted transversal set") {
  // edges {u,x,y} and {w,x,y} for all pairs x<y in S: exchanging u always
  // lands on w, so T(u) = {w}
  int u = 11, w = 12;
  std::vector<std::vector<int>> lists;
  for (int x = 1; x <= 10; ++x)
    for (int y = x + 1; y <= 10; ++y) {
      lists.push_back({u, x, y});
      lists.push_back({w, x, y});
    }
  Hypergraph h = Hypergraph::from_vertex_lists(12, 3, lists);
  std::vector<Vset> star;
  for (int x = 1; x <= 10; x += 2) star.push_back(from_vertices({u, x, x + 1}));
  REQUIRE(star.size() == 5);  // r + 2s - 2 = 5 for r=3, s=2
  auto res = discover_T(h, u, star, 2);
  CHECK(res.checks_passed);
  REQUIRE(res.tset.has_value());
  CHECK(*res.tset == vbit(w));
}

TEST_CASE("discover_T extracts a bush witness from a complete host") {
  // put the star on the high vertices so the lex-least exchange picks stay
  // clear of it and the star is separable
  Hypergraph k = complete_graph(24, 3);
  std::vector<Vset> star;
  for (int x = 14; x <= 23; x += 2) star.push_back(from_vertices({1, x, x + 1}));
  // complete host: every exchange set is huge, so no consistent (s-1)-set
  auto res = discover_T(k, 1, star, 2);
  CHECK(!res.checks_passed);
  REQUIRE(res.witness.has_value());
  CHECK(check_bush_embedding(k, {2, 1}, {1, 2}, *res.witness));
  CHECK(!res.note.empty());
}

TEST_CASE("discover_T rejects undersized stars") {
  Hypergraph k = complete_graph(10, 3);
  std::vector<Vset> star = {from_vertices({1, 2, 3}), from_vertices({1, 4, 5})};
  CHECK_THROWS_AS(discover_T(k, 1, star, 2), std::invalid_argument);
}

TEST_CASE("alpha_beta_count on an empty partition") {
  PartitionResult pr;
  pr.residue = Hypergraph(6, 3, {});
  auto rep = alpha_beta_count(pr);
  CHECK(rep.counts.empty());
  CHECK(rep.sum_alpha == 0);
  CHECK(rep.sum_beta == 0);
  CHECK(rep.max_alpha() == 0);
}

TEST_CASE("alpha_beta_count internal consistency") {
  std::mt19937_64 rng(81);
  for (int iter = 0; iter < 8; ++iter) {
    Hypergraph h = random_hypergraph(12, 3, 30 + rng() % 30, rng());
    ExtractOptions opts;
    opts.seed = rng();
    auto pr = partition_procedure(h, 2, 0.5, opts);
    auto rep = alpha_beta_count(pr);
    CHECK(rep.class_types.size() == pr.classes.size());

    std::uint64_t alpha_total = 0, beta_total = 0;
    for (auto& [y, ab] : rep.counts) {
      CHECK(vsize(y) == 2);
      alpha_total += ab.first;
      beta_total += ab.second;
    }
    CHECK(alpha_total == rep.sum_alpha);
    CHECK(beta_total == rep.sum_beta);
    CHECK(rep.sum_alpha == rep.alpha_edges);  // one Y per alpha edge
    // flat beta edges contribute one count per (r-1)-subset
    std::uint64_t expected_beta = 0;
    for (std::size_t i = 0; i < pr.classes.size(); ++i)
      if (rep.class_types[i] == ClassType::BetaFlat)
        expected_beta += 3 * pr.classes[i].subfamily.size();
    CHECK(rep.sum_beta == expected_beta);
    // excluded classes contribute nothing
    for (auto idx : rep.excluded) CHECK(rep.class_types[idx] == ClassType::Unclassified);
  }
}

TEST_CASE("alpha count for a single sunflower class") {
  // one q-sunflower with kernel size r-1 forms an alpha-type class
  Hypergraph h = Hypergraph::from_vertex_lists(
      9, 3, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 2, 6}, {1, 2, 7}, {1, 2, 8}});
  auto pr = partition_procedure(h, 2, 0.1, {.seed = 17});
  auto rep = alpha_beta_count(pr);
  bool has_alpha = false;
  for (auto t : rep.class_types) has_alpha |= t == ClassType::Alpha;
  if (has_alpha) {
    CHECK(rep.max_alpha() == 1);
    for (auto& [y, ab] : rep.counts)
      if (ab.first) CHECK(vsize(y & from_vertices({1, 2})) == 2);
  }
}
