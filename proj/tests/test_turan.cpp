#include "doctest.h"
#include "helpers.hpp"

#include "bushlab/constructions.hpp"
#include "bushlab/turan.hpp"

using namespace bushlab;

namespace {
const BipartiteTree kP2{1, 2, {{1, 1}, {1, 2}}};                  // path, 2 edges
const BipartiteTree kP3{2, 2, {{1, 1}, {1, 2}, {2, 2}}};          // path, 3 edges
const BipartiteTree kEdge{1, 1, {{1, 1}}};
}  // namespace

TEST_CASE("oversized patterns give the complete graph") {
  auto res = turan_exact(7, 3, bush_tree({2, 1}), {2, 1});  // needs 8 vertices
  CHECK(res.value == binom(7, 3));
  CHECK(res.exact);
  CHECK(res.witness.size() == res.value);
}

TEST_CASE("oracle agrees with unpruned brute force") {
  std::vector<std::tuple<int, int, BipartiteTree, BlowupSpec>> cases = {
      {5, 3, kEdge, {2, 1}},      {6, 3, kEdge, {1, 2}},
      {5, 3, kP2, {1, 2}},        {6, 3, kP2, {1, 2}},
      {6, 3, kP2, {2, 1}},        {6, 3, bush_tree({2, 1}), {1, 2}},
      {5, 4, kP2, {2, 2}},        {6, 4, kEdge, {2, 2}},
      {6, 4, kP2, {1, 3}},
  };
  for (auto& [n, r, tree, spec] : cases) {
    auto res = turan_exact(n, r, tree, spec);
    CHECK(res.exact);
    CHECK(res.value == turan_bruteforce(n, r, tree, spec));
    CHECK(res.witness.size() == res.value);
    CHECK(!contains_blowup(res.witness, tree, spec).has_value());
  }
}

TEST_CASE("oracle dominates the star construction bound") {
  for (int s = 2; s <= 3; ++s)
    for (int n = 5; n <= 7; ++n) {
      auto res = turan_exact(n, 3, bush_tree({s, 1}), {1, 2});
      CHECK(res.exact);
      CHECK(res.value >= lower_bound_value(n, 3, s));
    }
}

TEST_CASE("oracle is monotone in n") {
  for (auto spec : {BlowupSpec{1, 2}, BlowupSpec{2, 1}}) {
    std::uint64_t prev = 0;
    for (int n = 5; n <= 8; ++n) {
      auto res = turan_exact(n, 3, bush_tree({2, 1}), spec);
      CHECK(res.exact);
      CHECK(res.value >= prev);
      prev = res.value;
    }
  }
}

TEST_CASE("P3 blowup bound from the full-star family") {
  // all triples through one vertex avoid the (2,1)-blowup of the 3-edge
  // path: its first and last edges are disjoint, so no vertex hits both
  for (int n = 7; n <= 8; ++n) {
    auto res = turan_exact(n, 3, kP3, {2, 1});
    CHECK(res.exact);
    CHECK(res.value >= binom(n - 1, 2));
  }
}

TEST_CASE("parallel search returns the same value") {
  OracleBudget seq, par;
  par.threads = 4;
  auto a = turan_exact(7, 3, bush_tree({2, 1}), {1, 2}, seq);
  auto b = turan_exact(7, 3, bush_tree({2, 1}), {1, 2}, par);
  CHECK(a.exact);
  CHECK(b.exact);
  CHECK(a.value == b.value);
  CHECK(!contains_blowup(b.witness, bush_tree({2, 1}), BlowupSpec{1, 2}).has_value());
}

TEST_CASE("budget exhaustion is flagged, not fatal") {
  OracleBudget tiny;
  tiny.max_nodes = 50;
  auto res = turan_exact(8, 3, bush_tree({2, 1}), {1, 2}, tiny);
  CHECK(!res.exact);
  CHECK(res.value >= 1);  // greedy incumbent at minimum
  CHECK(!contains_blowup(res.witness, bush_tree({2, 1}), BlowupSpec{1, 2}).has_value());
}

TEST_CASE("turan table batch driver") {
  CHECK(turan_table({}).empty());
  std::vector<TuranRow> rows;
  for (int n = 5; n <= 7; ++n) rows.push_back({n, 3, bush_tree({2, 1}), {1, 2}});
  auto results = turan_table(rows);
  REQUIRE(results.size() == 3);
  for (std::size_t i = 1; i < results.size(); ++i)
    CHECK(results[i].value >= results[i - 1].value);  // bush sweep monotone

  std::string csv = turan_csv(results);
  CHECK(csv.rfind("n,r,pattern,exact_or_lb,value,nodes,seconds\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("exact") != std::string::npos);
}
