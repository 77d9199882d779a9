#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "bushlab/constructions.hpp"
#include "bushlab/shadow_bounds.hpp"

using namespace bushlab;
using bushlab::testing::random_hypergraph;

TEST_CASE("lovasz binomial values") {
  CHECK(lovasz_binomial(4.5, 2) == doctest::Approx(7.875));
  CHECK(lovasz_binomial(5, 3) == doctest::Approx(10.0));
  for (int k = 1; k <= 6; ++k) {
    CHECK(lovasz_binomial(k - 1.0, k) == 0.0);
    CHECK(lovasz_binomial(k - 1.5, k) == 0.0);
  }
  CHECK_THROWS_AS(lovasz_binomial(3.0, 0), std::invalid_argument);
}

TEST_CASE("lovasz binomial is nondecreasing and convex above k-1") {
  for (int k = 2; k <= 5; ++k) {
    double prev = 0, prev_diff = 0;
    for (double x = k - 1; x <= k + 10; x += 0.25) {
      double v = lovasz_binomial(x, k);
      CHECK(v >= prev - 1e-12);
      double diff = v - prev;
      CHECK(diff >= prev_diff - 1e-9);
      prev = v;
      prev_diff = diff;
    }
  }
}

TEST_CASE("lovasz root examples and inversion") {
  CHECK(lovasz_root(10, 3) == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(lovasz_root(0, 4) == 3.0);
  CHECK(lovasz_root(7, 2) == doctest::Approx((1 + std::sqrt(57.0)) / 2).epsilon(1e-8));
  std::mt19937_64 rng(19);
  for (int iter = 0; iter < 200; ++iter) {
    int k = 1 + static_cast<int>(rng() % 5);
    double x = k - 1 + (rng() % 10000) / 500.0;
    double m = lovasz_binomial(x, k);
    // root of a non-integer count: invert through the monotone branch
    double back = lovasz_root(static_cast<std::uint64_t>(std::llround(m)), k);
    double target = static_cast<double>(std::llround(m));
    // the bisection tolerance on x amplifies through the polynomial, so
    // compare the counts relative to their magnitude
    CHECK(std::abs(lovasz_binomial(back, k) - target) < 1e-8 * std::max(1.0, target));
  }
  for (int k = 1; k <= 4; ++k)
    for (std::uint64_t m : {1ull, 5ull, 100ull, 12345ull})
      CHECK(lovasz_binomial(lovasz_root(m, k), k) == doctest::Approx(double(m)).epsilon(1e-8));
}

TEST_CASE("kk_check is tight on complete graphs and single sets") {
  for (int k = 2; k <= 4; ++k)
    for (int m = k; m <= 9; ++m) {
      std::vector<Vset> fam;
      for_each_ksubset(vfull(m), k, [&](Vset e) { fam.push_back(e); });
      auto rep = kk_check(fam, k);
      CHECK(rep.ok);
      CHECK(rep.shadow_size == binom(m, k - 1));
      CHECK(rep.bound == doctest::Approx(double(binom(m, k - 1))).epsilon(1e-9));
    }
  auto one = kk_check({from_vertices({1, 2, 3})}, 3);
  CHECK(one.ok);
  CHECK(one.shadow_size == 3);
  CHECK(one.bound == doctest::Approx(3.0));
}

TEST_CASE("kk_check on random families never reports a violation") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    int n = 5 + static_cast<int>(rng() % 6);  // 5..10
    Hypergraph h = random_hypergraph(n, 3, 1 + rng() % 40, rng());
    auto rep = kk_check(h.edges(), 3);
    CHECK(rep.ok);
    CHECK(static_cast<double>(rep.shadow_size) >= rep.bound - 1e-6);
  }
}

TEST_CASE("stability roots check") {
  int n = 100, r = 5, s = 3;
  std::vector<double> x((std::size_t)s - 1, n - 1.0);
  x.push_back(r - 2.0);
  // with C+C0 large enough the hypotheses hold:
  // sum C(n-1, r-1) = (s-1)(C(n,r-1) - C(n-1,r-2)) needs slack C(n-1,r-2)*(s-1)/n^{r-2}
  double needed = (s - 1) * lovasz_binomial(n - 1, r - 2) / std::pow(n, r - 2);
  auto rep = stability_roots_check(x, n, r, s, needed, 0.01);
  CHECK(rep.hypotheses_met);
  CHECK(rep.conclusion_holds);
  CHECK(rep.passed());
  CHECK(rep.b == doctest::Approx(3 * 24 * (needed + 0.01)));

  // too-small slack: hypotheses fail, vacuous pass is flagged
  auto vac = stability_roots_check(x, n, r, s, needed / 10, 0.0);
  CHECK(!vac.hypotheses_met);
  CHECK(vac.passed());

  std::vector<double> unsorted = {3.0, 5.0, 4.0};
  CHECK_THROWS_AS(stability_roots_check(unsorted, 10, 3, 3, 1, 1), std::invalid_argument);
}

TEST_CASE("heavy vertices") {
  Hypergraph k9 = [] {
    std::vector<Vset> e;
    for_each_ksubset(vfull(9), 3, [&](Vset x) { e.push_back(x); });
    return Hypergraph(9, 3, std::move(e));
  }();
  auto all = heavy_vertices(k9, 3, 2.0);  // C(9,2)-2*9 = 18 <= deg = C(8,2) = 28
  CHECK(all.vertices.size() == 9);
  CHECK(all.enough);

  Hypergraph empty(9, 3, {});
  CHECK(heavy_vertices(empty, 2, 10.0).vertices.empty());

  auto star = heavy_vertices(star_construction(12, 5, 3), 3, 0.12);
  CHECK(star.vertices == std::vector<int>{1, 2});
  CHECK(star.enough);
}

TEST_CASE("report json round trips through a parser-friendly shape") {
  auto rep = kk_check({from_vertices({1, 2, 3})}, 3);
  auto js = kk_report_json(rep);
  CHECK(js.find("\"shadow\"") != std::string::npos);
  CHECK(js.find("\"ok\"") != std::string::npos);
}
