#ifndef BUSHLAB_SHADOW_BOUNDS_HPP
#define BUSHLAB_SHADOW_BOUNDS_HPP

#include <string>
#include <vector>

#include "bushlab/hypergraph.hpp"

namespace bushlab {

// C(x, k) extended to real x: x(x-1)...(x-k+1)/k! for x >= k-1, 0 below.
// Requires k >= 1.
double lovasz_binomial(double x, int k);

// The unique x >= k-1 with lovasz_binomial(x, k) = m, by bisection to 1e-9
// on x. Returns k-1 for m = 0.
double lovasz_root(std::uint64_t m, int k);

struct KkReport {
  std::uint64_t size = 0;  // |F|
  int k = 0;
  double x = 0.0;          // Lovasz root with C(x,k) = |F|
  std::uint64_t shadow_size = 0;
  double bound = 0.0;      // C(x, k-1)
  bool ok = false;         // shadow_size >= bound - 1e-6
};

// Kruskal-Katona in Lovasz form for a k-uniform family. The inequality holds
// for every family, so ok = false marks a fatal internal inconsistency.
KkReport kk_check(const std::vector<Vset>& family, int k);

struct StabilityReport {
  bool hypotheses_met = false;  // both displayed inequalities hold
  bool conclusion_holds = false;  // x_i > n - b for i < s; evaluated regardless
  double b = 0.0;               // 3(r-1)!(C+C0)
  // Vacuously true when the hypotheses fail (flagged via hypotheses_met).
  bool passed() const { return !hypotheses_met || conclusion_holds; }
};

// Checks that the two root-sequence inequalities force x_1..x_{s-1} > n - b.
// x must be sorted descending (invalid_argument otherwise); the sums run over
// the first s-1 roots.
StabilityReport stability_roots_check(const std::vector<double>& x, int n, int r, int s,
                                      double c_coeff, double c0);

struct HeavyReport {
  double threshold = 0.0;     // C(n, r-1) - C1 * n^{r-2}
  std::vector<int> vertices;  // qualifying vertices, descending degree
  bool enough = false;        // at least s-1 qualify
};

HeavyReport heavy_vertices(const Hypergraph& h, int s, double c1);

std::string kk_report_json(const KkReport& r);
std::string stability_report_json(const StabilityReport& r);
std::string heavy_report_json(const HeavyReport& r);

}  // namespace bushlab

#endif
