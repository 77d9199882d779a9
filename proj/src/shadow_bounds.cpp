#include "bushlab/shadow_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace bushlab {

double lovasz_binomial(double x, int k) {
  if (k < 1) throw std::invalid_argument("lovasz_binomial: k >= 1 required");
  if (x < k - 1) return 0.0;
  double num = 1.0, den = 1.0;
  for (int i = 0; i < k; ++i) {
    num *= x - i;
    den *= i + 1;
  }
  return num / den;
}

double lovasz_root(std::uint64_t m, int k) {
  if (m == 0) return k - 1.0;
  double lo = k - 1.0, hi = k + static_cast<double>(m);  // C(k-1+m, k) >= m
  while (hi - lo > 1e-9) {
    double mid = (lo + hi) / 2;
    if (lovasz_binomial(mid, k) < static_cast<double>(m))
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

KkReport kk_check(const std::vector<Vset>& family, int k) {
  for (Vset e : family)
    if (vsize(e) != k) throw std::invalid_argument("kk_check: family not k-uniform");
  KkReport rep;
  rep.size = family.size();
  rep.k = k;
  rep.shadow_size = shadow_of(family).size();
  rep.x = lovasz_root(rep.size, k);
  rep.bound = k >= 2 ? lovasz_binomial(rep.x, k - 1) : (rep.size ? 1.0 : 0.0);
  rep.ok = static_cast<double>(rep.shadow_size) >= rep.bound - 1e-6;
  return rep;
}

StabilityReport stability_roots_check(const std::vector<double>& x, int n, int r, int s,
                                      double c_coeff, double c0) {
  if (!std::is_sorted(x.rbegin(), x.rend()))
    throw std::invalid_argument("stability_roots_check: roots must be sorted descending");
  if (static_cast<int>(x.size()) < s - 1)
    throw std::invalid_argument("stability_roots_check: need at least s-1 roots");
  double sum_r1 = 0, sum_r2 = 0;
  for (int i = 0; i < s - 1; ++i) {
    sum_r1 += lovasz_binomial(x[i], r - 1);
    sum_r2 += lovasz_binomial(x[i], r - 2);
  }
  double cc = c_coeff + c0;
  bool hyp1 = sum_r1 >= (s - 1) * lovasz_binomial(n, r - 1) - cc * std::pow(n, r - 2);
  bool hyp2 = (s - 1) * lovasz_binomial(n, r - 2) >= sum_r2;

  StabilityReport rep;
  double fact = 1;
  for (int i = 2; i <= r - 1; ++i) fact *= i;
  rep.b = 3 * fact * cc;
  rep.hypotheses_met = hyp1 && hyp2;
  rep.conclusion_holds = true;
  for (int i = 0; i < s - 1; ++i)
    if (!(x[i] > n - rep.b)) rep.conclusion_holds = false;
  return rep;
}

HeavyReport heavy_vertices(const Hypergraph& h, int s, double c1) {
  HeavyReport rep;
  int n = h.n(), r = h.r();
  rep.threshold =
      static_cast<double>(binom(n, r - 1)) - c1 * std::pow(n, r - 2);
  std::vector<std::pair<int, int>> by_degree;  // (-degree, vertex)
  for (int v = 1; v <= n; ++v) {
    int d = h.degree(v);
    // isolated vertices never count as heavy, even when the threshold
    // dips below zero at small n
    if (d > 0 && static_cast<double>(d) >= rep.threshold) by_degree.push_back({-d, v});
  }
  std::sort(by_degree.begin(), by_degree.end());
  for (auto [negd, v] : by_degree) rep.vertices.push_back(v);
  rep.enough = static_cast<int>(rep.vertices.size()) >= s - 1;
  return rep;
}

std::string kk_report_json(const KkReport& r) {
  nlohmann::json j{{"size", r.size},   {"k", r.k},         {"x", r.x},
                   {"shadow", r.shadow_size}, {"bound", r.bound}, {"ok", r.ok}};
  return j.dump(2);
}

std::string stability_report_json(const StabilityReport& r) {
  nlohmann::json j{{"hypotheses_met", r.hypotheses_met},
                   {"conclusion_holds", r.conclusion_holds},
                   {"b", r.b},
                   {"passed", r.passed()}};
  return j.dump(2);
}

std::string heavy_report_json(const HeavyReport& r) {
  nlohmann::json j{
      {"threshold", r.threshold}, {"vertices", r.vertices}, {"enough", r.enough}};
  return j.dump(2);
}

}  // namespace bushlab
