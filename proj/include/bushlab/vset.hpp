#ifndef BUSHLAB_VSET_HPP
#define BUSHLAB_VSET_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace bushlab {

// A set of vertices from [n], n <= 64, as a bitmask. Vertex v occupies bit v-1.
using Vset = std::uint64_t;

constexpr int kMaxVertices = 64;

constexpr Vset vbit(int v) { return Vset{1} << (v - 1); }

constexpr bool vhas(Vset s, int v) { return (s >> (v - 1)) & 1; }

constexpr int vsize(Vset s) { return std::popcount(s); }

// Smallest vertex of a nonempty set.
constexpr int vmin(Vset s) { return std::countr_zero(s) + 1; }

// The full set [n].
constexpr Vset vfull(int n) { return n == 64 ? ~Vset{0} : (Vset{1} << n) - 1; }

inline std::vector<int> to_vertices(Vset s) {
  std::vector<int> out;
  out.reserve(vsize(s));
  while (s) {
    out.push_back(std::countr_zero(s) + 1);
    s &= s - 1;
  }
  return out;
}

inline Vset from_vertices(const std::vector<int>& vs) {
  Vset s = 0;
  for (int v : vs) s |= vbit(v);
  return s;
}

// Lexicographic order on the sorted vertex lists. Distinct from numeric
// (colex) mask order: {1,4} < {2,3} here.
inline bool lex_less(Vset a, Vset b) {
  while (a && b) {
    int x = std::countr_zero(a), y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

// Invokes fn(subset) for every k-subset of `mask`, in lexicographic order of
// the sorted vertex lists.
template <typename F>
void for_each_ksubset(Vset mask, int k, F&& fn) {
  std::vector<int> verts = to_vertices(mask);
  int m = static_cast<int>(verts.size());
  if (k < 0 || k > m) return;
  if (k == 0) {
    fn(Vset{0});
    return;
  }
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    Vset s = 0;
    for (int i : idx) s |= vbit(verts[i]);
    fn(s);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Exact binomial coefficient; callers stay well inside 64 bits.
inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r / i * (n - k + i) + r % i * (n - k + i) / i;
  }
  return r;
}

}  // namespace bushlab

#endif
