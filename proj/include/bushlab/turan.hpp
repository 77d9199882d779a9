#ifndef BUSHLAB_TURAN_HPP
#define BUSHLAB_TURAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bushlab/containment.hpp"

namespace bushlab {

struct OracleBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0.0;     // 0 = unlimited
  int threads = 1;
  // Isomorph-rejection memo covers partial families of at most this many
  // edges; correctness is unaffected by the value.
  int memo_edges = 6;
};

struct OracleResult {
  int n = 0;
  int r = 0;
  std::string pattern;
  std::uint64_t value = 0;
  Hypergraph witness;
  bool exact = true;  // false when the budget ran out: value is a lower bound
  std::uint64_t nodes = 0;
  std::uint64_t isomorph_rejections = 0;
  double seconds = 0.0;
};

// Exact maximum size of a family of r-subsets of [n] containing no
// (a,b)-blowup of T, by branch-and-bound over the r-sets in lex order.
// Anytime: with an exhausted budget the best family found so far is returned
// with exact = false.
OracleResult turan_exact(int n, int r, const BipartiteTree& t, BlowupSpec spec,
                         const OracleBudget& budget = {});

// Unpruned exhaustive search over all edge subsets; practical only for
// C(n,r) <= ~20. Cross-check for turan_exact.
std::uint64_t turan_bruteforce(int n, int r, const BipartiteTree& t, BlowupSpec spec);

struct TuranRow {
  int n = 0;
  int r = 0;
  BipartiteTree tree;
  BlowupSpec spec;
};

std::vector<OracleResult> turan_table(const std::vector<TuranRow>& rows,
                                      const OracleBudget& budget = {});

// Columns: n, r, pattern, exact_or_lb, value, nodes, seconds.
std::string turan_csv(const std::vector<OracleResult>& results);

}  // namespace bushlab

#endif
