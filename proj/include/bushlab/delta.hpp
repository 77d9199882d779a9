#ifndef BUSHLAB_DELTA_HPP
#define BUSHLAB_DELTA_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bushlab/hypergraph.hpp"

namespace bushlab {

/// q members of a family pairwise intersecting exactly in the kernel.
struct Sunflower {
  Vset kernel = 0;
  std::vector<Vset> petals;  // pairwise disjoint, each disjoint from kernel

  std::vector<Vset> members() const;
  bool valid() const;
};

/// A family of proper subsets of [r], kept as sorted bitmasks over r bits.
struct PatternFamily {
  int r = 0;
  std::vector<std::uint32_t> members;

  void normalize();  // sort + dedup
  bool contains(std::uint32_t m) const;
  bool closed_under_intersection() const;
  void close_under_intersection();
  int count_of_size(int k) const;
  bool operator==(const PatternFamily&) const = default;
};

/// The five-conclusion certificate produced by homogeneous extraction: an
/// r-partite subfamily with a uniform intersection-pattern structure J and a
/// q-star witness per (member, kernel) pair.
struct ExtractionCertificate {
  Hypergraph subfamily;
  Partition partition;
  PatternFamily j;
  int q = 0;
  // Keyed by (index of F in subfamily.edges(), kernel A in I(F, F*)).
  std::map<std::pair<std::size_t, Vset>, Sunflower> star_witnesses;
  // Part playing the role of element r in the J^(k) relabeling, when J
  // contains such an isomorph; materializes the choice function c(E).
  std::optional<int> special_part;
};

struct PartitionResult {
  std::vector<ExtractionCertificate> classes;
  Hypergraph residue;
  int m = 0;
};

// Exact sunflower search: q members of f pairwise intersecting exactly in a.
// Greedy first, then backtracking set packing on the link of a. When
// `required` is given, that member is forced into the sunflower.
std::optional<Sunflower> find_sunflower(const Hypergraph& f, Vset a, int q,
                                        std::optional<Vset> required = std::nullopt);

// All b-sets that are kernels of q-sunflowers in f. Requires 1 <= b < r.
std::vector<Vset> kernels(const Hypergraph& f, int b, int q);

// I(F, f) = { F cap F' : F' in f \ {F} }, sorted and deduplicated.
// Requires E in f.
std::vector<Vset> intersection_structure(const Hypergraph& f, Vset e);

// True iff every m-subset of [r] is contained in some member.
bool is_m_covering(const PatternFamily& j, int m);

// The canonical intersection-closed family J^(k): the sets [r]\{i} for
// i <= k, the (r-2)-subsets containing [k], and all their intersections.
PatternFamily make_Jk(int r, int k);

// For an intersection-closed (r-2)-covering family: k = number of
// (r-1)-sized members; verifies J contains an isomorph of J^(k) and throws
// std::logic_error otherwise.
int classify_covering(const PatternFamily& j);

// A disjoint pair of members with |A| = a, |B| = b (a+b = r), if any.
std::optional<std::pair<std::uint32_t, std::uint32_t>> disjoint_pair(const PatternFamily& j,
                                                                     int a, int b);

struct ExtractOptions {
  std::uint64_t seed = 1;
  int restarts = 12;
  // Honors a fixed r-partition instead of proposing one (first attempt).
  std::optional<Partition> hint;
};

// Heuristic homogeneous-subfamily extraction paired with the exact verifier;
// no size guarantee. Never returns an empty subfamily for nonempty input
// (falls back to a single-edge certificate).
ExtractionCertificate extract_homogeneous(const Hypergraph& f, int q,
                                          const ExtractOptions& opts = {});

struct VerifyReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Exhaustive machine check of the certificate: r-partiteness, identical
// pattern structures, intersection closure, witness validity, special-part
// consistency.
VerifyReport verify_certificate(const ExtractionCertificate& cert);

// Repeated extraction until the remainder has at most C*n^(r-2) edges.
PartitionResult partition_procedure(const Hypergraph& h, int q, double c_coeff,
                                    const ExtractOptions& opts = {});

// JSON report (partition, J as bitmask list, witness indices) for audit.
std::string certificate_json(const ExtractionCertificate& cert);
std::string partition_json(const PartitionResult& pr);

}  // namespace bushlab

#endif
