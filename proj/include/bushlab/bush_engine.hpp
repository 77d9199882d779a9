#ifndef BUSHLAB_BUSH_ENGINE_HPP
#define BUSHLAB_BUSH_ENGINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bushlab/containment.hpp"
#include "bushlab/delta.hpp"

namespace bushlab {

/// Seed of the greedy bush assembly: a center blob plus s kernel blobs, all
/// disjoint, with A0 u B_i an edge and each B_i a (b,q)-kernel in the host.
struct AssemblyInput {
  Vset center = 0;              // A_0, an a-set
  std::vector<Vset> kernels;    // B_1..B_s, b-sets
  int q = 0;                    // sunflower multiplicity, = s*h*r normally
};

// Runs the D_0..D_s greedy kernel-assembly procedure and returns a
// verified embedding. Throws std::invalid_argument naming the violated
// precondition clause; throws std::runtime_error("assembly-failed: ...")
// only when q is below the guaranteed s*h*r threshold.
BushEmbedding assemble_bush(const Hypergraph& host, const AssemblyInput& inp, int h);

enum class ClassType {
  Alpha,        // J has r-1 members of size r-1; c(E) in the distinguished part
  BetaPointed,  // r = 4, unique 3-subset in J; counts via b(E) in Y
  BetaFlat,     // no (r-1)-sized member; counts every (r-1)-subset of E
  Unclassified,
};

struct AlphaBetaReport {
  int n = 0;
  int r = 0;
  std::vector<ClassType> class_types;   // parallel to the partition's classes
  std::vector<std::size_t> excluded;    // indices of unclassifiable classes
  std::map<Vset, std::pair<int, int>> counts;  // Y -> (alpha, beta)
  std::uint64_t alpha_edges = 0;        // |H_alpha|
  std::uint64_t beta_edges = 0;         // |H_beta|
  std::uint64_t sum_alpha = 0;
  std::uint64_t sum_beta = 0;
  std::uint64_t shadow_size = 0;        // |shadow of the classified classes|

  int max_alpha() const;
  std::string to_csv() const;
};

// Tags each verified class alpha/beta and accumulates the per-Y counts.
// Classes whose J matches no known structure are excluded with a warning
// entry rather than rejected.
AlphaBetaReport alpha_beta_count(const PartitionResult& pr);

// Deletes edges containing an (r-1)-set of codegree in [1, s-1] until none
// remains; the fixpoint is order-independent.
Hypergraph s_normalize(const Hypergraph& h, int s);

// Neighbor-exchange set Q(Y,u) = { z outside Y : Y \ {u} u {z} in H }.
Vset exchange_set(const Hypergraph& h, Vset y, int u);

// The fixed subset Q'(Y,u): the min(s,|Q|) smallest vertices of Q(Y,u).
Vset exchange_subset(const Hypergraph& h, Vset y, int u, int s);

// Largest color class of a greedy (2s+1)-coloring (degeneracy order) of the
// exchange-conflict graph on the star; result is separable and has size
// >= ceil(|P|/(2s+1)). Throws std::invalid_argument if P is not a star with
// kernel {u}.
std::vector<Vset> separable_star(const Hypergraph& h, int u, const std::vector<Vset>& star,
                                 int s);

bool is_separable(const Hypergraph& h, int u, const std::vector<Vset>& fam, int s);

struct DiscoverResult {
  std::optional<Vset> tset;               // T(u) when all checks pass
  std::optional<BushEmbedding> witness;   // a B_{s,1}(1,r-1) otherwise
  bool checks_passed = false;
  std::string note;
};

// Looks for the unique (s-1)-set T(u) shared by all exchange sets of a
// separable star; verifies the exchange identity on every disjoint edge at u
// and the closure T+(z) = T+(u), or extracts a bush witness via a system of
// distinct representatives. Requires |P'| >= r + 2s - 2.
DiscoverResult discover_T(const Hypergraph& h, int u, const std::vector<Vset>& sep_star,
                          int s);

}  // namespace bushlab

#endif
