#include "bushlab/turan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace bushlab {

namespace {

std::string pattern_id(const BipartiteTree& t, BlowupSpec spec) {
  std::ostringstream out;
  out << "T(" << t.s << 'x' << t.t << ';';
  for (std::size_t i = 0; i < t.edges.size(); ++i)
    out << (i ? "|" : "") << t.edges[i].first << ':' << t.edges[i].second;
  out << ";a=" << spec.a << ";b=" << spec.b << ')';
  return out.str();
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// All copies of the blowup of `t` inside the complete r-graph on [n], as
// bitmasks over the lex-ordered candidate r-sets. Enumerated by injecting the
// pattern's vertex set into [n]; deduplication absorbs automorphisms.
std::vector<std::uint64_t> enumerate_copies(int n, const std::vector<Vset>& cand,
                                            const Hypergraph& pat) {
  std::vector<int> pos(std::size_t{1} << n, -1);
  for (std::size_t i = 0; i < cand.size(); ++i) pos[cand[i]] = static_cast<int>(i);

  int p = pat.n();
  std::set<std::uint64_t> out;
  std::vector<int> image(p + 1, 0);
  Vset used = 0;
  auto place = [&](auto&& self, int v) -> void {
    if (v > p) {
      std::uint64_t mask = 0;
      for (Vset e : pat.edges()) {
        Vset mapped = 0;
        for (int x : to_vertices(e)) mapped |= vbit(image[x]);
        mask |= std::uint64_t{1} << pos[mapped];
      }
      out.insert(mask);
      return;
    }
    for (int w = 1; w <= n; ++w) {
      if (vhas(used, w)) continue;
      image[v] = w;
      used |= vbit(w);
      self(self, v + 1);
      used &= ~vbit(w);
    }
  };
  if (p <= n) place(place, 1);
  return {out.begin(), out.end()};
}

// ---- mask engine: search over <= 64 candidate edges with precomputed copies

struct MaskProblem {
  int n = 0;
  int m = 0;  // number of candidate r-sets
  std::vector<Vset> cand;
  std::vector<std::uint64_t> copies;
  std::vector<std::vector<std::uint64_t>> copies_at;  // per candidate index
};

struct MaskState {
  std::uint64_t chosen = 0;
  std::uint64_t avail = 0;  // undecided edges still individually addable
};

// Edges killed by adding `e` to `chosen`: those completing a copy next.
std::uint64_t propagate(const MaskProblem& pb, std::uint64_t chosen, std::uint64_t avail,
                        int e) {
  std::uint64_t c2 = chosen | (std::uint64_t{1} << e);
  std::uint64_t a2 = avail & ~(std::uint64_t{1} << e);
  for (std::uint64_t copy : pb.copies_at[e]) {
    std::uint64_t need = copy & ~c2;
    if (std::popcount(need) == 1) a2 &= ~need;
  }
  return a2;
}

MaskState initial_state(const MaskProblem& pb) {
  MaskState st;
  st.avail = pb.m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pb.m) - 1;
  for (std::uint64_t copy : pb.copies)
    if (std::popcount(copy) == 1) st.avail &= ~copy;
  return st;
}

// Stabilizer machinery for the isomorph-rejection memo. For each vertex
// permutation of [n] we store the induced permutation of candidate indices
// and the set of lex-prefix lengths b it stabilizes (as a bitmask over b).
struct StabTable {
  int m = 0;
  std::vector<std::vector<std::uint8_t>> sigma;  // induced index permutations
  std::vector<std::uint64_t> valid_b;            // bit b-1 set: stabilizes prefix_b
  std::map<int, std::vector<int>> per_b;         // cached perm lists
  std::mutex mu;

  void build(int n, const std::vector<Vset>& cand) {
    m = static_cast<int>(cand.size());
    std::vector<int> pos(std::size_t{1} << n, -1);
    for (int i = 0; i < m; ++i) pos[cand[i]] = i;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::vector<std::uint8_t> sg(m);
      for (int i = 0; i < m; ++i) {
        Vset mapped = 0;
        for (int v : to_vertices(cand[i])) mapped |= vbit(perm[v - 1]);
        sg[i] = static_cast<std::uint8_t>(pos[mapped]);
      }
      std::uint64_t vb = 0;
      int runmax = -1;
      for (int b = 1; b <= m && b <= 64; ++b) {
        runmax = std::max(runmax, static_cast<int>(sg[b - 1]));
        if (runmax == b - 1) vb |= std::uint64_t{1} << (b - 1);
      }
      bool identity = true;
      for (int i = 0; i < m && identity; ++i) identity = sg[i] == i;
      if (!identity) {
        sigma.push_back(std::move(sg));
        valid_b.push_back(vb);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  const std::vector<int>& perms_for(int b) {
    std::lock_guard<std::mutex> lk(mu);
    auto it = per_b.find(b);
    if (it != per_b.end()) return it->second;
    std::vector<int> list;
    if (b >= 1 && b <= 64) {
      std::uint64_t bit = std::uint64_t{1} << (b - 1);
      for (std::size_t i = 0; i < sigma.size(); ++i)
        if (valid_b[i] & bit) list.push_back(static_cast<int>(i));
    }
    return per_b.emplace(b, std::move(list)).first->second;
  }

  std::uint64_t apply(int pi, std::uint64_t mask) const {
    std::uint64_t out = 0;
    while (mask) {
      int i = std::countr_zero(mask);
      out |= std::uint64_t{1} << sigma[pi][i];
      mask &= mask - 1;
    }
    return out;
  }
};

struct SharedSearch {
  const MaskProblem* pb = nullptr;
  StabTable* stab = nullptr;  // null when the memo is disabled
  OracleBudget budget;
  std::chrono::steady_clock::time_point t0;
  std::atomic<std::uint64_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> rejections{0};
  std::atomic<bool> exhausted{false};
  std::mutex witness_mu;
  std::uint64_t witness_mask = 0;

  void offer(std::uint64_t chosen) {
    std::uint64_t sz = std::popcount(chosen);
    std::uint64_t cur = best.load();
    while (sz > cur && !best.compare_exchange_weak(cur, sz)) {
    }
    if (sz > cur) {
      std::lock_guard<std::mutex> lk(witness_mu);
      if (std::uint64_t(std::popcount(witness_mask)) < sz) witness_mask = chosen;
    }
  }

  bool over_budget() {
    std::uint64_t nd = nodes.load();
    if (budget.max_nodes && nd > budget.max_nodes) return true;
    if (budget.max_seconds > 0 && (nd & 1023) == 0 &&
        elapsed_since(t0) > budget.max_seconds)
      return true;
    return false;
  }
};

// One worker's DFS. The memo is private to the worker: a repeated key means
// an isomorphic state was already explored (or bound-pruned against a
// then-smaller incumbent), so skipping cannot lose the optimum.
struct Worker {
  SharedSearch* sh;
  std::map<int, std::unordered_set<std::uint64_t>> memo;

  void dfs(std::uint64_t chosen, std::uint64_t avail) {
    sh->nodes.fetch_add(1, std::memory_order_relaxed);
    if (sh->exhausted.load(std::memory_order_relaxed)) return;
    if (sh->over_budget()) {
      sh->exhausted.store(true);
      return;
    }
    std::uint64_t size = std::popcount(chosen);
    if (size + std::popcount(avail) <= sh->best.load(std::memory_order_relaxed)) return;
    if (!avail) {
      sh->offer(chosen);
      return;
    }
    int e = std::countr_zero(avail);
    if (sh->stab && static_cast<int>(size) <= sh->budget.memo_edges) {
      const auto& perms = sh->stab->perms_for(e);
      if (!perms.empty() && perms.size() <= 20000) {
        std::uint64_t canon = chosen;
        for (int pi : perms) canon = std::min(canon, sh->stab->apply(pi, chosen));
        if (!memo[e].insert(canon).second) {
          sh->rejections.fetch_add(1, std::memory_order_relaxed);
          return;
        }
      }
    }
    std::uint64_t with = chosen | (std::uint64_t{1} << e);
    sh->offer(with);
    dfs(with, propagate(*sh->pb, chosen, avail, e));
    dfs(chosen, avail & ~(std::uint64_t{1} << e));
  }
};

std::uint64_t greedy_seed(const MaskProblem& pb, MaskState st) {
  while (st.avail) {
    int e = std::countr_zero(st.avail);
    st.avail = propagate(pb, st.chosen, st.avail, e);
    st.chosen |= std::uint64_t{1} << e;
  }
  return st.chosen;
}

void run_mask_search(const MaskProblem& pb, SharedSearch& sh) {
  MaskState root = initial_state(pb);
  sh.offer(greedy_seed(pb, root));

  int threads = std::max(1, sh.budget.threads);
  if (threads == 1) {
    Worker w{&sh};
    w.dfs(root.chosen, root.avail);
    return;
  }

  // Frontier split: expand breadth-first until enough disjoint subtrees
  // exist, then let workers drain them against the shared incumbent.
  std::deque<MaskState> frontier{root};
  while (static_cast<int>(frontier.size()) < 4 * threads) {
    MaskState st = frontier.front();
    if (!st.avail) break;
    frontier.pop_front();
    int e = std::countr_zero(st.avail);
    std::uint64_t with = st.chosen | (std::uint64_t{1} << e);
    sh.offer(with);
    frontier.push_back({with, propagate(pb, st.chosen, st.avail, e)});
    frontier.push_back({st.chosen, st.avail & ~(std::uint64_t{1} << e)});
  }
  std::vector<MaskState> tasks(frontier.begin(), frontier.end());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i)
    pool.emplace_back([&] {
      Worker w{&sh};
      for (;;) {
        std::size_t k = next.fetch_add(1);
        if (k >= tasks.size()) return;
        w.dfs(tasks[k].chosen, tasks[k].avail);
      }
    });
  for (auto& th : pool) th.join();
}

// ---- generic fallback for search spaces beyond 64 candidate edges

struct GenericSearch {
  int n, r;
  const BipartiteTree* tree;
  BlowupSpec spec;
  std::vector<Vset> cand;
  SharedSearch* sh;
  std::vector<Vset> chosen;
  std::vector<Vset> best_edges;
  std::uint64_t best = 0;

  bool addable(Vset e) {
    std::vector<Vset> with = chosen;
    with.push_back(e);
    Hypergraph host(n, r, std::move(with));
    return !contains_blowup_using(host, *tree, spec, e).has_value();
  }

  void dfs(std::size_t idx) {
    sh->nodes.fetch_add(1, std::memory_order_relaxed);
    if (sh->exhausted.load()) return;
    if (sh->over_budget()) {
      sh->exhausted.store(true);
      return;
    }
    if (chosen.size() > best) {
      best = chosen.size();
      best_edges = chosen;
    }
    if (idx == cand.size() || chosen.size() + (cand.size() - idx) <= best) return;
    if (addable(cand[idx])) {
      chosen.push_back(cand[idx]);
      dfs(idx + 1);
      chosen.pop_back();
    }
    dfs(idx + 1);
  }
};

}  // namespace

OracleResult turan_exact(int n, int r, const BipartiteTree& t, BlowupSpec spec,
                         const OracleBudget& budget) {
  if (r != spec.r()) throw std::invalid_argument("turan_exact: r != a+b");
  if (n < r || n > 24) throw std::invalid_argument("turan_exact: need r <= n <= 24");
  t.validate();
  auto t0 = std::chrono::steady_clock::now();

  OracleResult res;
  res.n = n;
  res.r = r;
  res.pattern = pattern_id(t, spec);

  std::vector<Vset> cand;
  for_each_ksubset(vfull(n), r, [&](Vset e) { cand.push_back(e); });

  Hypergraph pat = blowup(t, spec);
  if (pat.n() > n) {
    res.value = cand.size();
    res.witness = Hypergraph(n, r, cand);
    res.seconds = elapsed_since(t0);
    return res;
  }

  SharedSearch sh;
  sh.budget = budget;
  sh.t0 = t0;

  if (cand.size() <= 64 && n <= 12) {
    MaskProblem pb;
    pb.n = n;
    pb.m = static_cast<int>(cand.size());
    pb.cand = cand;
    pb.copies = enumerate_copies(n, cand, pat);
    pb.copies_at.resize(pb.m);
    for (std::uint64_t copy : pb.copies) {
      std::uint64_t rest = copy;
      while (rest) {
        pb.copies_at[std::countr_zero(rest)].push_back(copy);
        rest &= rest - 1;
      }
    }
    StabTable stab;
    if (n <= 8 && budget.memo_edges > 0) stab.build(n, cand);
    sh.pb = &pb;
    sh.stab = (n <= 8 && budget.memo_edges > 0) ? &stab : nullptr;
    run_mask_search(pb, sh);

    res.value = sh.best.load();
    std::vector<Vset> wedges;
    std::uint64_t wm = sh.witness_mask;
    while (wm) {
      wedges.push_back(cand[std::countr_zero(wm)]);
      wm &= wm - 1;
    }
    res.witness = Hypergraph(n, r, std::move(wedges));
  } else {
    GenericSearch gs{n, r, &t, spec, cand, &sh};
    gs.dfs(0);
    res.value = gs.best;
    res.witness = Hypergraph(n, r, gs.best_edges);
  }

  res.exact = !sh.exhausted.load();
  res.nodes = sh.nodes.load();
  res.isomorph_rejections = sh.rejections.load();
  res.seconds = elapsed_since(t0);
  if (contains_blowup(res.witness, t, spec))
    throw std::logic_error("turan_exact: witness failed the freeness re-check");
  return res;
}

std::uint64_t turan_bruteforce(int n, int r, const BipartiteTree& t, BlowupSpec spec) {
  if (r != spec.r()) throw std::invalid_argument("turan_bruteforce: r != a+b");
  std::vector<Vset> cand;
  for_each_ksubset(vfull(n), r, [&](Vset e) { cand.push_back(e); });
  if (cand.size() > 24) throw std::invalid_argument("turan_bruteforce: C(n,r) too large");
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cand.size()); ++mask) {
    std::uint64_t sz = std::popcount(mask);
    if (sz <= best) continue;
    std::vector<Vset> edges;
    std::uint64_t m2 = mask;
    while (m2) {
      edges.push_back(cand[std::countr_zero(m2)]);
      m2 &= m2 - 1;
    }
    Hypergraph h(n, r, std::move(edges));
    if (!contains_blowup(h, t, spec)) best = sz;
  }
  return best;
}

std::vector<OracleResult> turan_table(const std::vector<TuranRow>& rows,
                                      const OracleBudget& budget) {
  std::vector<OracleResult> out;
  out.reserve(rows.size());
  for (const auto& row : rows)
    out.push_back(turan_exact(row.n, row.r, row.tree, row.spec, budget));
  return out;
}

std::string turan_csv(const std::vector<OracleResult>& results) {
  std::ostringstream out;
  out << "n,r,pattern,exact_or_lb,value,nodes,seconds\n";
  for (const auto& r : results)
    out << r.n << ',' << r.r << ',' << r.pattern << ',' << (r.exact ? "exact" : "lb")
        << ',' << r.value << ',' << r.nodes << ',' << r.seconds << '\n';
  return out.str();
}

}  // namespace bushlab
