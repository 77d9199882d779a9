#include "bushlab/delta.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace bushlab {

std::vector<Vset> Sunflower::members() const {
  std::vector<Vset> out;
  out.reserve(petals.size());
  for (Vset p : petals) out.push_back(kernel | p);
  return out;
}

bool Sunflower::valid() const {
  Vset seen = 0;
  for (Vset p : petals) {
    if (p == 0) return false;
    if (p & kernel) return false;
    if (p & seen) return false;
    seen |= p;
  }
  return true;
}

void PatternFamily::normalize() {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool PatternFamily::contains(std::uint32_t m) const {
  return std::binary_search(members.begin(), members.end(), m);
}

bool PatternFamily::closed_under_intersection() const {
  for (std::uint32_t a : members)
    for (std::uint32_t b : members)
      if (!contains(a & b)) return false;
  return true;
}

void PatternFamily::close_under_intersection() {
  std::set<std::uint32_t> all(members.begin(), members.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> cur(all.begin(), all.end());
    for (std::uint32_t a : cur)
      for (std::uint32_t b : cur)
        if (all.insert(a & b).second) grew = true;
  }
  members.assign(all.begin(), all.end());
}

int PatternFamily::count_of_size(int k) const {
  int c = 0;
  for (std::uint32_t m : members)
    if (std::popcount(m) == k) ++c;
  return c;
}

namespace {

// Backtracking q-packing over candidate petals (sorted, deduplicated).
// Returns indices of q pairwise-disjoint petals, or empty if none exist.
bool pack_petals(const std::vector<Vset>& petals, int q, Vset used, std::size_t from,
                 std::vector<Vset>& out) {
  if (static_cast<int>(out.size()) == q) return true;
  for (std::size_t i = from; i < petals.size(); ++i) {
    if (petals.size() - i < static_cast<std::size_t>(q) - out.size()) return false;
    if (petals[i] & used) continue;
    out.push_back(petals[i]);
    if (pack_petals(petals, q, used | petals[i], i + 1, out)) return true;
    out.pop_back();
  }
  return false;
}

}  // namespace

std::optional<Sunflower> find_sunflower(const Hypergraph& f, Vset a, int q,
                                        std::optional<Vset> required) {
  if (q < 1) throw std::invalid_argument("find_sunflower: q >= 1 required");
  std::vector<Vset> petals;
  for (Vset e : f.edges())
    if ((e & a) == a && e != a) petals.push_back(e & ~a);
  if (petals.empty()) return std::nullopt;

  Vset forced = 0;
  if (required) {
    if ((*required & a) != a || !f.has_edge(*required) || *required == a) return std::nullopt;
    forced = *required & ~a;
  }

  Sunflower s;
  s.kernel = a;
  if (forced) s.petals.push_back(forced);

  // Greedy pass in edge order.
  std::vector<Vset> greedy = s.petals;
  Vset used = forced;
  for (Vset p : petals) {
    if (static_cast<int>(greedy.size()) == q) break;
    if (p & used) continue;
    if (p == forced) continue;
    greedy.push_back(p);
    used |= p;
  }
  if (static_cast<int>(greedy.size()) >= q) {
    greedy.resize(q);
    s.petals = greedy;
    return s;
  }

  // Exact fallback: backtracking set packing.
  std::vector<Vset> rest;
  for (Vset p : petals)
    if (p != forced && !(p & forced)) rest.push_back(p);
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  std::vector<Vset> picked = s.petals;
  if (pack_petals(rest, q, forced, 0, picked)) {
    s.petals = picked;
    return s;
  }
  return std::nullopt;
}

std::vector<Vset> kernels(const Hypergraph& f, int b, int q) {
  if (b < 1 || b >= f.r()) throw std::invalid_argument("kernels: 1 <= b < r required");
  std::set<Vset> candidates;
  for (Vset e : f.edges())
    for_each_ksubset(e, b, [&](Vset s) { candidates.insert(s); });
  std::vector<Vset> out;
  for (Vset c : candidates)
    if (find_sunflower(f, c, q)) out.push_back(c);
  return out;
}

std::vector<Vset> intersection_structure(const Hypergraph& f, Vset e) {
  if (!f.has_edge(e)) throw std::invalid_argument("intersection_structure: E not a member");
  std::vector<Vset> out;
  for (Vset g : f.edges())
    if (g != e) out.push_back(g & e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_m_covering(const PatternFamily& j, int m) {
  if (m > j.r) throw std::invalid_argument("is_m_covering: m <= r required");
  bool ok = true;
  for_each_ksubset(vfull(j.r), m, [&](Vset s) {
    std::uint32_t mask = static_cast<std::uint32_t>(s);
    bool covered = false;
    for (std::uint32_t b : j.members)
      if ((b & mask) == mask) {
        covered = true;
        break;
      }
    if (!covered) ok = false;
  });
  return ok;
}

PatternFamily make_Jk(int r, int k) {
  if (k < 0 || k > r) throw std::invalid_argument("make_Jk: 0 <= k <= r required");
  PatternFamily j;
  j.r = r;
  std::uint32_t full = (1u << r) - 1;
  for (int i = 1; i <= k; ++i) j.members.push_back(full & ~(1u << (i - 1)));
  std::uint32_t prefix = (1u << k) - 1;  // {1..k}
  if (r - 2 >= k) {
    for_each_ksubset(vfull(r), r - 2, [&](Vset s) {
      std::uint32_t m = static_cast<std::uint32_t>(s);
      if ((m & prefix) == prefix) j.members.push_back(m);
    });
  }
  j.close_under_intersection();
  return j;
}

namespace {

std::uint32_t apply_perm(std::uint32_t m, const std::vector<int>& perm) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (m & (1u << i)) out |= 1u << (perm[i] - 1);
  return out;
}

// Lexicographically first permutation of [r] with perm(base) a subfamily of
// j; perm[i-1] is the image of element i.
std::optional<std::vector<int>> find_embedding_perm(const PatternFamily& base,
                                                    const PatternFamily& j) {
  std::vector<int> perm(base.r);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    bool ok = true;
    for (std::uint32_t m : base.members)
      if (!j.contains(apply_perm(m, perm))) {
        ok = false;
        break;
      }
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace

int classify_covering(const PatternFamily& j) {
  std::uint32_t full = (1u << j.r) - 1;
  for (std::uint32_t m : j.members)
    if (m == full) throw std::invalid_argument("classify_covering: member not a proper subset");
  if (!j.closed_under_intersection())
    throw std::invalid_argument("classify_covering: not closed under intersection");
  if (!is_m_covering(j, j.r - 2))
    throw std::invalid_argument("classify_covering: not (r-2)-covering");
  int k = j.count_of_size(j.r - 1);
  if (!find_embedding_perm(make_Jk(j.r, k), j))
    throw std::logic_error("classify_covering: no J^(k) isomorph found");
  return k;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> disjoint_pair(const PatternFamily& j,
                                                                     int a, int b) {
  if (a + b != j.r) throw std::invalid_argument("disjoint_pair: a+b must equal r");
  for (std::uint32_t x : j.members) {
    if (std::popcount(x) != a) continue;
    for (std::uint32_t y : j.members) {
      if (std::popcount(y) != b) continue;
      if ((x & y) == 0) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

namespace {

Partition transversal_partition_for_edge(int n, Vset e, int r) {
  Partition p;
  p.ground = vfull(n);
  auto vs = to_vertices(e);
  Vset rest = vfull(n);
  for (int i = 0; i < r - 1; ++i) {
    p.parts.push_back(vbit(vs[i]));
    rest &= ~vbit(vs[i]);
  }
  p.parts.push_back(rest);
  return p;
}

// Greedy balanced coloring of the co-occurrence graph into r parts.
Partition propose_partition(const Hypergraph& f, std::mt19937_64& rng) {
  int n = f.n(), r = f.r();
  std::vector<std::vector<int>> cooc(n + 1, std::vector<int>(n + 1, 0));
  for (Vset e : f.edges()) {
    auto vs = to_vertices(e);
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        ++cooc[vs[i]][vs[j]];
        ++cooc[vs[j]][vs[i]];
      }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  Partition p;
  p.ground = vfull(n);
  p.parts.assign(r, 0);
  std::vector<std::vector<int>> assigned(r);
  for (int v : order) {
    int best = 0;
    long best_cost = -1;
    for (int i = 0; i < r; ++i) {
      long cost = 0;
      for (int w : assigned[i]) cost += cooc[v][w];
      // Penalize imbalance lightly so parts stay usable.
      cost = cost * 4 + static_cast<long>(assigned[i].size());
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best = i;
      }
    }
    p.parts[best] |= vbit(v);
    assigned[best].push_back(v);
  }
  return p;
}

struct ClassKey {
  std::vector<std::uint32_t> patterns;
  bool operator<(const ClassKey& o) const { return patterns < o.patterns; }
  bool operator==(const ClassKey& o) const { return patterns == o.patterns; }
};

// One extraction attempt for a fixed partition; returns the surviving
// subfamily (possibly empty) plus its witnesses.
struct Attempt {
  std::vector<Vset> members;
  PatternFamily j;
  std::map<std::pair<std::size_t, Vset>, Sunflower> witnesses;
};

Attempt attempt_extract(const Hypergraph& f, int q, const Partition& part) {
  int r = f.r();
  std::vector<Vset> cur;
  for (Vset e : f.edges()) {
    bool transversal = true;
    for (Vset x : part.parts)
      if (vsize(e & x) != 1) {
        transversal = false;
        break;
      }
    if (transversal) cur.push_back(e);
  }

  Attempt out;
  out.j.r = r;
  while (!cur.empty()) {
    Hypergraph sub(f.n(), r, cur);
    // Group members by their pattern structure.
    std::map<ClassKey, std::vector<Vset>> classes;
    for (Vset e : sub.edges()) {
      ClassKey key;
      for (Vset a : intersection_structure(sub, e)) key.patterns.push_back(pattern(a, part));
      std::sort(key.patterns.begin(), key.patterns.end());
      key.patterns.erase(std::unique(key.patterns.begin(), key.patterns.end()),
                         key.patterns.end());
      classes[key].push_back(e);
    }
    const std::vector<Vset>* largest = nullptr;
    const ClassKey* largest_key = nullptr;
    for (const auto& [key, mem] : classes)
      if (!largest || mem.size() > largest->size()) {
        largest = &mem;
        largest_key = &key;
      }
    if (largest->size() != cur.size()) {
      cur = *largest;
      continue;  // re-run grouping on the surviving class
    }

    // All members share the structure; demand q-star witnesses.
    Hypergraph cls(f.n(), r, cur);
    std::map<std::pair<std::size_t, Vset>, Sunflower> wit;
    std::vector<Vset> keep;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      Vset e = cls.edge(i);
      bool ok = true;
      for (Vset a : intersection_structure(cls, e)) {
        auto s = find_sunflower(cls, a, q, e);
        if (!s) {
          ok = false;
          break;
        }
        wit[{i, a}] = *s;
      }
      if (ok) keep.push_back(e);
    }
    if (keep.size() == cur.size()) {
      out.members = cur;
      out.witnesses = std::move(wit);
      out.j.members.assign(largest_key->patterns.begin(), largest_key->patterns.end());
      out.j.normalize();
      return out;
    }
    cur = keep;  // witnesses refer to pruned members; recompute next round
  }
  return out;
}

}  // namespace

ExtractionCertificate extract_homogeneous(const Hypergraph& f, int q,
                                          const ExtractOptions& opts) {
  if (f.empty()) throw std::invalid_argument("extract_homogeneous: empty family");
  std::mt19937_64 rng(opts.seed);
  ExtractionCertificate best;
  bool have = false;
  for (int attempt = 0; attempt < std::max(1, opts.restarts); ++attempt) {
    Partition part = (attempt == 0 && opts.hint) ? *opts.hint : propose_partition(f, rng);
    part.validate();
    Attempt got = attempt_extract(f, q, part);
    if (got.members.empty()) continue;
    if (!have || got.members.size() > best.subfamily.size()) {
      best.subfamily = Hypergraph(f.n(), f.r(), got.members);
      best.partition = part;
      best.j = got.j;
      best.q = q;
      best.star_witnesses = std::move(got.witnesses);
      have = true;
    }
    if (best.subfamily.size() == f.size()) break;
  }
  if (!have) {
    // Single-edge certificate: trivially r-partite with empty J.
    Vset e = f.edge(0);
    best.subfamily = Hypergraph(f.n(), f.r(), {e});
    best.partition = transversal_partition_for_edge(f.n(), e, f.r());
    best.j = PatternFamily{f.r(), {}};
    best.q = q;
  }
  // Distinguished part (role of element r), when J carries a J^(k) isomorph.
  int k = best.j.count_of_size(f.r() - 1);
  if (auto perm = find_embedding_perm(make_Jk(f.r(), k), best.j))
    best.special_part = (*perm)[f.r() - 1];
  return best;
}

VerifyReport verify_certificate(const ExtractionCertificate& cert) {
  VerifyReport rep;
  const Hypergraph& sub = cert.subfamily;
  if (sub.empty()) {
    rep.failures.push_back("empty subfamily");
    return rep;
  }
  try {
    cert.partition.validate();
  } catch (const std::exception& ex) {
    rep.failures.push_back(std::string("partition invalid: ") + ex.what());
    return rep;
  }
  if (static_cast<int>(cert.partition.parts.size()) != sub.r())
    rep.failures.push_back("partition does not have r parts");
  for (Vset e : sub.edges())
    for (Vset x : cert.partition.parts)
      if (vsize(e & x) != 1) {
        rep.failures.push_back("subfamily not r-partite w.r.t. partition");
        goto partite_done;
      }
partite_done:
  std::uint32_t full = (1u << sub.r()) - 1;
  for (std::uint32_t m : cert.j.members)
    if (m >= full) rep.failures.push_back("J member not a proper subset of [r]");
  if (!cert.j.closed_under_intersection())
    rep.failures.push_back("J not closed under intersection");

  for (std::size_t i = 0; i < sub.size(); ++i) {
    Vset e = sub.edge(i);
    auto inter = intersection_structure(sub, e);
    PatternFamily pi;
    pi.r = sub.r();
    for (Vset a : inter) pi.members.push_back(pattern(a, cert.partition));
    pi.normalize();
    if (!(pi == cert.j)) {
      rep.failures.push_back("pattern structure differs from J for some member");
      break;
    }
  }

  for (std::size_t i = 0; i < sub.size(); ++i) {
    Vset e = sub.edge(i);
    for (Vset a : intersection_structure(sub, e)) {
      auto it = cert.star_witnesses.find({i, a});
      if (it == cert.star_witnesses.end()) {
        rep.failures.push_back("missing q-star witness");
        goto witness_done;
      }
      const Sunflower& s = it->second;
      if (s.kernel != a || static_cast<int>(s.petals.size()) != cert.q || !s.valid()) {
        rep.failures.push_back("invalid q-star witness");
        goto witness_done;
      }
      bool has_f = false;
      for (Vset m : s.members()) {
        if (!sub.has_edge(m)) {
          rep.failures.push_back("witness member outside subfamily");
          goto witness_done;
        }
        if (m == e) has_f = true;
      }
      if (!has_f) {
        rep.failures.push_back("witness does not contain its member F");
        goto witness_done;
      }
    }
  }
witness_done:
  if (cert.special_part) {
    int k = cert.j.count_of_size(sub.r() - 1);
    bool ok = false;
    std::vector<int> perm(sub.r());
    std::iota(perm.begin(), perm.end(), 1);
    PatternFamily base = make_Jk(sub.r(), k);
    do {
      if (perm[sub.r() - 1] != *cert.special_part) continue;
      bool fits = true;
      for (std::uint32_t m : base.members)
        if (!cert.j.contains(apply_perm(m, perm))) {
          fits = false;
          break;
        }
      if (fits) {
        ok = true;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!ok) rep.failures.push_back("special_part inconsistent with J^(k) relabeling");
  }
  return rep;
}

PartitionResult partition_procedure(const Hypergraph& h, int q, double c_coeff,
                                    const ExtractOptions& opts) {
  PartitionResult pr;
  double threshold = c_coeff;
  for (int i = 0; i < h.r() - 2; ++i) threshold *= h.n();
  Hypergraph rem = h;
  ExtractOptions cur = opts;
  while (static_cast<double>(rem.size()) > threshold) {
    ExtractionCertificate cert = extract_homogeneous(rem, q, cur);
    if (cert.subfamily.empty())
      throw std::runtime_error("partition_procedure: extraction failed");
    rem = rem.without(cert.subfamily.edges());
    pr.classes.push_back(std::move(cert));
    cur.seed = cur.seed * 6364136223846793005ULL + 1442695040888963407ULL;
    cur.hint.reset();
  }
  pr.residue = rem;
  pr.m = static_cast<int>(pr.classes.size());
  return pr;
}

namespace {

nlohmann::json cert_to_json(const ExtractionCertificate& cert) {
  nlohmann::json out;
  out["n"] = cert.subfamily.n();
  out["r"] = cert.subfamily.r();
  out["q"] = cert.q;
  out["edges"] = nlohmann::json::array();
  for (Vset e : cert.subfamily.edges()) out["edges"].push_back(to_vertices(e));
  out["partition"] = nlohmann::json::array();
  for (Vset p : cert.partition.parts) out["partition"].push_back(to_vertices(p));
  out["J"] = cert.j.members;
  if (cert.special_part) out["special_part"] = *cert.special_part;
  out["witnesses"] = nlohmann::json::array();
  for (const auto& [key, s] : cert.star_witnesses) {
    nlohmann::json w;
    w["member"] = key.first;
    w["kernel"] = to_vertices(key.second);
    w["petal_members"] = nlohmann::json::array();
    for (Vset m : s.members()) w["petal_members"].push_back(cert.subfamily.index_of(m));
    out["witnesses"].push_back(std::move(w));
  }
  return out;
}

}  // namespace

std::string certificate_json(const ExtractionCertificate& cert) {
  return cert_to_json(cert).dump(2);
}

std::string partition_json(const PartitionResult& pr) {
  nlohmann::json out;
  out["m"] = pr.m;
  out["classes"] = nlohmann::json::array();
  for (const auto& c : pr.classes) out["classes"].push_back(cert_to_json(c));
  out["residue"] = nlohmann::json::array();
  for (Vset e : pr.residue.edges()) out["residue"].push_back(to_vertices(e));
  return out.dump(2);
}

}  // namespace bushlab
