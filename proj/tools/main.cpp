#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bushlab/bush_engine.hpp"
#include "bushlab/constructions.hpp"
#include "bushlab/containment.hpp"
#include "bushlab/shadow_bounds.hpp"
#include "bushlab/turan.hpp"

using namespace bushlab;

namespace {

struct Common {
  std::string out;  // empty = stdout
  std::string format = "text";
  std::uint64_t seed = 1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "output path (default: stdout)");
  app->add_option("--format", c.format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--seed", c.seed, "seed for heuristic extraction");
}

int emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return 0;
  }
  std::ofstream f(c.out);
  if (!f) {
    std::cerr << "cannot open " << c.out << "\n";
    return 1;
  }
  f << text;
  return 0;
}

Hypergraph load_host(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return read_hypergraph(ss.str());
}

int env_threads() {
  const char* v = std::getenv("BUSHLAB_THREADS");
  if (!v) return 1;
  int t = std::atoi(v);
  return t >= 1 ? t : 1;
}

Vset parse_vertex_set(const std::string& s) {
  std::istringstream in(s);
  Vset out = 0;
  int v;
  while (in >> v) out |= vbit(v);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bushlab: blowup-free extremal hypergraph toolkit"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Common c;

  // construct
  auto* construct = app.add_subcommand("construct", "build a named hypergraph or pattern");
  std::string kind;
  int n = 0, r = 3, s = 2, h = 1, a = 1, b = 2;
  construct->add_option("kind", kind, "star|steiner|blowup|bush")->required();
  construct->add_option("--n", n);
  construct->add_option("--r", r);
  construct->add_option("--s", s);
  construct->add_option("--h", h);
  construct->add_option("--a", a);
  construct->add_option("--b", b);
  add_common(construct, c);

  // contains
  auto* contains = app.add_subcommand("contains", "decide bush/blowup containment");
  std::string host_path, tree_path, bush_arg, ab_arg;
  contains->add_option("--host", host_path)->required();
  contains->add_option("--bush", bush_arg, "s,h");
  contains->add_option("--tree", tree_path, "tree file (s t header, i j lines)");
  contains->add_option("--ab", ab_arg, "a,b")->required();
  add_common(contains, c);

  auto* shadow_cmd = app.add_subcommand("shadow", "shadow of a hypergraph");
  shadow_cmd->add_option("--host", host_path)->required();
  add_common(shadow_cmd, c);

  auto* sunflower_cmd = app.add_subcommand("sunflower", "find a q-star with a given kernel");
  std::string kernel_arg;
  int q = 2;
  sunflower_cmd->add_option("--host", host_path)->required();
  sunflower_cmd->add_option("--kernel", kernel_arg, "space-separated vertices")->required();
  sunflower_cmd->add_option("--q", q)->required();
  add_common(sunflower_cmd, c);

  auto* kernels_cmd = app.add_subcommand("kernels", "all (b,q)-kernels");
  kernels_cmd->add_option("--host", host_path)->required();
  kernels_cmd->add_option("--b", b)->required();
  kernels_cmd->add_option("--q", q)->required();
  add_common(kernels_cmd, c);

  auto* extract_cmd = app.add_subcommand("extract", "partition into homogeneous classes");
  double c_coeff = 0.5;
  extract_cmd->add_option("--host", host_path)->required();
  extract_cmd->add_option("--q", q)->required();
  extract_cmd->add_option("--C", c_coeff, "residue threshold coefficient");
  add_common(extract_cmd, c);

  auto* alphabeta_cmd = app.add_subcommand("alphabeta", "alpha/beta counts per (r-1)-set");
  alphabeta_cmd->add_option("--host", host_path)->required();
  alphabeta_cmd->add_option("--q", q)->required();
  alphabeta_cmd->add_option("--C", c_coeff);
  add_common(alphabeta_cmd, c);

  auto* normalize_cmd = app.add_subcommand("normalize", "s-normalization fixpoint");
  normalize_cmd->add_option("--host", host_path)->required();
  normalize_cmd->add_option("--s", s)->required();
  add_common(normalize_cmd, c);

  auto* turan_cmd = app.add_subcommand("turan", "exact Turan oracle");
  std::uint64_t budget_nodes = 0;
  double budget_seconds = 0;
  turan_cmd->add_option("--n", n)->required();
  turan_cmd->add_option("--r", r)->required();
  turan_cmd->add_option("--bush", bush_arg, "s,h");
  turan_cmd->add_option("--tree", tree_path);
  turan_cmd->add_option("--ab", ab_arg, "a,b")->required();
  turan_cmd->add_option("--budget-nodes", budget_nodes);
  turan_cmd->add_option("--budget-seconds", budget_seconds);
  add_common(turan_cmd, c);

  auto* kk_cmd = app.add_subcommand("kk", "Kruskal-Katona shadow check");
  kk_cmd->add_option("--host", host_path)->required();
  add_common(kk_cmd, c);

  auto* stability_cmd = app.add_subcommand("stability", "root-sequence stability check");
  double c0 = 0.02;
  double c1 = -1;
  stability_cmd->add_option("--host", host_path)->required();
  stability_cmd->add_option("--s", s)->required();
  stability_cmd->add_option("--C", c_coeff)->required();
  stability_cmd->add_option("--C0", c0)->required();
  stability_cmd->add_option("--C1", c1, "heavy-vertex coefficient (default 3(C+C0))");
  add_common(stability_cmd, c);

  CLI11_PARSE(app, argc, argv);

  auto parse_pair = [](const std::string& arg, int& x, int& y) {
    if (sscanf(arg.c_str(), "%d,%d", &x, &y) != 2)
      throw std::runtime_error("expected two comma-separated integers: " + arg);
  };

  try {
    if (construct->parsed()) {
      Hypergraph g;
      if (kind == "star")
        g = star_construction(n, r, s);
      else if (kind == "steiner")
        g = steiner_augmented(n, r, s).hypergraph;
      else if (kind == "bush")
        g = blowup(bush_tree({s, h}), {a, b});
      else if (kind == "blowup") {
        std::ifstream f(tree_path);
        throw std::runtime_error("construct blowup: use construct bush or the library API");
      } else
        throw std::runtime_error("unknown construct kind: " + kind);
      return emit(c, write_hypergraph(g));
    }

    if (contains->parsed() || turan_cmd->parsed()) {
      parse_pair(ab_arg, a, b);
      BipartiteTree tree;
      if (!bush_arg.empty()) {
        parse_pair(bush_arg, s, h);
        tree = bush_tree({s, h});
      } else if (!tree_path.empty()) {
        std::ifstream f(tree_path);
        std::stringstream ss;
        ss << f.rdbuf();
        tree = read_tree(ss.str());
      } else {
        throw std::runtime_error("need --bush or --tree");
      }
      if (contains->parsed()) {
        Hypergraph host = load_host(host_path);
        auto emb = contains_blowup(host, tree, {a, b});
        return emit(c, emb ? "present" : "absent");
      }
      OracleBudget budget;
      budget.max_nodes = budget_nodes;
      budget.max_seconds = budget_seconds;
      budget.threads = env_threads();
      auto res = turan_exact(n, r, tree, {a, b}, budget);
      int status = emit(c, turan_csv({res}));
      return status != 0 ? status : (res.exact ? 0 : 2);
    }

    if (shadow_cmd->parsed()) {
      Hypergraph host = load_host(host_path);
      auto sh = shadow(host);
      std::ostringstream out;
      out << host.n() << ' ' << host.r() - 1 << '\n';
      for (Vset e : sh) {
        auto vs = to_vertices(e);
        for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << vs[i];
        out << '\n';
      }
      return emit(c, out.str());
    }

    if (sunflower_cmd->parsed()) {
      Hypergraph host = load_host(host_path);
      auto sf = find_sunflower(host, parse_vertex_set(kernel_arg), q);
      if (!sf) return emit(c, "absent");
      std::ostringstream out;
      out << "present\n";
      for (Vset m : sf->members()) {
        auto vs = to_vertices(m);
        for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << vs[i];
        out << '\n';
      }
      return emit(c, out.str());
    }

    if (kernels_cmd->parsed()) {
      Hypergraph host = load_host(host_path);
      std::ostringstream out;
      for (Vset k : kernels(host, b, q)) {
        auto vs = to_vertices(k);
        for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << vs[i];
        out << '\n';
      }
      return emit(c, out.str());
    }

    if (extract_cmd->parsed() || alphabeta_cmd->parsed()) {
      Hypergraph host = load_host(host_path);
      ExtractOptions opts;
      opts.seed = c.seed;
      auto pr = partition_procedure(host, q, c_coeff, opts);
      if (extract_cmd->parsed()) return emit(c, partition_json(pr));
      return emit(c, alpha_beta_count(pr).to_csv());
    }

    if (normalize_cmd->parsed()) {
      Hypergraph host = load_host(host_path);
      return emit(c, write_hypergraph(s_normalize(host, s)));
    }

    if (kk_cmd->parsed()) {
      Hypergraph host = load_host(host_path);
      auto rep = kk_check(host.edges(), host.r());
      int status = emit(c, kk_report_json(rep));
      return status != 0 ? status : (rep.ok ? 0 : 1);
    }

    if (stability_cmd->parsed()) {
      Hypergraph host = load_host(host_path);
      int rr = host.r();
      std::vector<double> roots;
      for (int v = 1; v <= host.n(); ++v)
        roots.push_back(lovasz_root(host.degree(v), rr - 1));
      std::sort(roots.rbegin(), roots.rend());
      auto rep = stability_roots_check(roots, host.n(), rr, s, c_coeff, c0);
      auto heavy = heavy_report_json(
          heavy_vertices(host, s, c1 >= 0 ? c1 : 3 * (c_coeff + c0)));
      int status = emit(c, stability_report_json(rep) + "\n" + heavy);
      if (status != 0) return status;
      if (!rep.passed()) return 1;
      return rep.hypotheses_met ? 0 : 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
