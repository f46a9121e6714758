// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hitchin/cks.hpp"
#include "hitchin/complexes.hpp"
#include "hitchin/homology.hpp"
#include "hitchin/numerology.hpp"
#include "hitchin/properties.hpp"
#include "hitchin/symgroup.hpp"

#ifndef HITCHIN_CLI_PATH
#define HITCHIN_CLI_PATH "hitchin"
#endif

using namespace hitchin;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

std::string list(const std::vector<long long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Outcome rank_factorial() {
  std::ostringstream d;
  bool ok = true;
  for (int r = 3; r <= 5; ++r) {
    const auto h = reduced_homology(cographic_complex(Multigraph::complete(r)));
    const int deg = r * (r - 1) / 2 - r;
    const long long expect = static_cast<long long>(factorial(static_cast<std::uint64_t>(r - 1)));
    const bool here = h.nonzero_dimensions() == std::vector<int>{deg} && h.at(deg) == expect;
    ok = ok && here;
    d << "r=" << r << ": b~_" << deg << "=" << h.at(deg) << " (want " << expect << ", "
      << h.certificate << "); ";
  }
  return {ok, d.str()};
}

Outcome sphere_case() {
  std::ostringstream d;
  bool ok = true;
  for (int g = 2; g <= 4; ++g) {
    const Multigraph graph = build_dual_graph(HitchinPartition(g, {1, 1}));
    const auto h = reduced_homology(cographic_complex(graph));
    const int deg = 2 * g - 4;
    const bool here = graph.edge_count() == static_cast<std::size_t>(2 * g - 2) &&
                      h.nonzero_dimensions() == std::vector<int>{deg} && h.at(deg) == 1;
    ok = ok && here;
    d << "g=" << g << ": " << graph.edge_count() << " edges, betti " << list(h.betti) << "; ";
  }
  return {ok, d.str()};
}

Outcome sign_representation() {
  std::ostringstream d;
  bool ok = true;
  for (int g = 2; g <= 4; ++g) {
    const HitchinPartition p(g, {1, 1});
    const Multigraph graph = build_dual_graph(p);
    const FaceComplex c = cographic_complex(graph);
    const auto basis = top_cycle_basis(c, boundary_complex(c));
    const Permutation swap({1, 0});
    const Rational simplicial = top_homology_trace(c, basis, graph, swap, ActionTwist::Simplicial);
    const Rational oriented = top_homology_trace(c, basis, graph, swap, ActionTwist::Orientation);

    const auto model = GradedH1Model::from_partition(p);
    const auto cx = build_cks(model, model.delta());
    const auto tr = top_weight_equivariant_trace(cx, swap.images(), edge_action(swap, graph));
    const Rational cks = (model.delta() % 2 ? -1 : 1) * tr.lefschetz;

    ok = ok && basis.rank() == 1 && oriented == -1 && cks == -1;
    d << "g=" << g << ": oriented " << oriented << ", CKS top weight " << cks
      << ", face permutation alone " << simplicial << "; ";
  }
  return {ok, d.str()};
}

Outcome character_identification() {
  std::ostringstream d;
  bool ok = true;
  for (int r = 3; r <= 5; ++r) {
    const auto chi = top_homology_character(r);
    const auto oracle = induced_character_oracle(r);
    ok = ok && chi == oracle;
    d << "r=" << r << ": " << (chi == oracle ? "equal" : "DIFFERENT") << " on "
      << oracle.values.size() << " classes; ";
  }
  return {ok, d.str()};
}

Outcome alexander_folkman() {
  std::ostringstream d;
  bool ok = true;
  for (int r = 3; r <= 5; ++r) {
    const int N = r * (r - 1) / 2;
    const Multigraph g = Multigraph::complete(r);
    const auto cog = reduced_homology(cographic_complex(g));
    const auto ns = reduced_homology(nonspanning_complex(g));
    const auto fl = reduced_homology(partition_order_complex(r));
    bool here = true;
    for (int i = -1; i <= N; ++i)
      here = here && cog.at(i) == ns.at(N - 3 - i) && cog.at(i) == fl.at(N - 3 - i);
    ok = ok && here;
    d << "r=" << r << ": C " << list(cog.betti) << " Nspan " << list(ns.betti) << " Flat "
      << list(fl.betti) << "; ";
  }
  return {ok, d.str()};
}

Outcome doubling() {
  PropertyConfig cfg;
  cfg.seed = 2024;
  cfg.trials = 200;
  cfg.max_edges = 10;
  const auto r = property_doubling(cfg);
  return {r.passed && r.cases == 200,
          "seed " + std::to_string(cfg.seed) + ", " + std::to_string(r.cases) + " graphs" +
              (r.passed ? "" : ", counterexample " + r.counterexample)};
}

Outcome delta_formula() {
  long long cases = 0;
  bool ok = true;
  for (int g = 2; g <= 5; ++g)
    for (int n = 1; n <= 8; ++n)
      for (auto parts : integer_partitions(n)) {
        std::sort(parts.begin(), parts.end(), std::greater<>());
        const HitchinPartition p(g, parts);
        const Multigraph graph = build_dual_graph(p);
        const long long direct = static_cast<long long>(graph.edge_count()) - graph.vertex_count() + 1;
        ok = ok && delta_aff_formula(p) == direct;
        ++cases;
      }
  return {ok, std::to_string(cases) + " (genus, partition) pairs"};
}

Outcome vanishing() {
  const auto r = property_vanishing({});
  return {r.passed, std::to_string(r.cases) + " (partition, i, I) cases" +
                        (r.passed ? "" : ", counterexample " + r.counterexample)};
}

Outcome highest_weight() {
  struct Case {
    int genus;
    std::vector<int> parts;
    int i;
  };
  std::ostringstream d;
  bool ok = true;
  for (const Case& c : {Case{2, {1, 1}, 1}, Case{2, {1, 1}, 2}, Case{2, {1, 1, 1}, 4}}) {
    const HitchinPartition p(c.genus, c.parts);
    const long long delta = delta_aff_formula(p);
    const long long h = 2 * (dim_hitchin_base(p.n(), c.genus) - delta);
    const auto b = reduced_homology(cographic_complex(build_dual_graph(p)))
                       .at(static_cast<int>(delta) - 1);
    const long long expect =
        static_cast<long long>(binomial(static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(c.i - delta))) * b;
    const auto model = GradedH1Model::from_partition(p);
    const auto cx = build_cks(model, c.i);
    const auto coh = cks_cohomology(cx);
    bool here = cx.verify_square_zero() && coh.top_weight_dims.size() > static_cast<std::size_t>(delta);
    for (long long k = 0; here && k < delta; ++k) here = coh.top_weight_dims[static_cast<std::size_t>(k)] == 0;
    here = here && coh.top_weight_dims[static_cast<std::size_t>(delta)] == expect;
    ok = ok && here;
    d << p.to_string() << " i=" << c.i << ": top weight " << list(coh.top_weight_dims) << ", want "
      << expect << " at degree " << delta << "; ";
  }
  return {ok, d.str()};
}

Outcome rank_formula() {
  std::ostringstream d;
  bool ok = true;
  for (const auto& parts : std::vector<std::vector<int>>{{1, 1}, {1, 1, 1}}) {
    const HitchinPartition p(2, parts);
    const long long delta = delta_aff_formula(p);
    const long long dim_a = dim_hitchin_base(p.n(), 2);
    std::string methods;
    for (long long r = delta; r <= 2 * dim_a - delta; ++r) {
      const auto s = stalk_dimension(p, r);
      const Integer expect = factorial(static_cast<std::uint64_t>(p.k() - 1)) *
                             binomial_big(static_cast<std::uint64_t>(2 * (dim_a - delta)),
                                          static_cast<std::uint64_t>(r - delta));
      ok = ok && s.value == expect;
      if (methods.find(s.method) == std::string::npos) methods += (methods.empty() ? "" : "+") + s.method;
    }
    d << p.to_string() << ": perversities [" << delta << ", " << 2 * dim_a - delta << "] via "
      << methods << "; ";
  }
  return {ok, d.str()};
}

Outcome constant_monodromy_flag() {
  long long cases = 0;
  bool ok = true;
  for (int n = 1; n <= 6; ++n)
    for (auto parts : integer_partitions(n)) {
      std::sort(parts.begin(), parts.end(), std::greater<>());
      const bool distinct = std::set<int>(parts.begin(), parts.end()).size() == parts.size();
      ok = ok && constant_monodromy(HitchinPartition(2, parts)) == distinct;
      ++cases;
    }
  return {ok, std::to_string(cases) + " partitions"};
}

std::pair<int, std::string> run_capture(const std::string& args) {
  const std::string cmd = std::string(HITCHIN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  const std::vector<std::string> commands{
      "report --genus 2 --partition 1,1,1 --verify homology",
      "report --genus 2 --partition 2,1 --format md",
      "complex --r 4 --kind cographic --faces",
      "complex --genus 2 --partition 1,1,1 --kind nonspanning --format csv",
      "cks --genus 2 --partition 1,1 --exterior 2",
  };
  bool ok = true;
  std::ostringstream d;
  for (const auto& c : commands) {
    const auto a = run_capture(c);
    const auto b = run_capture(c);
    const bool here = a.first == 0 && b.first == 0 && !a.second.empty() && a.second == b.second &&
                      a.second.find("2024") != std::string::npos;
    ok = ok && here;
    if (!here) d << "differs or failed: " << c << "; ";
  }
  d << commands.size() << " commands run twice";
  return {ok, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "rank (r-1)! of top homology of C(K_r), r=3..5", 60, rank_factorial},
      {2, "sphere case n=2, g=2..4", 5, sphere_case},
      {3, "vertex swap is the sign representation, g=2..4", 0, sign_representation},
      {4, "top-homology character equals induced character, r=3..5", 10, character_identification},
      {5, "Alexander duality and Folkman isomorphism, r=3..5", 0, alexander_folkman},
      {6, "doubling isomorphism on 200 random multigraphs", 0, doubling},
      {7, "delta formula for n<=8, g=2..5", 0, delta_formula},
      {8, "vanishing of Im N_I on (1,1), (1,1,1), i<=4", 0, vanishing},
      {9, "highest-weight CKS cohomology", 300, highest_weight},
      {10, "stalk dimensions match the rank formula", 0, rank_formula},
      {11, "constant monodromy iff distinct parts, n<=6", 0, constant_monodromy_flag},
      {12, "byte-identical CLI output across runs", 0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit == 0 || secs < c.time_limit;
    const bool pass = o.passed && in_time;
    if (!pass) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " -- " << o.detail
              << (in_time ? "" : " TIME LIMIT EXCEEDED") << " (" << timing << ")\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
