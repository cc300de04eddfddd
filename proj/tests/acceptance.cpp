// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "test_util.hpp"
#include "toric/corpus.hpp"
#include "toric/divisor.hpp"
#include "toric/exact_linalg.hpp"
#include "toric/torsor.hpp"

using namespace toric;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome out;
  void fail(const std::string& why) {
    if (out.pass) out.detail = why;
    out.pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

using Clock = std::chrono::steady_clock;

bool report(int n, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (o.pass && limit_s > 0 && secs >= limit_s) {
    std::ostringstream s;
    s << "took " << secs << " s, limit " << limit_s << " s";
    o = {false, s.str()};
  }
  std::ostringstream t;
  t.precision(3);
  t << std::fixed << secs;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << t.str() << " s)";
  if (!o.detail.empty()) std::cout << " - " << o.detail;
  std::cout << std::endl;
  return o.pass;
}

std::vector<Weights> unit_sweep(unsigned max_weight, std::size_t max_n) {
  std::vector<Weights> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<long> q(n + 1, 1);
    while (true) {
      out.push_back(Weights(std::vector<Integer>(q.begin(), q.end())));
      std::size_t k = 1;
      while (k <= n && q[k] == static_cast<long>(max_weight)) q[k++] = 1;
      if (k > n) break;
      ++q[k];
    }
  }
  return out;
}

std::vector<long> longs(const Weights& q) {
  std::vector<long> v;
  for (const auto& x : q.values()) v.push_back(x.get_si());
  return v;
}

Outcome normal_forms() {
  Check c;
  auto rng = seeded(1001);
  for (int t = 0; t < 1000 && c.out.pass; ++t) {
    std::size_t r = 1 + rng() % 6, k = 1 + rng() % 6;
    IntMatrix a = oracle::random_matrix(rng, r, k, -20, 20);
    std::string tag = "matrix " + std::to_string(t) + " " + to_string(a);
    auto h = hermite_normal_form(a);
    c.expect(a * h.U == h.H && unimodular(h.U) && column_hermite(h.H), "HNF reconstruction, " + tag);
    auto s = smith_normal_form(a);
    c.expect(s.U * a * s.V == s.S && unimodular(s.U) && unimodular(s.V), "SNF reconstruction, " + tag);
    auto f = s.invariant_factors();
    c.expect(smith_chain(f), "SNF divisibility chain, " + tag);
    c.expect(nonzero(f) == oracle::invariant_factors_by_minors(a), "SNF vs minors oracle, " + tag);
    for (std::size_t i = 0; i < s.S.rows(); ++i)
      for (std::size_t j = 0; j < s.S.cols(); ++j)
        if (i != j && s.S(i, j) != 0) c.fail("SNF not diagonal, " + tag);

    IntVector b = oracle::random_matrix(rng, r, 1, -20, 20).column(0);
    if (t % 2 == 0) b = a * oracle::random_matrix(rng, k, 1, -5, 5).column(0);
    IntVector ub = s.U * b;
    bool solvable = true;
    for (std::size_t i = 0; i < r; ++i) {
      Integer d = i < std::min(r, k) ? s.S(i, i) : Integer(0);
      solvable = solvable && (d == 0 ? ub[i] == 0 : ub[i] % d == 0);
    }
    auto x = solve_diophantine(a, b);
    c.expect(x.has_value() == solvable, "Diophantine vs Smith criterion, " + tag);
    if (x) c.expect(a * x->particular == b, "Diophantine solution wrong, " + tag);
  }
  if (c.out.pass) c.out.detail = "1000 matrices";
  return c.out;
}

Outcome wps_invariants() {
  Check c;
  auto sweep = unit_sweep(6, 4);
  for (const auto& q : sweep) {
    std::string tag = to_string(q);
    c.expect(r_invariant(q) == oracle::r_by_search(longs(q)), "r mismatch at " + tag);
    Fan f = wps_fan(q);
    c.expect(is_subfan(smooth_subfan(f), weak_locus_subfan(q)), "weak locus not in smooth locus at " + tag);
    Weights n = normalize_weights(q).result;
    auto cl = class_group(wps_fan(n));
    c.expect(cl.rank == 1 && cl.torsion.empty(), "Cl of normalized " + to_string(n) + " is " + cl.describe());
    if (!c.out.pass) break;
  }
  if (c.out.pass) c.out.detail = std::to_string(sweep.size()) + " tuples";
  return c.out;
}

Outcome picard_indices() {
  Check c;
  auto check = [&](const std::string& name, const Fan& f, long expected, long box, long bound) {
    auto p = picard_group(f);
    Integer oracle_value = oracle::cartier_degree_index(f.rank(), f.rays(), f.maximal_ray_sets(), box, bound);
    c.expect(oracle_value == expected, name + ": oracle gives " + oracle_value.get_str());
    c.expect(p.degree_index && *p.degree_index == oracle_value, name + ": computed index differs from oracle");
  };
  for (std::size_t n = 1; n <= 4; ++n) check("P^" + std::to_string(n), projective_space_fan(n), 1, 1, 2);
  check("P(1,1,2)", Fan(2, {V({1, 0}), V({0, 1}), V({-1, -2})}, {{0, 1}, {1, 2}, {0, 2}}), 2, 2, 12);
  Fan cubic = cubic_3a2_fan();
  check("3A2 cubic", cubic, 3, 3, 12);
  // Full index [Cl : Pic] counts the Z/3 torsion of Cl as well.
  auto p = picard_group(cubic);
  c.expect(p.index && *p.index == oracle::cartier_index_by_residues(2, cubic.rays(), cubic.maximal_ray_sets(), 3, 12),
           "3A2 cubic: [Cl : Pic] differs from residue oracle");
  if (c.out.pass) c.out.detail = "P^1..P^4 -> 1, P(1,1,2) -> 2, 3A2 -> 3 (Cl/torsion); [Cl : Pic] = 9";
  return c.out;
}

Outcome prop21_machinery() {
  Check c;
  std::size_t chains = 0, steps = 0;
  for (const auto& q : unit_sweep(6, 4)) {
    std::size_t xi = xi_invariant(normalize_weights(q).result);
    if (xi == 0) continue;
    ++chains;
    std::string tag = to_string(q);
    auto chain = prop21_chain(q);
    c.expect(chain.certificates.size() == xi, "chain length differs from Xi at " + tag);
    c.expect(chain.tuples.back() == Weights(std::vector<Integer>(chain.tuples.back().size(), Integer(1))),
             "chain does not end at all ones for " + tag);
    for (std::size_t k = 0; k < chain.certificates.size(); ++k) {
      const auto& cert = chain.certificates[k];
      ++steps;
      std::string at = tag + " step " + std::to_string(k);
      c.expect(xi_invariant(chain.tuples[k + 1]) + 1 == xi_invariant(chain.tuples[k]), "Xi does not drop by one at " + at);
      c.expect(cert.step.has_value() && !cert.vacuous, "missing step at " + at);
      if (!cert.step) continue;
      c.expect(cert.inclusion_pass, "certificate (a) fails at " + at);
      c.expect(cert.image_identity_pass, "certificate (b) fails at " + at);
      c.expect(cert.dominance_pass, "dominance row fails at " + at);
      // Worked identity: phi(X_mu / X_0^{q_mu}) = (Y_{mu+1} / Y_1) (Y_0 / Y_1)^{q_mu - 1}.
      const auto& st = *cert.step;
      std::size_t vars = st.next.size();
      IntVector expected(vars, Integer(0));
      Integer qmu = st.sorted[st.mu];
      expected[st.mu + 1] += 1;
      expected[1] -= 1;
      expected[0] += qmu - 1;
      expected[1] -= qmu - 1;
      bool found = false;
      for (const auto& row : cert.rows)
        if (row.index == st.mu) found = row.image.exponents() == expected;
      c.expect(found, "mu row missing or wrong at " + at);
    }
    if (!c.out.pass) break;
  }
  if (c.out.pass) c.out.detail = std::to_string(chains) + " chains, " + std::to_string(steps) + " steps";
  return c.out;
}

Outcome torsor_goldens() {
  Check c;
  struct Case {
    std::string name;
    Fan fan;
    GroupAction action;
    Weights weights;
  };
  std::vector<Case> cases = {
      {"P^2", projective_space_fan(2), GroupAction::trivial(2), Weights{1, 1, 1, 1}},
      {"P(1,1,2)", Fan(2, {V({1, 0}), V({0, 1}), V({-1, -2})}, {{0, 1}, {1, 2}, {0, 2}}), GroupAction::trivial(2),
       Weights{1, 1, 2, 1}},
      {"P^1", projective_space_fan(1), GroupAction::trivial(1), Weights{1, 1, 1}},
      {"P^1 x P^1 swap", p1xp1_fan(), swap_action(), Weights{1, 1, 1, 1, 1}},
      {"anisotropic P^1", projective_space_fan(1), negation_action(1), Weights{1, 1, 1}}};
  for (const auto& k : cases) {
    auto r = run_pipeline(k.fan.canonical(), k.action);
    const std::string& n = k.name;
    c.expect(r.passed(), n + " failed at " + r.failed_stage.value_or(""));
    if (!r.passed()) continue;
    c.expect(r.weights->weights == k.weights, n + ": weights " + to_string(r.weights->weights));
    IntVector sum = r.data->dtilde0;
    for (std::size_t i = 0; i < r.data->d; ++i) sum[i] += r.data->relation[i + 1];
    c.expect(is_zero(sum) && r.data->relation[0] == 1, n + ": defining relation not exact");
    c.expect(r.delta_certificate->complete && r.delta_certificate->simplicial, n + ": Delta not complete simplicial");
    c.expect(r.gtilde->to_sigma_prime.morphism.has_value(), n + ": Delta' -> Sigma' is not a fan morphism");
    bool full = r.dominance.size() == r.data->d + 1;
    for (const auto& row : r.dominance) full = full && row.pass;
    c.expect(full, n + ": dominance table incomplete");
    for (const char* want : {"Sigma \\ Sigma'", "Delta_sm \\ Delta'"}) {
      bool ok = false;
      for (const auto& cd : r.codims)
        if (cd.name == want) ok = cd.pass && (!cd.codim || *cd.codim >= 2);
      c.expect(ok, n + ": codimension certificate " + want);
    }
    c.expect(r.equivariant == true, n + ": equivariance");
    if (n == "anisotropic P^1") {
      c.expect(r.solution->anisotropic, n + ": anisotropic flag not set");
      c.expect(is_zero(r.solution->c), n + ": c is not zero");
    }
  }
  if (c.out.pass) c.out.detail = std::to_string(cases.size()) + " cases";
  return c.out;
}

// Complete 2-d fan from the orbits of random primitive vectors under g.
std::optional<Fan> symmetric_fan(std::mt19937_64& rng, const IntMatrix& g) {
  std::uniform_int_distribution<long> d(-4, 4);
  std::set<std::vector<long>> seen;
  std::vector<IntVector> rays;
  std::size_t want = 1 + rng() % 4;
  for (std::size_t t = 0; t < 20 && rays.size() < 2 * want; ++t) {
    long x = d(rng), y = d(rng);
    if ((x == 0 && y == 0) || std::gcd(x, y) != 1) continue;
    IntVector u = V({x, y});
    for (const IntVector& v : {u, IntVector(g * u)}) {
      std::vector<long> key{v[0].get_si(), v[1].get_si()};
      if (seen.insert(key).second) rays.push_back(v);
    }
  }
  if (rays.size() < 3) return std::nullopt;
  std::sort(rays.begin(), rays.end(), [](const IntVector& a, const IntVector& b) {
    return std::atan2(a[1].get_d(), a[0].get_d()) < std::atan2(b[1].get_d(), b[0].get_d());
  });
  std::vector<RaySet> cones;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    std::size_t j = (i + 1) % rays.size();
    if (rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0] <= 0) return std::nullopt;
    RaySet s{i, j};
    std::sort(s.begin(), s.end());
    cones.push_back(s);
  }
  return Fan(2, rays, cones);
}

Outcome equivariance_fuzz() {
  Check c;
  std::vector<IntMatrix> involutions = {IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{-1, 0}, {0, -1}}, IntMatrix{{1, 0}, {0, -1}},
                                        IntMatrix{{-1, 0}, {0, 1}}, IntMatrix{{0, -1}, {-1, 0}}};
  auto rng = seeded(6006);
  std::size_t fans = 0, passed = 0;
  std::map<std::string, std::size_t> failures;
  while (fans < 200) {
    const IntMatrix& g = involutions[rng() % involutions.size()];
    auto f = symmetric_fan(rng, g);
    if (!f) continue;
    ++fans;
    auto r = run_pipeline(f->canonical(), GroupAction(2, {g}, {2}));
    std::string tag = "fan " + std::to_string(fans) + " with " + to_string(g);
    c.expect(!r.has_internal_error(), "internal error on " + tag);
    if (r.passed()) {
      ++passed;
      bool all = r.equivariant == true && r.delta_invariant == true;
      for (const auto& cd : r.codims) all = all && cd.pass;
      c.expect(all, "passed without every certificate on " + tag);
    } else {
      ++failures[*r.failed_stage];
      const auto& last = r.stages.back();
      c.expect(last.name == *r.failed_stage && !last.pass && !last.detail.empty(),
               "failure without a concrete counterexample on " + tag);
    }
    if (!c.out.pass) break;
  }
  if (c.out.pass) {
    std::ostringstream s;
    s << fans << " fans, " << passed << " pass";
    for (const auto& [stage, n] : failures) s << ", " << n << " fail at " << stage;
    c.out.detail = s.str();
  }
  return c.out;
}

Outcome cohomology() {
  Check c;
  auto order_of = [](const AbelianGroupPresentation& h) {
    long n = h.rank == 0 ? 1 : 0;
    for (const auto& t : h.torsion) n *= t.get_si();
    return n;
  };
  c.expect(h1_cyclic(IntMatrix{{1}}, 1).is_trivial(), "trivial action on Z");
  c.expect(h1_cyclic(IntMatrix{{-1}}, 2).torsion == std::vector<Integer>{2}, "negation on Z");
  c.expect(h1_cyclic(IntMatrix{{0, 1}, {1, 0}}, 2).is_trivial(), "swap on Z^2");
  std::size_t count = 0;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long cc = -2; cc <= 2; ++cc)
        for (long d = -2; d <= 2; ++d) {
          IntMatrix m{{a, b}, {cc, d}};
          auto ord = element_order(m, 3);
          if (!ord || *ord == 1) continue;
          ++count;
          std::vector<std::vector<long>> s{{a, b}, {cc, d}};
          int n = static_cast<int>(*ord);
          auto h = h1_cyclic(m, *ord);
          long mine = order_of(h);
          long enumerated = oracle::h1_order_by_cocycles(s, n, 3, 12);
          long reduced = oracle::h1_order_by_reduction(s, n);
          c.expect(mine == enumerated && mine == reduced,
                   to_string(m) + ": " + std::to_string(mine) + " vs cocycles " + std::to_string(enumerated) +
                       " vs reduction " + std::to_string(reduced));
          for (const auto& t : h.torsion) c.expect(t == n, to_string(m) + ": H^1 not killed by the group order");
        }
  if (c.out.pass) c.out.detail = std::to_string(count) + " order-2/3 actions";
  return c.out;
}

std::string capture(const std::string& args) {
  std::string cmd = std::string(TORIC_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return "exit " + std::to_string(code) + "\n" + out;
}

Outcome determinism() {
  Check c;
  const std::string dir = TORIC_DATA_DIR;
  std::vector<std::string> commands;
  for (const auto& e : fs::directory_iterator(dir + "/fans")) {
    std::string fan = e.path().string();
    commands.push_back("analyze-fan " + fan);
    std::string rank = std::to_string(fan_from_json(read_json_file(fan)).rank());
    commands.push_back("torsor " + fan + " " + dir + "/actions/trivial" + rank + ".json");
  }
  for (const auto& e : fs::directory_iterator(dir + "/weights"))
    for (const char* mode : {"normalize", "strata", "weak-locus", "prop21-chain"})
      commands.push_back(std::string("wps ") + e.path().string() + " " + mode);
  commands.push_back("torsor " + dir + "/fans/p1xp1.json " + dir + "/actions/p1xp1_swap.json");
  commands.push_back("torsor " + dir + "/fans/p1.json " + dir + "/actions/p1_negation.json");
  commands.push_back("torsor " + dir + "/fans/p2.json " + dir + "/actions/p2_negation.json");
  for (const auto& e : fs::directory_iterator(dir + "/actions")) {
    commands.push_back("cohomology " + e.path().string());
  }
  commands.push_back("cohomology " + dir + "/actions/p1xp1_swap.json --module " + dir + "/modules/z2.json");
  std::sort(commands.begin(), commands.end());
  for (const auto& cmd : commands) {
    std::string a = capture(cmd), b = capture(cmd);
    c.expect(a == b, "output differs between runs: " + cmd);
    c.expect(a.rfind("exit 0\n", 0) == 0, "nonzero exit: " + cmd);
  }
  if (c.out.pass) c.out.detail = std::to_string(commands.size()) + " commands run twice";
  return c.out;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "normal forms on 1000 random matrices", 10, normal_forms);
  ok &= report(2, "weighted projective invariants sweep", 60, wps_invariants);
  ok &= report(3, "known Picard indices vs Cartier enumeration", 0, picard_indices);
  ok &= report(4, "induction chains and chart certificates", 0, prop21_machinery);
  ok &= report(5, "torsor pipeline golden cases", 5, torsor_goldens);
  ok &= report(6, "randomized equivariance fuzz", 60, equivariance_fuzz);
  ok &= report(7, "cyclic cohomology vs cocycle enumeration", 0, cohomology);
  ok &= report(8, "byte-identical CLI runs on the corpus", 0, determinism);
  return ok ? 0 : 1;
}
