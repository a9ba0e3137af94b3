// Acceptance checks, one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "dsp/blockext.hpp"
#include "dsp/census.hpp"
#include "dsp/decider.hpp"
#include "dsp/genericity.hpp"
#include "dsp/witness.hpp"
#include "support.hpp"

namespace dsp {
namespace {

using Pairs = std::vector<std::pair<int, int>>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// 1. Rigid MV triples for n <= 20 are exactly the four families.
Outcome rigid_families() {
  using Shape = std::pair<std::vector<int>, std::vector<int>>;
  auto ordered = [](std::vector<int> a, std::vector<int> b) {
    Partition pa(a), pb(b);
    return pa <= pb ? Shape{pa.parts(), pb.parts()} : Shape{pb.parts(), pa.parts()};
  };
  int hits = 0;
  std::set<int> extra_at;
  for (int n = 2; n <= 20; ++n) {
    std::set<Shape> want;
    want.insert(ordered(std::vector<int>(n, 1), {n - 1, 1}));
    if (n % 2 == 0) {
      std::vector<int> a{n / 2, n / 2 - 1, 1};
      if (n / 2 - 1 == 0) a = {n / 2, 1};
      want.insert(ordered(a, {n / 2, n / 2}));
    } else {
      want.insert(ordered({(n - 1) / 2, (n - 1) / 2, 1}, {(n + 1) / 2, (n - 1) / 2}));
    }
    if (n == 6) want.insert(ordered({2, 2, 2}, {4, 2}));

    std::set<Shape> got;
    const auto parts = all_partitions(n);
    auto d_of = [n](const Partition& p) {
      int d = n * n;
      for (int m : p.parts()) d -= m * m;
      return d;
    };
    for (std::size_t a = 0; a < parts.size(); ++a) {
      const int da = d_of(parts[a]), ra = n - parts[a].largest();
      for (std::size_t b = a; b < parts.size(); ++b) {
        const int db = d_of(parts[b]), rb = n - parts[b].largest();
        DerivedQuantities dq;
        dq.d = {n * n - n, da, db};
        dq.r = {n - 1, ra, rb};
        dq.kappa = 2 * n * n - dq.sum_d();
        if (dq.kappa != 2 || !check_alpha(dq, n) || !check_beta(dq, n)) continue;
        ++hits;
        const Instance inst = shape_instance(
            {MultiplicityVector(std::vector<int>(n, 1)),
             MultiplicityVector(parts[a].parts()), MultiplicityVector(parts[b].parts())});
        const RigidFamily f = classify_rigid_family(inst);
        if (f == RigidFamily::none)
          return {false, "unclassified rigid triple at n=" + std::to_string(n) + ": " +
                             to_string(parts[a]) + " " + to_string(parts[b])};
        if (f == RigidFamily::extra) extra_at.insert(n);
        got.insert(ordered(parts[a].parts(), parts[b].parts()));
      }
    }
    if (got != want)
      return {false, "rigid shapes at n=" + std::to_string(n) + " differ from the families"};
  }
  if (extra_at != std::set<int>{6}) return {false, "extra case outside n=6"};
  return {true, std::to_string(hits) + " rigid triples for n=2..20, extra case only at n=6"};
}

// 2. With (beta), (alpha) fails exactly in Case A.
Outcome beta_alpha() {
  std::size_t rows = 0, beta_rows = 0, case_a = 0;
  for (int n = 1; n <= 8; ++n)
    for (int p = 1; p <= 4; ++p)
      for (const auto& row : run_census(n, p)) {
        ++rows;
        if (!row.beta) continue;
        ++beta_rows;
        if (row.case_A) ++case_a;
        if (!row.alpha != row.case_A)
          return {false, "exception: n=" + std::to_string(n) + " " + row.signature};
      }
  return {true, std::to_string(rows) + " tuples, " + std::to_string(beta_rows) +
                    " with (beta), " + std::to_string(case_a) + " Case A, 0 exceptions"};
}

// 3. r and d are invariant under correspondence.
Outcome correspondence() {
  std::size_t count = 0;
  for (int n = 1; n <= 8; ++n)
    for (const auto& j : all_jnfs(n)) {
      const Jnf c = Jnf::diagonal(corresponding_diagonal(j));
      if (r_of_jnf(j) != r_of_jnf(c) || d_of_jnf(j) != d_of_jnf(c))
        return {false, "mismatch at " + to_string(j)};
      ++count;
    }
  return {true, std::to_string(count) + " JNFs of size <= 8, 0 exceptions"};
}

Instance pattern_instance(int n, const std::vector<Pairs>& rest) {
  Instance inst;
  std::vector<GaussianRational> first;
  for (int k = 0; k < n; ++k) first.emplace_back(Rational(k));
  inst.classes.push_back(make_diagonal_class(first));
  int base = 100;
  for (const auto& pairs : rest) {
    std::vector<GaussianRational> v;
    std::vector<int> m;
    for (const auto& [a, b] : pairs) {
      v.emplace_back(Rational(base++));
      m.push_back(a + b);
    }
    inst.classes.push_back(make_diagonal_class(v, m));
  }
  return inst;
}

ExtReport pattern_report(int n, int l, const std::vector<Pairs>& rest) {
  BlockSplit sp;
  sp.l = l;
  Pairs first;
  for (int k = 0; k < n; ++k) first.push_back(k < l ? std::pair{1, 0} : std::pair{0, 1});
  sp.parts.push_back(first);
  for (const auto& pairs : rest) sp.parts.push_back(pairs);
  return delta_of_split(pattern_instance(n, rest), sp);
}

// 4. The delta table and the dimension identity.
Outcome delta_table() {
  std::ostringstream bad;
  auto expect = [&](const char* name, const ExtReport& rep, int delta, CaseTag tag) {
    if (rep.delta != delta || rep.case_tag != tag)
      bad << name << " gives delta " << rep.delta << " tag " << to_string(rep.case_tag) << "; ";
  };
  expect("B", pattern_report(4, 2, {{{1, 1}, {1, 1}}, {{1, 1}, {1, 1}}}), 0, CaseTag::B);
  expect("C", pattern_report(4, 2, {{{1, 1}, {1, 0}, {0, 1}}, {{1, 1}, {1, 1}}}), 1, CaseTag::C);
  expect("D", pattern_report(6, 3, {{{1, 1}, {1, 1}, {1, 1}}, {{2, 2}, {1, 1}}}), 1, CaseTag::D);
  for (int q = 1; q <= 2; ++q) {
    expect("E", pattern_report(2 * q + 3, 2 * q + 1,
                               {{{q, 1}, {q, 1}, {1, 0}}, {{q + 1, 1}, {q, 1}}}),
           1, CaseTag::E);
    Pairs f{{q, 1}, {1, 0}, {q - 1, 1}};
    if (q == 1) f = {{1, 1}, {1, 0}, {0, 1}};
    // At q = 1 the F configuration is the C configuration.
    expect("F", pattern_report(2 * q + 2, 2 * q, {f, {{q, 1}, {q, 1}}}), 1,
           q == 1 ? CaseTag::C : CaseTag::F);
  }
  const Instance two_rel = test::load("two_relation_n4_mult.json");
  const ExtReport e = delta_of_split(two_rel, parse_split(two_rel, 2, "1,1,0,0;1,1;1,1,0"));
  if (e.s != std::vector<int>{4, 2, 3} || e.delta != 1) bad << "two_rel split; ";

  std::mt19937_64 rng(20240601);
  int checked = 0;
  while (checked < 1000) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Instance inst = test::random_trace_ok(n, 2 + static_cast<int>(rng() % 3),
                                                Mode::additive, rng);
    const int l = 1 + static_cast<int>(rng() % (n - 1));
    const auto splits = enumerate_splits(inst, l);
    const BlockSplit& sp = splits[rng() % splits.size()];
    const ExtReport rep = delta_of_split(inst, sp);
    if (rep.dprime - rep.ddprime != rep.delta - 1) {
      bad << "d' - d'' identity fails; ";
      break;
    }
    ++checked;
  }
  if (!bad.str().empty()) return {false, bad.str()};
  return {true, "B:0 C,D,E(q=1,2),F(q=1,2):1, two_rel s=(4,2,3) delta=1, " +
                    std::to_string(checked) + " random splits satisfy d'-d''=delta-1"};
}

// 5. d and r against numerically realized matrices.
Outcome orbit_oracle() {
  std::mt19937_64 rng(5151);
  std::normal_distribution<double> normal(0.0, 1.0);
  const RealizationConfig cfg;
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const Jnf j = test::random_jnf(n, rng);
    ClassSpec c;
    for (std::size_t k = 0; k < j.slots().size(); ++k)
      c.slots.push_back({GaussianRational(Rational(static_cast<int>(2 * k) - 3, 3),
                                          Rational(static_cast<int>(k % 2), 2)),
                         j.slots()[k]});
    Matrix g(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g(a, b) = Complex(normal(rng), normal(rng));
    g += 3.0 * Matrix::Identity(n, n);
    const Matrix y = g * jnf_seed_matrix(c, Mode::additive) * g.inverse();
    const int d = n * n - centralizer_dimension(std::vector<Matrix>{y}, cfg.tol_rank);
    int r = n;
    for (const auto& s : c.slots) {
      const Complex lambda = numeric_eigenvalue(s.value, Mode::additive);
      r = std::min(r, numeric_rank(y - lambda * Matrix::Identity(n, n), cfg.tol_rank,
                                   std::max(y.norm(), std::abs(lambda))));
    }
    if (d != d_of_jnf(j) || r != r_of_jnf(j)) ++mismatches;
  }
  return {mismatches == 0, "200 random JNFs of size <= 5, " + std::to_string(mismatches) +
                               " mismatches"};
}

// 6. Irreducible witnesses for generic hypergeometric instances.
Outcome positive_control() {
  std::ostringstream os;
  bool pass = true;
  for (const char* file : {"hypergeometric_n2.json", "hypergeometric_n3.json"}) {
    const Instance inst = test::load(file);
    const auto t0 = std::chrono::steady_clock::now();
    RealizationConfig cfg;
    cfg.restarts = 32;
    cfg.require_irreducible = true;
    cfg.require_trivial_centralizer = true;
    const bool generic = is_generic(inst);
    const FindResult res = find_tuple(inst, cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const int n = inst.n();
    const bool ok = generic && res.found && res.report.residual <= 1e-10 &&
                    res.report.algebra_dimension == n * n &&
                    res.report.centralizer_dimension == 1 && secs <= 60;
    pass = pass && ok;
    os << "n=" << n << (generic ? " generic" : " NOT generic") << ", "
       << (res.found ? "found at restart " + std::to_string(res.tuple->restart)
                     : "not found")
       << ", residual " << res.report.residual << ", algebra "
       << res.report.algebra_dimension << ", centralizer "
       << res.report.centralizer_dimension << ", " << secs << " s; ";
  }
  return {pass, os.str()};
}

// 7. Negative controls.
Outcome negative_controls() {
  std::ostringstream os;
  RealizationConfig cfg;
  cfg.restarts = 100;
  cfg.threads = threads();

  RealizationConfig a = cfg;
  a.require_trivial_centralizer = true;
  const FindResult case_a = find_tuple(test::load("case_a_n4.json"), a);
  os << "(a) Case A: " << (case_a.found ? "FOUND a trivial centralizer" : case_a.failure)
     << "; ";

  bool b_ok = true;
  for (const char* file : {"two_relation_n4_mult.json", "two_relation_n4_add.json"}) {
    const Instance inst = test::load(file);
    RealizationConfig irr = cfg;
    irr.require_irreducible = true;
    const FindResult search = find_tuple(inst, irr);
    const FindResult semi =
        realize_semidirect(inst, parse_split(inst, 2, "1,1,0,0;1,1;1,1,0"), RealizationConfig{});
    const bool ok = !search.found && semi.found && semi.report.residual <= 1e-10 &&
                    semi.report.centralizer_dimension == 1;
    b_ok = b_ok && ok;
    os << "(b) " << file << ": irreducible search "
       << (search.found ? "FOUND a tuple" : "failed") << ", semidirect "
       << (semi.found ? "residual " + std::to_string(semi.report.residual) +
                            " centralizer " +
                            std::to_string(semi.report.centralizer_dimension)
                      : semi.failure)
       << "; ";
  }
  return {!case_a.found && b_ok, os.str()};
}

// 8. Verdict regressions with the rule that decides them.
Outcome verdicts() {
  struct Case {
    const char* file;
    Status status;
    const char* rule;
  };
  const Case cases[] = {
      {"hypergeometric_n2.json", Status::DSP_SOLVABLE, "simpson_generic"},
      {"hypergeometric_n3.json", Status::DSP_SOLVABLE, "simpson_generic"},
      {"case_a_n4.json", Status::WEAK_UNSOLVABLE, "weak_dsp_criterion"},
      {"two_relation_n4_mult.json", Status::DSP_UNSOLVABLE_WEAK_SOLVABLE,
       "rigid_reducible_obstruction"},
      {"two_relation_n4_add.json", Status::DSP_UNSOLVABLE_WEAK_SOLVABLE,
       "rigid_reducible_obstruction"},
      {"extn1_n4_p4.json", Status::DSP_UNSOLVABLE_WEAK_SOLVABLE, "extn1_obstruction"},
  };
  std::ostringstream os;
  bool pass = true;
  for (const auto& c : cases) {
    const Verdict v = verdict(test::load(c.file));
    const bool ok = v.status == c.status && v.has_rule(c.rule);
    pass = pass && ok;
    os << c.file << " -> " << to_string(v.status) << (ok ? "" : " (UNEXPECTED)") << "; ";
  }
  return {pass, os.str()};
}

// 9. Analytic gradient against central differences.
Outcome gradient_check() {
  std::mt19937_64 rng(909);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const Mode mode = t % 2 ? Mode::multiplicative : Mode::additive;
    const Instance inst = test::random_trace_ok(n, 3 + t % 2, mode, rng);
    std::vector<Matrix> seeds, g, dir, grad;
    for (const auto& c : inst.classes) {
      seeds.push_back(jnf_seed_matrix(c, mode));
      Matrix x(n, n), y(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          x(a, b) = Complex(normal(rng), normal(rng));
          y(a, b) = Complex(normal(rng), normal(rng));
        }
      g.push_back(x + 3.0 * Matrix::Identity(n, n));
      dir.push_back(y);
    }
    const ConjugationObjective obj(seeds, mode);
    obj.value_and_gradient(g, grad);
    double analytic = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
      analytic += (grad[j].array().conjugate() * dir[j].array()).sum().real();
    const double h = 1e-6;
    std::vector<Matrix> plus = g, minus = g;
    for (std::size_t j = 0; j < g.size(); ++j) {
      plus[j] += h * dir[j];
      minus[j] -= h * dir[j];
    }
    const double fd = (obj.value(plus) - obj.value(minus)) / (2 * h);
    const double scale = std::max({std::abs(analytic), std::abs(fd), 1e-12});
    worst = std::max(worst, std::abs(analytic - fd) / scale);
  }
  std::ostringstream os;
  os << "50 random points, n <= 4, worst relative error " << worst;
  return {worst <= 1e-4, os.str()};
}

// 10. N-relations and (n-N)-relations come together.
Outcome complement_symmetry() {
  std::mt19937_64 rng(1010);
  int with_relations = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 5;
    const Mode mode = t % 3 == 0 ? Mode::multiplicative : Mode::additive;
    const Instance inst = test::random_trace_ok(n, 3, mode, rng);
    bool any = false;
    for (int N = 1; N < n; ++N) {
      const bool here = !enumerate_relations(inst, N).empty();
      const bool there = !enumerate_relations(inst, n - N).empty();
      if (here != there)
        return {false, "asymmetry at N=" + std::to_string(N) + " in\n" +
                           serialize_instance(inst)};
      any = any || here;
    }
    if (any) ++with_relations;
  }
  return {true, "100 instances with n <= 6, " + std::to_string(with_relations) +
                    " with relations, 0 asymmetries"};
}

}  // namespace
}  // namespace dsp

int main() {
  using dsp::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"rigid-family completeness", dsp::rigid_families},
      {"beta without alpha is Case A", dsp::beta_alpha},
      {"correspondence invariance", dsp::correspondence},
      {"delta table", dsp::delta_table},
      {"rank/orbit oracle", dsp::orbit_oracle},
      {"witness positive control", dsp::positive_control},
      {"witness negative controls", dsp::negative_controls},
      {"verdict regressions", dsp::verdicts},
      {"gradient check", dsp::gradient_check},
      {"genericity complement symmetry", dsp::complement_symmetry},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::cout << "CRITERION " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " ["
              << criteria[i].first << "] " << o.detail << " (" << secs << " s)"
              << std::endl;
  }
  std::cout << (failed ? "ACCEPTANCE FAIL" : "ACCEPTANCE PASS") << " (" << failed
            << " of " << criteria.size() << " failed)" << std::endl;
  return failed ? 1 : 0;
}
