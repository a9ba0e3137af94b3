// dsp: decide and realize Deligne-Simpson instances from the command line.
//
// Exit codes: 0 success, 2 validation error, 3 not found / UNKNOWN,
// 4 bound exceeded.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dsp/blockext.hpp"
#include "dsp/census.hpp"
#include "dsp/decider.hpp"
#include "dsp/genericity.hpp"
#include "dsp/instance_io.hpp"
#include "dsp/partitions.hpp"
#include "dsp/witness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitBound = 4;

using nlohmann::json;

std::string list(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::string picks_text(const dsp::Instance& inst,
                       const dsp::RelationWitness& rel) {
  std::ostringstream os;
  for (std::size_t j = 0; j < rel.picks.size(); ++j) {
    if (j) os << " | ";
    os << "class " << j + 1 << ":";
    bool any = false;
    for (std::size_t k = 0; k < rel.picks[j].size(); ++k) {
      if (rel.picks[j][k] == 0) continue;
      os << " " << dsp::to_string(inst.classes[j].slots[k].value);
      if (rel.picks[j][k] > 1) os << " x" << rel.picks[j][k];
      any = true;
    }
    if (!any) os << " -";
  }
  return os.str();
}

int cmd_analyze(const std::string& file, bool as_json) {
  const dsp::Instance inst = dsp::load_instance(file);
  const dsp::Verdict v = dsp::verdict(inst);
  const json j = dsp::verdict_to_json(inst, v);
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "mode            " << j["mode"].get<std::string>() << "\n"
              << "n, p            " << inst.n() << ", " << inst.p() << "\n"
              << "d               " << list(v.dq.d) << "  sum " << v.dq.sum_d()
              << "\n"
              << "r               " << list(v.dq.r) << "  r_2+...+r_{p+1} "
              << v.dq.sum_r_tail() << "\n"
              << "kappa           " << v.dq.kappa << "\n"
              << "trace sum       " << dsp::to_string(v.dq.trace_sum)
              << (v.dq.trace_ok ? "  (ok)" : "  (fails)") << "\n"
              << "convention 2    " << (v.dq.convention2 ? "yes" : "no") << "\n"
              << "alpha, beta     " << (j["alpha"].get<bool>() ? "holds" : "fails")
              << ", " << (j["beta"].get<bool>() ? "holds" : "fails") << "\n"
              << "case A          " << (j["case_A"].get<bool>() ? "yes" : "no")
              << "\n"
              << "rigid family    " << j["rigid_family"].get<std::string>()
              << "\n"
              << "min relation N  "
              << (v.min_relation_N ? std::to_string(*v.min_relation_N)
                                   : std::string("none"))
              << "\n"
              << "verdict         " << dsp::to_string(v.status) << "\n"
              << "trace:\n";
    for (std::size_t i = 0; i < v.trace.size(); ++i)
      std::cout << "  " << i + 1 << ". [" << v.trace[i].rule << "] "
                << v.trace[i].anchor << "\n     " << v.trace[i].facts << "\n";
  }
  return v.status == dsp::Status::UNKNOWN ? kExitNotFound : kExitOk;
}

int cmd_genericity(const std::string& file, int max_n, bool as_json) {
  const dsp::Instance inst = dsp::load_instance(file);
  const int n = inst.n();
  const int last = max_n > 0 ? std::min(max_n, n - 1) : n - 1;
  json rels = json::array();
  std::optional<int> min_n;
  std::ostringstream text;
  for (int N = 1; N <= last; ++N) {
    const auto found = dsp::enumerate_relations(inst, N);
    if (!found.empty() && !min_n) min_n = N;
    for (const auto& r : found) {
      rels.push_back(dsp::to_json(r));
      text << "N=" << N << "  " << picks_text(inst, r)
           << "  (sum " << dsp::to_string(r.target) << ")\n";
    }
  }
  if (as_json) {
    std::cout << json{{"n", n},
                      {"max_N", last},
                      {"relations", rels},
                      {"min_relation_N", min_n ? json(*min_n) : json(nullptr)},
                      {"generic", !min_n && last == n - 1}}
                     .dump(2)
              << "\n";
    return kExitOk;
  }
  if (!min_n) {
    std::cout << "generic: no relations for N=1.." << last << "\n";
    if (last < n - 1)
      std::cout << "(search limited by --max-N; N=" << last + 1 << ".."
                << n - 1 << " not examined)\n";
    return kExitOk;
  }
  std::cout << text.str();
  std::cout << "min N: " << *min_n << "\n";
  std::cout << "k-generic for k <= " << *min_n << ", not " << *min_n + 1
            << "-generic\n";
  return kExitOk;
}

int cmd_witness(const std::string& file, dsp::RealizationConfig cfg,
                bool as_json) {
  const dsp::Instance inst = dsp::load_instance(file);
  const dsp::FindResult res = dsp::find_tuple(inst, cfg);
  if (as_json) {
    json out = {{"found", res.found},
                {"restarts_tried", res.restarts_tried},
                {"failure", res.failure}};
    if (res.tuple) {
      out["report"] = dsp::to_json(res.report);
      out["restart"] = res.tuple->restart;
      out["iterations"] = res.tuple->iterations;
    }
    std::cout << out.dump(2) << "\n";
  } else if (res.found) {
    const auto& r = res.report;
    std::cout << std::setprecision(3) << std::scientific;
    std::cout << "found at restart " << res.tuple->restart << " after "
              << res.tuple->iterations << " iterations\n"
              << "residual               " << r.residual << "\n";
    for (std::size_t j = 0; j < r.member.size(); ++j)
      std::cout << "class " << j + 1 << " membership    distance "
                << r.membership_distance[j] << ", "
                << (r.member[j] ? "member" : "NOT member") << "\n";
    std::cout << "algebra dimension      " << r.algebra_dimension << " of "
              << inst.n() * inst.n() << "\n"
              << "centralizer dimension  " << r.centralizer_dimension << "\n";
  } else {
    std::cout << res.failure << "\n";
  }
  return res.found ? kExitOk : kExitNotFound;
}

int cmd_census(int n, int p, const std::string& mode, const std::string& out) {
  const auto rows = dsp::run_census(n, p, dsp::parse_mode(mode));
  if (out.empty() || out == "-") {
    dsp::write_census_tsv(std::cout, rows);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw dsp::ValidationError("cannot write '" + out + "'");
    dsp::write_census_tsv(f, rows);
    std::cerr << rows.size() << " rows written to " << out << "\n";
  }
  return kExitOk;
}

int cmd_corresponding(const std::string& jnf_text, const std::string& mv_text) {
  if (jnf_text.empty() == mv_text.empty())
    throw dsp::ValidationError("give exactly one of --jnf or --mv");
  if (!jnf_text.empty()) {
    const dsp::Jnf j = dsp::parse_jnf(jnf_text);
    if (j.size() > dsp::kCorrespondingJnfBound)
      throw dsp::BoundExceeded("JNF size exceeds " +
                               std::to_string(dsp::kCorrespondingJnfBound));
    std::cout << dsp::to_string(j) << " -> "
              << dsp::to_string(dsp::corresponding_diagonal(j)) << "\n";
    return kExitOk;
  }
  const dsp::MultiplicityVector mv(dsp::parse_partition(mv_text).parts());
  for (const auto& j : dsp::corresponding_jnfs(mv))
    std::cout << dsp::to_string(j) << (j.is_diagonal() ? "  (diagonal)" : "")
              << "\n";
  return kExitOk;
}

int cmd_ext1(const std::string& file, int l, const std::string& split,
             bool as_json) {
  const dsp::Instance inst = dsp::load_instance(file);
  const dsp::BlockSplit sp = dsp::parse_split(inst, l, split);
  const dsp::ExtReport rep = dsp::delta_of_split(inst, sp);
  if (as_json) {
    std::cout << dsp::to_json(rep).dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "l, n-l          " << rep.l << ", " << rep.n - rep.l << "\n"
            << "s               " << list(rep.s) << "\n"
            << "delta           " << rep.delta << "\n"
            << "d upper/lower   " << list(rep.d1) << " / " << list(rep.d2)
            << "\n"
            << "r upper/lower   " << list(rep.r1) << " / " << list(rep.r2)
            << "\n"
            << "d', d'', d'''   " << rep.dprime << ", " << rep.ddprime << ", "
            << rep.dtriple << "\n"
            << "case            " << dsp::to_string(rep.case_tag);
  if (rep.case_q) std::cout << " (q = " << rep.case_q << ")";
  std::cout << "\n"
            << "class 1 disjoint " << (rep.class1_disjoint ? "yes" : "no")
            << "\n"
            << "blocks (alpha)/(beta) " << (rep.upper_alpha_beta ? "yes" : "no")
            << " / " << (rep.lower_alpha_beta ? "yes" : "no") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deligne-Simpson problem toolkit"};
  app.require_subcommand(1);

  std::string file;
  bool as_json = false;

  auto* analyze = app.add_subcommand("analyze", "invariants and verdict");
  analyze->add_option("file", file, "instance JSON")->required();
  analyze->add_flag("--json", as_json, "machine-readable output");

  int max_n = 0;
  auto* generic = app.add_subcommand("genericity", "non-genericity relations");
  generic->add_option("file", file, "instance JSON")->required();
  generic->add_option("--max-N", max_n, "largest N to enumerate");
  generic->add_flag("--json", as_json, "machine-readable output");

  dsp::RealizationConfig cfg;
  auto* witness = app.add_subcommand("witness", "numerical realization");
  witness->add_option("file", file, "instance JSON")->required();
  witness->add_option("--restarts", cfg.restarts, "random restarts");
  witness->add_option("--tol", cfg.tol_sum, "residual tolerance");
  witness->add_option("--seed", cfg.rng_seed, "rng seed");
  witness->add_option("--max-iterations", cfg.max_iterations,
                      "iterations per restart");
  witness->add_option("--threads", cfg.threads, "parallel restarts");
  witness->add_flag("--require-irreducible", cfg.require_irreducible,
                    "accept only irreducible tuples");
  witness->add_flag("--require-trivial-centralizer",
                    cfg.require_trivial_centralizer,
                    "accept only tuples with scalar centralizer");
  witness->add_flag("--json", as_json, "machine-readable output");

  int cn = 0, cp = 0;
  std::string mode = "additive", out;
  auto* census = app.add_subcommand("census", "exhaustive MV-shape census");
  census->add_option("--n", cn, "matrix size")->required();
  census->add_option("--p", cp, "p (number of classes minus one)")->required();
  census->add_option("--mode", mode, "additive or multiplicative");
  census->add_option("--out", out, "TSV output path (default stdout)");

  std::string jnf_text, mv_text;
  auto* corr = app.add_subcommand("corresponding", "corresponding JNFs");
  corr->add_option("--jnf", jnf_text, "JNF, slots separated by ';'");
  corr->add_option("--mv", mv_text, "multiplicity vector, e.g. 2,2,2");

  int l = 0;
  std::string split;
  auto* ext1 = app.add_subcommand("ext1", "extension dimension at a split");
  ext1->add_option("file", file, "instance JSON")->required();
  ext1->add_option("--l", l, "upper block size")->required();
  ext1->add_option("--split", split,
                   "per class the upper-block multiplicity of each "
                   "eigenvalue, e.g. 1,1,0,0;1,1;1,1,0")
      ->required();
  ext1->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*analyze) return cmd_analyze(file, as_json);
    if (*generic) return cmd_genericity(file, max_n, as_json);
    if (*witness) return cmd_witness(file, cfg, as_json);
    if (*census) return cmd_census(cn, cp, mode, out);
    if (*corr) return cmd_corresponding(jnf_text, mv_text);
    if (*ext1) return cmd_ext1(file, l, split, as_json);
  } catch (const dsp::BoundExceeded& e) {
    std::cerr << "UNKNOWN: bound exceeded: " << e.what() << "\n";
    return kExitBound;
  } catch (const dsp::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const dsp::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
