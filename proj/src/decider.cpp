#include "dsp/decider.hpp"

#include <algorithm>
#include <sstream>

#include "dsp/errors.hpp"

namespace dsp {

std::string to_string(Status s) {
  switch (s) {
    case Status::NO_TUPLES: return "NO_TUPLES";
    case Status::WEAK_UNSOLVABLE: return "WEAK_UNSOLVABLE";
    case Status::DSP_SOLVABLE: return "DSP_SOLVABLE";
    case Status::DSP_UNSOLVABLE_WEAK_SOLVABLE:
      return "DSP_UNSOLVABLE_WEAK_SOLVABLE";
    case Status::WEAK_SOLVABLE_DSP_UNKNOWN: return "WEAK_SOLVABLE_DSP_UNKNOWN";
    case Status::UNKNOWN: break;
  }
  return "UNKNOWN";
}

std::string to_string(RigidFamily f) {
  switch (f) {
    case RigidFamily::hypergeometric: return "hypergeometric";
    case RigidFamily::even: return "even";
    case RigidFamily::odd: return "odd";
    case RigidFamily::extra: return "extra";
    case RigidFamily::none: break;
  }
  return "none";
}

bool Verdict::has_rule(const std::string& rule) const {
  return std::any_of(trace.begin(), trace.end(),
                     [&](const TraceEntry& e) { return e.rule == rule; });
}

bool check_alpha(const DerivedQuantities& dq, int n) {
  return dq.sum_d() >= 2 * n * n - 2;
}

bool check_beta(const DerivedQuantities& dq, int n) {
  int total = 0;
  for (int r : dq.r) total += r;
  return std::all_of(dq.r.begin(), dq.r.end(),
                     [&](int rj) { return total - rj >= n; });
}

std::vector<std::size_t> essential_tail(const Instance& inst) {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j < inst.classes.size(); ++j)
    if (!inst.classes[j].is_scalar()) out.push_back(j);
  return out;
}

namespace {

bool convention2(const Instance& inst) {
  const auto& first = inst.classes.front();
  return first.is_diagonalizable() &&
         static_cast<int>(first.slots.size()) == inst.n();
}

MultiplicityVector mv(std::vector<int> v) {
  return MultiplicityVector(std::move(v));
}

std::string join(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace

bool detect_case_A(const Instance& inst) {
  const int n = inst.n();
  if (!convention2(inst) || n < 4 || n % 2 != 0) return false;
  const auto tail = essential_tail(inst);
  if (tail.size() != 2) return false;
  const MultiplicityVector half = mv({n / 2, n / 2});
  return std::all_of(tail.begin(), tail.end(), [&](std::size_t j) {
    return corresponding_diagonal(inst.classes[j].jnf()) == half;
  });
}

RigidFamily classify_rigid_family(const Instance& inst) {
  const int n = inst.n();
  if (!convention2(inst) || n < 2) return RigidFamily::none;
  const auto tail = essential_tail(inst);
  if (tail.size() != 2) return RigidFamily::none;
  const auto x = corresponding_diagonal(inst.classes[tail[0]].jnf());
  const auto y = corresponding_diagonal(inst.classes[tail[1]].jnf());
  auto pair_is = [&](const MultiplicityVector& a, const MultiplicityVector& b) {
    return (x == a && y == b) || (x == b && y == a);
  };
  if (pair_is(mv(std::vector<int>(n, 1)), mv({n - 1, 1})))
    return RigidFamily::hypergeometric;
  if (n % 2 == 0 && pair_is(mv({n / 2, n / 2 - 1, 1}), mv({n / 2, n / 2})))
    return RigidFamily::even;
  if (n % 2 == 1 && n >= 3 &&
      pair_is(mv({(n - 1) / 2, (n - 1) / 2, 1}), mv({(n + 1) / 2, (n - 1) / 2})))
    return RigidFamily::odd;
  if (n == 6 && pair_is(mv({2, 2, 2}), mv({4, 2}))) return RigidFamily::extra;
  return RigidFamily::none;
}

Detection detect_extn1_obstruction(const Instance& inst,
                                   const DeciderConfig& cfg) {
  Detection det;
  const int n = inst.n();
  const auto dq = validate_instance(inst);
  if (!dq.trace_ok || !convention2(inst) || n <= 2) return det;
  for (const auto& c : inst.classes)
    if (!c.is_diagonalizable()) return det;
  if (dq.sum_r_tail() != n) return det;

  // Unique eigenvalue of maximal multiplicity > n/2 in each class j >= 2.
  std::vector<std::size_t> mu(inst.classes.size(), 0);
  GaussianRational tail_sum;
  for (std::size_t j = 1; j < inst.classes.size(); ++j) {
    const auto m = inst.classes[j].multiplicities();
    const auto it = std::max_element(m.begin(), m.end());
    if (std::count(m.begin(), m.end(), *it) != 1 || 2 * *it <= n) return det;
    mu[j] = static_cast<std::size_t>(it - m.begin());
    tail_sum += inst.classes[j].slots[mu[j]].value;
  }
  const auto& first = inst.classes.front();
  bool have_mu1 = false;
  for (std::size_t k = 0; k < first.slots.size() && !have_mu1; ++k)
    if (is_neutral_sum(first.slots[k].value + tail_sum, inst.mode)) {
      mu[0] = k;
      have_mu1 = true;
    }
  if (!have_mu1) return det;

  RelationWitness rel;
  rel.N = 1;
  rel.target = first.slots[mu[0]].value + tail_sum;
  for (std::size_t j = 0; j < inst.classes.size(); ++j) {
    std::vector<int> e(inst.classes[j].slots.size(), 0);
    e[mu[j]] = 1;
    rel.picks.push_back(std::move(e));
  }

  // The 1-relation must be the only one up to complement.
  if (n > cfg.relation_bound) {
    det.unknown = true;
    det.detail = "relation enumeration bound exceeded";
    return det;
  }
  for (int N = 1; N <= n / 2; ++N) {
    bool other = false;
    for_each_relation(
        inst, N,
        [&](const RelationWitness& w) {
          if (w.picks != rel.picks) other = true;
          return !other;
        },
        cfg.relation_bound);
    if (other) return det;
  }

  // Classes with the mu_j deleted, size n-1.
  Instance reduced;
  reduced.mode = inst.mode;
  for (std::size_t j = 0; j < inst.classes.size(); ++j) {
    ClassSpec c;
    for (std::size_t k = 0; k < inst.classes[j].slots.size(); ++k) {
      const int m = inst.classes[j].slots[k].multiplicity() - (k == mu[j]);
      if (m > 0)
        c.slots.push_back({inst.classes[j].slots[k].value,
                           Partition(std::vector<int>(m, 1))});
    }
    reduced.classes.push_back(std::move(c));
  }
  const auto rdq = validate_instance(reduced);
  if (!check_beta(rdq, n - 1) || detect_case_A(reduced)) return det;

  det.found = true;
  std::ostringstream os;
  os << "unique 1-relation through the maximal-multiplicity eigenvalues; "
     << "r_2+...+r_{p+1} = n = " << n << "; deleted classes satisfy (beta_"
     << n - 1 << ") and avoid Case A";
  if (inst.mode == Mode::multiplicative)
    os << "; multiplicative analog of the additive construction assumed";
  det.detail = os.str();
  return det;
}

Detection detect_rigid_reducible_obstruction(const Instance& inst,
                                             const DeciderConfig& cfg) {
  Detection det;
  const int n = inst.n();
  const auto dq = validate_instance(inst);
  if (!convention2(inst) || dq.kappa != 2 || !check_alpha(dq, n) ||
      !check_beta(dq, n))
    return det;
  for (const auto& c : inst.classes)
    if (!c.is_diagonalizable()) return det;

  auto block_ok = [&](const Instance& b) {
    if (!is_neutral_sum(validate_instance(b).trace_sum, b.mode)) return false;
    if (b.n() < 2) return true;
    const auto bdq = validate_instance(b);
    return check_alpha(bdq, b.n()) && check_beta(bdq, b.n());
  };

  // Swapping P and R preserves every condition, so l <= n/2 suffices.
  for (int l = 1; l <= n / 2; ++l) {
    if (count_splits(inst, l) > cfg.split_bound) {
      det.unknown = true;
      det.detail = "split enumeration bound exceeded at l = " +
                   std::to_string(l);
      return det;
    }
    for (const auto& sp : enumerate_splits(inst, l, cfg.split_bound)) {
      if (!block_ok(upper_instance(inst, sp)) ||
          !block_ok(lower_instance(inst, sp)))
        continue;
      const auto rep = delta_of_split(inst, sp);
      if (rep.delta < 1) continue;
      det.found = true;
      det.split = sp;
      std::ostringstream os;
      os << "kappa = 2 and a split at l = " << l << " with s = " << join(rep.s)
         << ", delta = " << rep.delta
         << " whose blocks satisfy their own trace conditions and "
            "(alpha)/(beta): reducible trivial-centralizer tuples exist, so "
            "irreducible ones cannot";
      det.detail = os.str();
      return det;
    }
  }
  return det;
}

Verdict verdict(const Instance& inst, const DeciderConfig& cfg) {
  Verdict v;
  const int n = inst.n();
  v.dq = validate_instance(inst);
  const auto& dq = v.dq;
  auto add = [&](std::string rule, std::string anchor, std::string facts) {
    v.trace.push_back({std::move(rule), std::move(anchor), std::move(facts)});
  };

  std::ostringstream basics;
  basics << "n = " << n << ", p = " << inst.p() << ", d = " << join(dq.d)
         << ", r = " << join(dq.r) << ", kappa = " << dq.kappa;

  if (!dq.trace_ok) {
    add("trace_condition",
        "necessary condition: sum of traces is 0 / product of determinants "
        "is 1",
        "eigenvalue sum = " + to_string(dq.trace_sum) +
            (inst.mode == Mode::multiplicative ? " (not an integer)"
                                               : " (nonzero)"));
    v.status = Status::NO_TUPLES;
    return v;
  }
  add("trace_condition",
      "necessary condition: sum of traces is 0 / product of determinants is 1",
      "eigenvalue sum = " + to_string(dq.trace_sum));

  if (!dq.convention2) {
    add("convention2", "all criteria assume class 1 has n distinct eigenvalues",
        "class 1 is not diagonal with distinct eigenvalues; " + basics.str());
    v.status = Status::UNKNOWN;
    return v;
  }

  const bool alpha = check_alpha(dq, n);
  const bool beta = check_beta(dq, n);
  {
    std::ostringstream os;
    os << basics.str() << "; (alpha): sum d = " << dq.sum_d()
       << (alpha ? " >= " : " < ") << 2 * n * n - 2
       << "; (beta): r_2+...+r_{p+1} = " << dq.sum_r_tail()
       << (beta ? " >= " : " < ") << n;
    if (!alpha && beta && detect_case_A(inst)) os << "; Case A shape";
    add("weak_dsp_criterion",
        "weak DSP criterion: (alpha) and (beta) are necessary and sufficient "
        "under Convention 2",
        os.str());
  }
  if (!alpha || !beta) {
    v.status = Status::WEAK_UNSOLVABLE;
    return v;
  }

  bool genericity_known = true;
  try {
    v.min_relation_N = min_relation_N(inst, cfg.relation_bound);
    add("genericity", "non-genericity relations",
        v.min_relation_N ? "smallest relation has N = " +
                               std::to_string(*v.min_relation_N)
                         : "generic: no relation for N = 1.." +
                               std::to_string(n - 1));
  } catch (const BoundExceeded& e) {
    genericity_known = false;
    v.search_unknown = true;
    add("genericity", "non-genericity relations",
        std::string("UNKNOWN: ") + e.what());
  }

  if (genericity_known && !v.min_relation_N) {
    add("simpson_generic",
        "Simpson's criterion: for generic eigenvalues (alpha) and (beta) "
        "suffice for the DSP",
        "eigenvalues generic, (alpha) and (beta) hold");
    v.status = Status::DSP_SOLVABLE;
    return v;
  }
  if (dq.sum_r_tail() >= n + 1) {
    add("r_sum_n_plus_1",
        "sufficiency of r_2+...+r_{p+1} >= n+1 for arbitrary eigenvalues",
        "r_2+...+r_{p+1} = " + std::to_string(dq.sum_r_tail()) +
            " >= " + std::to_string(n + 1));
    v.status = Status::DSP_SOLVABLE;
    return v;
  }
  if (!genericity_known) {
    v.status = Status::UNKNOWN;
    return v;
  }
  if (*v.min_relation_N >= 2 && dq.kappa <= 0) {
    add("two_generic_kappa_nonpositive",
        "sufficiency of (alpha) and (beta) for 2-generic eigenvalues with "
        "kappa <= 0",
        "min N = " + std::to_string(*v.min_relation_N) +
            ", kappa = " + std::to_string(dq.kappa));
    v.status = Status::DSP_SOLVABLE;
    return v;
  }

  const auto ext = detect_extn1_obstruction(inst, cfg);
  if (ext.found) {
    add("extn1_obstruction",
        "obstruction: a unique 1-relation with r_2+...+r_{p+1} = n forces "
        "every trivial-centralizer tuple to be a semi-direct sum",
        ext.detail);
    v.status = Status::DSP_UNSOLVABLE_WEAK_SOLVABLE;
    return v;
  }
  const auto rigid = detect_rigid_reducible_obstruction(inst, cfg);
  if (rigid.found) {
    add("rigid_reducible_obstruction",
        "obstruction: in the rigid case irreducible and reducible tuples "
        "cannot coexist",
        rigid.detail);
    v.status = Status::DSP_UNSOLVABLE_WEAK_SOLVABLE;
    return v;
  }
  if (ext.unknown || rigid.unknown) v.search_unknown = true;

  add("residual",
      "open region: r_2+...+r_{p+1} = n and (kappa = 2 or a 1-relation)",
      "r_2+...+r_{p+1} = " + std::to_string(dq.sum_r_tail()) +
          ", kappa = " + std::to_string(dq.kappa) +
          ", min N = " + std::to_string(*v.min_relation_N) +
          (v.search_unknown ? "; an obstruction search hit its bound" : ""));
  v.status = Status::WEAK_SOLVABLE_DSP_UNKNOWN;
  return v;
}

Verdict shape_verdict(const std::vector<Jnf>& jnfs) {
  if (jnfs.size() < 2)
    throw ValidationError("a shape needs at least two classes");
  const int n = jnfs.front().size();
  Verdict v;
  for (const auto& j : jnfs) {
    if (j.size() != n) throw ValidationError("shape classes differ in size");
    v.dq.d.push_back(d_of_jnf(j));
    v.dq.r.push_back(r_of_jnf(j));
  }
  v.dq.kappa = 2 * n * n - v.dq.sum_d();
  v.dq.trace_ok = true;
  v.dq.convention2 = jnfs.front().is_diagonal() &&
                     static_cast<int>(jnfs.front().slots().size()) == n;
  if (!v.dq.convention2) {
    v.status = Status::UNKNOWN;
    v.trace.push_back({"convention2", "class 1 must have distinct eigenvalues",
                       "shape violates Convention 2"});
    return v;
  }
  const bool alpha = check_alpha(v.dq, n), beta = check_beta(v.dq, n);
  v.trace.push_back({"weak_dsp_criterion",
                     "weak DSP criterion under Convention 2",
                     std::string("alpha ") + (alpha ? "holds" : "fails") +
                         ", beta " + (beta ? "holds" : "fails")});
  if (!alpha || !beta) {
    v.status = Status::WEAK_UNSOLVABLE;
    return v;
  }
  v.trace.push_back({"simpson_generic",
                     "Simpson's criterion (eigenvalues assumed generic)",
                     "assume generic"});
  v.status = Status::DSP_SOLVABLE;
  return v;
}

}  // namespace dsp
