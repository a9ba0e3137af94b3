#include "dsp/census.hpp"

#include "dsp/errors.hpp"

namespace dsp {

std::vector<std::vector<MultiplicityVector>> enumerate_mv_tuples(int n,
                                                                 int p) {
  std::vector<MultiplicityVector> pool;
  for (const auto& part : all_partitions(n))
    pool.emplace_back(part.parts());
  const MultiplicityVector first(std::vector<int>(n, 1));

  std::vector<std::vector<MultiplicityVector>> out;
  std::vector<MultiplicityVector> cur{first};
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(cur.size()) == p + 1) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Instance shape_instance(const std::vector<MultiplicityVector>& mvs,
                        Mode mode) {
  Instance inst;
  inst.mode = mode;
  for (const auto& mv : mvs) {
    std::vector<GaussianRational> values;
    // Multiplicative logs must stay distinct modulo 1.
    for (std::size_t k = 0; k < mv.mults().size(); ++k)
      values.emplace_back(mode == Mode::additive
                              ? Rational(static_cast<int>(k))
                              : Rational(static_cast<int>(k),
                                         static_cast<int>(mv.mults().size())));
    inst.classes.push_back(make_diagonal_class(values, mv.mults()));
  }
  return inst;
}

std::string signature(const std::vector<MultiplicityVector>& mvs) {
  std::string s;
  for (std::size_t j = 0; j < mvs.size(); ++j) {
    if (j) s += ";";
    s += to_string(mvs[j]);
  }
  return s;
}

std::vector<CensusRow> run_census(int n, int p, Mode mode) {
  if (n < 1 || p < 1)
    throw ValidationError("census needs n >= 1 and p >= 1");
  if (n > kCensusMaxN || p > kCensusMaxP)
    throw BoundExceeded("census is bounded by n <= " +
                        std::to_string(kCensusMaxN) + ", p <= " +
                        std::to_string(kCensusMaxP));
  std::vector<CensusRow> rows;
  for (const auto& mvs : enumerate_mv_tuples(n, p)) {
    const Instance inst = shape_instance(mvs, mode);
    std::vector<Jnf> jnfs;
    for (const auto& mv : mvs) jnfs.push_back(Jnf::diagonal(mv));
    const Verdict v = shape_verdict(jnfs);
    CensusRow row;
    row.n = n;
    row.p = p;
    row.mode = mode;
    row.signature = signature(mvs);
    row.alpha = check_alpha(v.dq, n);
    row.beta = check_beta(v.dq, n);
    row.kappa = v.dq.kappa;
    row.case_A = detect_case_A(inst);
    row.family = classify_rigid_family(inst);
    row.status = v.status;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_census_tsv(std::ostream& os, const std::vector<CensusRow>& rows) {
  os << "n\tp\tmode\tsignature\talpha\tbeta\tkappa\tcase_A\trigid_family\t"
        "verdict\teigenvalues\n";
  for (const auto& r : rows)
    os << r.n << '\t' << r.p << '\t' << to_string(r.mode) << '\t'
       << r.signature << '\t' << (r.alpha ? 1 : 0) << '\t' << (r.beta ? 1 : 0)
       << '\t' << r.kappa << '\t' << (r.case_A ? 1 : 0) << '\t'
       << to_string(r.family) << '\t' << to_string(r.status) << '\t'
       << "assumed_generic\n";
}

}  // namespace dsp
