#include "dsp/genericity.hpp"

#include <algorithm>

#include "dsp/errors.hpp"

namespace dsp {

namespace {

struct Pick {
  std::vector<int> counts;
  GaussianRational sum;
};

// Sub-multiplicity vectors of one class with total N, lexicographic order.
std::vector<Pick> class_picks(const ClassSpec& c, int N) {
  std::vector<Pick> out;
  const auto mults = c.multiplicities();
  std::vector<int> cur(mults.size(), 0);
  auto rec = [&](auto&& self, std::size_t k, int remaining,
                 GaussianRational sum) -> void {
    if (k == mults.size()) {
      if (remaining == 0) out.push_back({cur, sum});
      return;
    }
    for (int e = 0; e <= std::min(mults[k], remaining); ++e) {
      cur[k] = e;
      self(self, k + 1, remaining - e, sum + c.slots[k].value * e);
    }
    cur[k] = 0;
  };
  rec(rec, 0, N, GaussianRational{});
  return out;
}

struct Interval {
  Rational lo, hi;
};

bool contains_integer(const Rational& lo, const Rational& hi) {
  // ceil(lo) <= hi
  BigInt f = boost::multiprecision::numerator(lo) /
             boost::multiprecision::denominator(lo);
  Rational c(f);
  if (c < lo) c += 1;
  return c <= hi;
}

}  // namespace

std::size_t for_each_relation(
    const Instance& inst, int N,
    const std::function<bool(const RelationWitness&)>& visit, int bound) {
  const int n = inst.n();
  if (n > bound)
    throw BoundExceeded("relation enumeration: n = " + std::to_string(n) +
                        " exceeds bound " + std::to_string(bound));
  if (N < 1 || N >= n)
    throw PreconditionError("relation size N must satisfy 1 <= N < n");

  const std::size_t k = inst.classes.size();
  std::vector<std::vector<Pick>> picks(k);
  for (std::size_t j = 0; j < k; ++j) {
    picks[j] = class_picks(inst.classes[j], N);
    if (picks[j].empty()) return 0;
  }
  // Range of the remaining sum from class j onwards, per component.
  std::vector<Interval> re_tail(k + 1, {0, 0}), im_tail(k + 1, {0, 0});
  for (std::size_t j = k; j-- > 0;) {
    Rational rlo = picks[j][0].sum.re, rhi = rlo;
    Rational ilo = picks[j][0].sum.im, ihi = ilo;
    for (const auto& pk : picks[j]) {
      rlo = std::min(rlo, pk.sum.re);
      rhi = std::max(rhi, pk.sum.re);
      ilo = std::min(ilo, pk.sum.im);
      ihi = std::max(ihi, pk.sum.im);
    }
    re_tail[j] = {re_tail[j + 1].lo + rlo, re_tail[j + 1].hi + rhi};
    im_tail[j] = {im_tail[j + 1].lo + ilo, im_tail[j + 1].hi + ihi};
  }

  const bool additive = inst.mode == Mode::additive;
  std::size_t visited = 0;
  bool stop = false;
  std::vector<std::size_t> chosen(k, 0);
  auto feasible = [&](const GaussianRational& partial, std::size_t j) {
    const Rational ilo = partial.im + im_tail[j].lo;
    const Rational ihi = partial.im + im_tail[j].hi;
    if (ilo > 0 || ihi < 0) return false;
    const Rational rlo = partial.re + re_tail[j].lo;
    const Rational rhi = partial.re + re_tail[j].hi;
    if (additive) return rlo <= 0 && rhi >= 0;
    return contains_integer(rlo, rhi);
  };
  auto rec = [&](auto&& self, std::size_t j,
                 const GaussianRational& partial) -> void {
    if (stop) return;
    if (j == k) {
      if (!is_neutral_sum(partial, inst.mode)) return;
      RelationWitness w;
      w.N = N;
      w.target = partial;
      for (std::size_t c = 0; c < k; ++c)
        w.picks.push_back(picks[c][chosen[c]].counts);
      ++visited;
      if (!visit(w)) stop = true;
      return;
    }
    for (std::size_t i = 0; i < picks[j].size() && !stop; ++i) {
      GaussianRational next = partial + picks[j][i].sum;
      if (!feasible(next, j + 1)) continue;
      chosen[j] = i;
      self(self, j + 1, next);
    }
  };
  if (feasible(GaussianRational{}, 0)) rec(rec, 0, GaussianRational{});
  return visited;
}

std::vector<RelationWitness> enumerate_relations(const Instance& inst, int N,
                                                 int bound) {
  std::vector<RelationWitness> out;
  for_each_relation(
      inst, N,
      [&](const RelationWitness& w) {
        out.push_back(w);
        return true;
      },
      bound);
  return out;
}

std::optional<int> min_relation_N(const Instance& inst, int bound) {
  const int n = inst.n();
  if (n > bound)
    throw BoundExceeded("genericity: n = " + std::to_string(n) +
                        " exceeds bound " + std::to_string(bound));
  // With the trace condition, an N-relation and an (n-N)-relation come in
  // pairs, so the smallest one is at most n/2.
  const DerivedQuantities dq = validate_instance(inst);
  const int last = dq.trace_ok ? n / 2 : n - 1;
  for (int N = 1; N <= last; ++N) {
    const auto found =
        for_each_relation(inst, N, [](const RelationWitness&) { return false; },
                          bound);
    if (found > 0) return N;
  }
  return std::nullopt;
}

bool is_k_generic(const Instance& inst, int k, int bound) {
  const auto m = min_relation_N(inst, bound);
  return !m || *m >= k;
}

bool is_generic(const Instance& inst, int bound) {
  return !min_relation_N(inst, bound).has_value();
}

RelationWitness complement(const Instance& inst, const RelationWitness& rel) {
  RelationWitness out;
  out.N = inst.n() - rel.N;
  GaussianRational total;
  for (std::size_t j = 0; j < inst.classes.size(); ++j) {
    const auto mults = inst.classes[j].multiplicities();
    std::vector<int> c(mults.size());
    for (std::size_t k = 0; k < mults.size(); ++k) {
      c[k] = mults[k] - rel.picks[j][k];
      total += inst.classes[j].slots[k].value * c[k];
    }
    out.picks.push_back(std::move(c));
  }
  out.target = total;
  return out;
}

}  // namespace dsp
