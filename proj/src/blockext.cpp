#include "dsp/blockext.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "dsp/conditions.hpp"
#include "dsp/errors.hpp"

namespace dsp {

std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::B: return "B";
    case CaseTag::C: return "C";
    case CaseTag::D: return "D";
    case CaseTag::E: return "E";
    case CaseTag::F: return "F";
    case CaseTag::none: break;
  }
  return "none";
}

namespace {

void check_fits(const Instance& inst, const BlockSplit& sp) {
  const int n = inst.n();
  if (sp.l < 1 || sp.l > n - 1)
    throw ValidationError("split block size l must satisfy 1 <= l <= n-1");
  if (sp.parts.size() != inst.classes.size())
    throw ValidationError("split has " + std::to_string(sp.parts.size()) +
                          " classes, instance has " +
                          std::to_string(inst.classes.size()));
  for (std::size_t j = 0; j < inst.classes.size(); ++j) {
    const auto& c = inst.classes[j];
    if (!c.is_diagonalizable())
      throw PreconditionError("class " + std::to_string(j + 1) +
                              " is not diagonalizable; splits need MVs");
    if (sp.parts[j].size() != c.slots.size())
      throw ValidationError("split of class " + std::to_string(j + 1) +
                            " has the wrong number of eigenvalues");
    int upper = 0;
    for (std::size_t k = 0; k < c.slots.size(); ++k) {
      const auto [a, b] = sp.parts[j][k];
      if (a < 0 || b < 0 || a + b != c.slots[k].multiplicity())
        throw ValidationError("split of class " + std::to_string(j + 1) +
                              " does not add up to the multiplicities");
      upper += a;
    }
    if (upper != sp.l)
      throw ValidationError("split of class " + std::to_string(j + 1) +
                            " puts " + std::to_string(upper) +
                            " into the upper block, expected " +
                            std::to_string(sp.l));
  }
}

Instance block_instance(const Instance& inst, const BlockSplit& sp,
                        bool upper) {
  check_fits(inst, sp);
  Instance out;
  out.mode = inst.mode;
  for (std::size_t j = 0; j < inst.classes.size(); ++j) {
    ClassSpec c;
    for (std::size_t k = 0; k < inst.classes[j].slots.size(); ++k) {
      const int m = upper ? sp.parts[j][k].first : sp.parts[j][k].second;
      if (m > 0)
        c.slots.push_back({inst.classes[j].slots[k].value,
                           Partition(std::vector<int>(m, 1))});
    }
    out.classes.push_back(std::move(c));
  }
  return out;
}

using Pairs = std::vector<std::pair<int, int>>;

Pairs sorted(Pairs v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool alpha_beta_at_size(const Instance& block) {
  if (block.n() < 2) return true;
  const auto dq = validate_instance(block);
  return check_alpha(dq, block.n()) && check_beta(dq, block.n());
}

}  // namespace

Instance upper_instance(const Instance& inst, const BlockSplit& sp) {
  return block_instance(inst, sp, true);
}

Instance lower_instance(const Instance& inst, const BlockSplit& sp) {
  return block_instance(inst, sp, false);
}

int s_of_split(const Instance& inst, const BlockSplit& sp, std::size_t j) {
  check_fits(inst, sp);
  const int n = inst.n();
  int shared = 0;
  for (const auto& [a, b] : sp.parts.at(j)) shared += a * b;
  return sp.l * (n - sp.l) - shared;
}

ExtReport delta_of_split(const Instance& inst, const BlockSplit& sp) {
  check_fits(inst, sp);
  const int n = inst.n();
  const int l = sp.l;
  ExtReport rep;
  rep.l = l;
  rep.n = n;
  const Instance up = upper_instance(inst, sp);
  const Instance lo = lower_instance(inst, sp);
  int sum_s = 0, sum_d = 0;
  for (std::size_t j = 0; j < inst.classes.size(); ++j) {
    rep.s.push_back(s_of_split(inst, sp, j));
    sum_s += rep.s.back();
    sum_d += d_of_jnf(inst.classes[j].jnf());
    const Jnf pj = up.classes[j].jnf(), rj = lo.classes[j].jnf();
    rep.d1.push_back(d_of_jnf(pj));
    rep.d2.push_back(d_of_jnf(rj));
    rep.r1.push_back(r_of_jnf(pj));
    rep.r2.push_back(r_of_jnf(rj));
  }
  rep.delta = sum_s - 2 * l * (n - l);
  rep.dprime = sum_d - n * n + 1;
  rep.ddprime = sum_d - rep.delta - n * n + 2;
  rep.dtriple = rep.ddprime - l * (n - l);

  const auto& first = inst.classes.front();
  rep.class1_disjoint =
      static_cast<int>(first.slots.size()) == n &&
      std::all_of(sp.parts[0].begin(), sp.parts[0].end(),
                  [](const auto& ab) { return ab.first * ab.second == 0; });
  rep.upper_alpha_beta = alpha_beta_at_size(up);
  rep.lower_alpha_beta = alpha_beta_at_size(lo);
  std::tie(rep.case_tag, rep.case_q) = detect_case_BF(inst, sp);
  return rep;
}

std::pair<CaseTag, int> detect_case_BF(const Instance& inst,
                                       const BlockSplit& sp) {
  check_fits(inst, sp);
  const int l = sp.l, m = inst.n() - sp.l;
  if (inst.p() != 2 || l < m || m < 2) return {CaseTag::none, 0};

  const Pairs x = sorted(sp.parts[1]);
  const Pairs y = sorted(sp.parts[2]);
  auto either = [&](const Pairs& a, const Pairs& b) {
    const Pairs sa = sorted(a), sb = sorted(b);
    return (x == sa && y == sb) || (x == sb && y == sa);
  };

  if (l == 2 && m == 2) {
    if (either({{1, 1}, {1, 1}}, {{1, 1}, {1, 1}})) return {CaseTag::B, 0};
    if (either({{1, 1}, {1, 0}, {0, 1}}, {{1, 1}, {1, 1}}))
      return {CaseTag::C, 0};
  }
  if (l == 3 && m == 3 && either({{1, 1}, {1, 1}, {1, 1}}, {{2, 2}, {1, 1}}))
    return {CaseTag::D, 0};
  if (m == 2 && l % 2 == 1) {
    const int q = (l - 1) / 2;
    if (either({{q, 1}, {q, 1}, {1, 0}}, {{q + 1, 1}, {q, 1}}))
      return {CaseTag::E, q};
  }
  if (m == 2 && l % 2 == 0) {
    const int q = l / 2;
    Pairs a = {{q, 1}, {1, 0}};
    a.push_back({q - 1, 1});
    if (either(a, {{q, 1}, {q, 1}})) return {CaseTag::F, q};
  }
  return {CaseTag::none, 0};
}

std::vector<std::vector<std::pair<int, int>>> enumerate_class_splits(
    const ClassSpec& c, int l) {
  if (!c.is_diagonalizable())
    throw PreconditionError("splits are defined for diagonalizable classes");
  const auto mults = c.multiplicities();
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> cur(mults.size());
  auto rec = [&](auto&& self, std::size_t k, int remaining) -> void {
    if (k == mults.size()) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    for (int a = 0; a <= std::min(mults[k], remaining); ++a) {
      cur[k] = {a, mults[k] - a};
      self(self, k + 1, remaining - a);
    }
  };
  rec(rec, 0, l);
  return out;
}

std::size_t count_splits(const Instance& inst, int l) {
  std::size_t total = 1;
  for (const auto& c : inst.classes) {
    const std::size_t k = enumerate_class_splits(c, l).size();
    if (k == 0) return 0;
    if (total > std::numeric_limits<std::size_t>::max() / k)
      return std::numeric_limits<std::size_t>::max();
    total *= k;
  }
  return total;
}

std::vector<BlockSplit> enumerate_splits(const Instance& inst, int l,
                                         std::size_t bound) {
  const int n = inst.n();
  if (l < 1 || l > n - 1) return {};
  const std::size_t total = count_splits(inst, l);
  if (total > bound)
    throw BoundExceeded("split enumeration: " + std::to_string(total) +
                        " splits exceed bound " + std::to_string(bound));
  std::vector<std::vector<std::vector<std::pair<int, int>>>> per_class;
  for (const auto& c : inst.classes)
    per_class.push_back(enumerate_class_splits(c, l));

  std::vector<BlockSplit> out;
  out.reserve(total);
  BlockSplit cur;
  cur.l = l;
  cur.parts.resize(inst.classes.size());
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == per_class.size()) {
      out.push_back(cur);
      return;
    }
    for (const auto& choice : per_class[j]) {
      cur.parts[j] = choice;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  return out;
}

BlockSplit parse_split(const Instance& inst, int l, const std::string& text) {
  BlockSplit sp;
  sp.l = l;
  std::istringstream is(text);
  std::string cls;
  std::size_t j = 0;
  while (std::getline(is, cls, ';')) {
    if (j >= inst.classes.size())
      throw ValidationError("split lists more classes than the instance");
    std::vector<std::pair<int, int>> parts;
    std::istringstream cs(cls);
    std::string item;
    std::size_t k = 0;
    while (std::getline(cs, item, ',')) {
      if (k >= inst.classes[j].slots.size())
        throw ValidationError("split of class " + std::to_string(j + 1) +
                              " lists too many eigenvalues");
      int a = 0;
      try {
        a = std::stoi(item);
      } catch (const std::exception&) {
        throw ValidationError("bad split entry '" + item + "'");
      }
      parts.push_back({a, inst.classes[j].slots[k].multiplicity() - a});
      ++k;
    }
    sp.parts.push_back(std::move(parts));
    ++j;
  }
  check_fits(inst, sp);
  return sp;
}

}  // namespace dsp
