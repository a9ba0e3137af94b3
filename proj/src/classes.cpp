#include "dsp/classes.hpp"

#include <algorithm>
#include <numeric>

#include "dsp/errors.hpp"

namespace dsp {

std::string to_string(Mode m) {
  return m == Mode::additive ? "additive" : "multiplicative";
}

Mode parse_mode(const std::string& text) {
  if (text == "additive") return Mode::additive;
  if (text == "multiplicative") return Mode::multiplicative;
  throw ValidationError("unknown mode '" + text +
                        "' (expected additive or multiplicative)");
}

bool same_eigenvalue(const GaussianRational& a, const GaussianRational& b,
                     Mode mode) {
  if (mode == Mode::additive) return a == b;
  return (a - b).is_real_integer();
}

int ClassSpec::size() const {
  int n = 0;
  for (const auto& s : slots) n += s.multiplicity();
  return n;
}

Jnf ClassSpec::jnf() const {
  std::vector<Partition> parts;
  parts.reserve(slots.size());
  for (const auto& s : slots) parts.push_back(s.blocks);
  return Jnf(std::move(parts));
}

bool ClassSpec::is_diagonalizable() const {
  return std::all_of(slots.begin(), slots.end(), [](const EigenSlot& s) {
    return s.blocks.largest() == 1;
  });
}

bool ClassSpec::is_scalar() const {
  return slots.size() == 1 && is_diagonalizable();
}

std::vector<int> ClassSpec::multiplicities() const {
  std::vector<int> m;
  for (const auto& s : slots) m.push_back(s.multiplicity());
  return m;
}

int DerivedQuantities::sum_d() const {
  return std::accumulate(d.begin(), d.end(), 0);
}

int DerivedQuantities::sum_r_tail() const {
  return r.empty() ? 0 : std::accumulate(r.begin() + 1, r.end(), 0);
}

bool is_neutral_sum(const GaussianRational& sum, Mode mode) {
  return mode == Mode::additive ? sum.is_zero() : sum.is_real_integer();
}

DerivedQuantities validate_instance(const Instance& inst) {
  if (inst.classes.size() < 2)
    throw ValidationError("an instance needs at least two classes (p >= 1)");
  const int n = inst.n();
  DerivedQuantities dq;
  for (std::size_t j = 0; j < inst.classes.size(); ++j) {
    const auto& c = inst.classes[j];
    const std::string where = "class " + std::to_string(j + 1);
    if (c.slots.empty()) throw ValidationError(where + " has no eigenvalues");
    for (const auto& s : c.slots)
      if (s.blocks.empty())
        throw ValidationError(where + " has an eigenvalue with no blocks");
    if (c.size() != n)
      throw ValidationError(where + " has size " + std::to_string(c.size()) +
                            ", expected " + std::to_string(n));
    for (std::size_t a = 0; a < c.slots.size(); ++a)
      for (std::size_t b = a + 1; b < c.slots.size(); ++b)
        if (same_eigenvalue(c.slots[a].value, c.slots[b].value, inst.mode))
          throw ValidationError(where + " repeats eigenvalue " +
                                to_string(c.slots[a].value) +
                                (inst.mode == Mode::multiplicative
                                     ? " (logs equal modulo integers)"
                                     : ""));
    const Jnf j_nf = c.jnf();
    dq.d.push_back(d_of_jnf(j_nf));
    dq.r.push_back(r_of_jnf(j_nf));
    for (const auto& s : c.slots) dq.trace_sum += s.value * s.multiplicity();
  }
  dq.kappa = 2 * n * n - dq.sum_d();
  dq.trace_ok = is_neutral_sum(dq.trace_sum, inst.mode);
  const auto& first = inst.classes.front();
  dq.convention2 = first.is_diagonalizable() &&
                   static_cast<int>(first.slots.size()) == n;
  return dq;
}

Instance exponentiate_instance(const Instance& inst) {
  if (inst.mode != Mode::additive)
    throw PreconditionError("exponentiate_instance needs an additive instance");
  Instance out = inst;
  out.mode = Mode::multiplicative;
  for (std::size_t j = 0; j < out.classes.size(); ++j) {
    const auto& slots = out.classes[j].slots;
    for (std::size_t a = 0; a < slots.size(); ++a)
      for (std::size_t b = a + 1; b < slots.size(); ++b)
        if (same_eigenvalue(slots[a].value, slots[b].value,
                            Mode::multiplicative))
          throw ValidationError(
              "class " + std::to_string(j + 1) + ": eigenvalues " +
              to_string(slots[a].value) + " and " + to_string(slots[b].value) +
              " collide under exponentiation");
  }
  return out;
}

ClassSpec make_diagonal_class(const std::vector<GaussianRational>& values,
                              const std::vector<int>& mults) {
  ClassSpec c;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const int m = mults.empty() ? 1 : mults.at(k);
    c.slots.push_back({values[k], Partition(std::vector<int>(m, 1))});
  }
  return c;
}

}  // namespace dsp
