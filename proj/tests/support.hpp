#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "dsp/classes.hpp"
#include "dsp/instance_io.hpp"
#include "dsp/partitions.hpp"

namespace dsp::test {

inline Rational q(const std::string& s) { return parse_rational(s); }

inline GaussianRational gq(const std::string& s) { return {q(s)}; }

/// Diagonal class from rational strings; repeated entries in `mults`.
inline ClassSpec diag(std::initializer_list<const char*> values,
                      std::vector<int> mults = {}) {
  std::vector<GaussianRational> v;
  for (const char* s : values) v.push_back(gq(s));
  return make_diagonal_class(v, mults);
}

inline Instance make_instance(Mode mode, std::vector<ClassSpec> classes) {
  Instance inst;
  inst.mode = mode;
  inst.classes = std::move(classes);
  return inst;
}

inline std::string data_path(const std::string& name) {
  return std::string(DSP_DATA_DIR) + "/" + name;
}

inline Instance load(const std::string& name) {
  return load_instance(data_path(name));
}

inline Jnf jnf(std::initializer_list<std::initializer_list<int>> slots) {
  std::vector<Partition> ps;
  for (const auto& s : slots) ps.emplace_back(std::vector<int>(s));
  return Jnf(std::move(ps));
}

/// A random partition of n by repeated random cuts.
inline Partition random_partition(int n, std::mt19937_64& rng) {
  std::vector<int> parts;
  while (n > 0) {
    std::uniform_int_distribution<int> pick(1, n);
    const int x = pick(rng);
    parts.push_back(x);
    n -= x;
  }
  return Partition(parts);
}

/// A random JNF of size n: a random MV, each multiplicity split into blocks.
inline Jnf random_jnf(int n, std::mt19937_64& rng) {
  std::vector<Partition> slots;
  const Partition mv = random_partition(n, rng);
  for (int m : mv.parts()) slots.push_back(random_partition(m, rng));
  return Jnf(std::move(slots));
}

/// Random instance with small eigenvalues (so relations are common) and the
/// trace condition forced by shifting the last class.
inline Instance random_trace_ok(int n, int classes, Mode mode, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, mode == Mode::additive ? 2 : 4);
  Instance inst;
  inst.mode = mode;
  Rational total = 0;
  for (int j = 0; j < classes; ++j) {
    const Partition p = random_partition(n, rng);
    std::vector<GaussianRational> v;
    while (v.size() < p.length()) {
      const Rational x(num(rng), den(rng));
      const GaussianRational z(x);
      const bool fresh = std::none_of(v.begin(), v.end(), [&](const auto& y) {
        return same_eigenvalue(y, z, mode);
      });
      if (fresh) v.push_back(z);
    }
    for (std::size_t k = 0; k < v.size(); ++k) total += v[k].re * p.parts()[k];
    inst.classes.push_back(make_diagonal_class(v, p.parts()));
  }
  const Rational shift = -total / n;
  for (auto& s : inst.classes.back().slots) s.value.re += shift;
  return inst;
}

}  // namespace dsp::test
