#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dsp/classes.hpp"

namespace dsp {

inline constexpr int kGenericityBound = 10;

/// An N-relation: from each class, a choice of N eigenvalues counted with
/// multiplicity whose total is 0 (additive) or an integer (multiplicative
/// logs). picks[j][k] is how many copies of slot k of class j are chosen.
struct RelationWitness {
  int N = 0;
  std::vector<std::vector<int>> picks;
  GaussianRational target;

  bool operator==(const RelationWitness&) const = default;
};

/// All N-relations, ordered lexicographically by picks (class 1 first).
/// Requires 1 <= N < n and n <= bound.
std::vector<RelationWitness> enumerate_relations(const Instance& inst, int N,
                                                 int bound = kGenericityBound);

/// Calls `visit` for each N-relation in enumeration order until it returns
/// false. Returns the number visited.
std::size_t for_each_relation(
    const Instance& inst, int N,
    const std::function<bool(const RelationWitness&)>& visit,
    int bound = kGenericityBound);

/// Smallest N in 1..n-1 admitting a relation; nullopt when the eigenvalues
/// are generic.
std::optional<int> min_relation_N(const Instance& inst,
                                  int bound = kGenericityBound);

/// No relation with N < k.
bool is_k_generic(const Instance& inst, int k, int bound = kGenericityBound);
bool is_generic(const Instance& inst, int bound = kGenericityBound);

/// The relation obtained by taking complementary picks in every class.
RelationWitness complement(const Instance& inst, const RelationWitness& rel);

}  // namespace dsp
