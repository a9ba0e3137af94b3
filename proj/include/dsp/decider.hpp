#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsp/blockext.hpp"
#include "dsp/classes.hpp"
#include "dsp/conditions.hpp"
#include "dsp/genericity.hpp"

namespace dsp {

enum class Status {
  NO_TUPLES,
  WEAK_UNSOLVABLE,
  DSP_SOLVABLE,
  DSP_UNSOLVABLE_WEAK_SOLVABLE,
  WEAK_SOLVABLE_DSP_UNKNOWN,
  UNKNOWN,
};
std::string to_string(Status s);

enum class RigidFamily { none, hypergeometric, even, odd, extra };
std::string to_string(RigidFamily f);

/// One applied rule: a stable id, the result it rests on, and the numbers
/// that were checked.
struct TraceEntry {
  std::string rule;
  std::string anchor;
  std::string facts;
};

struct Verdict {
  Status status = Status::UNKNOWN;
  std::vector<TraceEntry> trace;
  DerivedQuantities dq;
  std::optional<int> min_relation_N;
  /// Some bounded search (relations or splits) gave up.
  bool search_unknown = false;

  bool has_rule(const std::string& rule) const;
};

/// Outcome of a sufficient-only obstruction detector.
struct Detection {
  bool found = false;
  /// The detector could not finish within its bounds.
  bool unknown = false;
  std::string detail;
  std::optional<BlockSplit> split;
};

struct DeciderConfig {
  int relation_bound = kGenericityBound;
  std::size_t split_bound = kSplitBound;
};

/// Classes 2..p+1 that are not scalar. Scalar classes contribute d = r = 0
/// and only shift the sum, so the shape-level tests below ignore them.
std::vector<std::size_t> essential_tail(const Instance& inst);

/// p = 2 (after dropping scalar classes), n even >= 4, and classes 2 and 3
/// both correspond to the diagonal JNF (n/2, n/2). Requires Convention 2.
bool detect_case_A(const Instance& inst);

/// Matches the corresponding diagonal JNFs of classes 2 and 3 against the
/// four rigid families (Convention 2, p = 2 after dropping scalars).
RigidFamily classify_rigid_family(const Instance& inst);

/// Reducible-only configuration built on a single 1-relation with
/// r_2 + ... + r_{p+1} = n.
Detection detect_extn1_obstruction(const Instance& inst,
                                   const DeciderConfig& cfg = {});

/// Rigid (kappa = 2) tuple admitting a non-split two-block extension whose
/// blocks are themselves realizable.
Detection detect_rigid_reducible_obstruction(const Instance& inst,
                                             const DeciderConfig& cfg = {});

Verdict verdict(const Instance& inst, const DeciderConfig& cfg = {});

/// Shape-level verdict treating the eigenvalues as generic and the trace
/// condition as satisfied. `jnfs[0]` must be diagonal with distinct
/// eigenvalues.
Verdict shape_verdict(const std::vector<Jnf>& jnfs);

}  // namespace dsp
