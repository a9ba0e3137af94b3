#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dsp/classes.hpp"
#include "dsp/decider.hpp"

namespace dsp {

inline constexpr int kCensusMaxN = 8;
inline constexpr int kCensusMaxP = 4;

/// Class 1 is (1,...,1); classes 2..p+1 run over multisets of partitions of
/// n, each list non-increasing in all_partitions order. Deterministic.
std::vector<std::vector<MultiplicityVector>> enumerate_mv_tuples(int n, int p);

/// A diagonalizable instance with the given multiplicity vectors and
/// placeholder eigenvalues 0, 1, 2, ... per class (shape-level use only).
Instance shape_instance(const std::vector<MultiplicityVector>& mvs,
                        Mode mode = Mode::additive);

struct CensusRow {
  int n = 0;
  int p = 0;
  Mode mode = Mode::additive;
  std::string signature;
  bool alpha = false;
  bool beta = false;
  int kappa = 0;
  bool case_A = false;
  RigidFamily family = RigidFamily::none;
  Status status = Status::UNKNOWN;
};

/// One row per MV tuple; verdicts assume generic eigenvalues. Throws
/// BoundExceeded beyond n = 8 or p = 4.
std::vector<CensusRow> run_census(int n, int p, Mode mode = Mode::additive);

/// Tab-separated with a header row and LF line endings.
void write_census_tsv(std::ostream& os, const std::vector<CensusRow>& rows);

std::string signature(const std::vector<MultiplicityVector>& mvs);

}  // namespace dsp
