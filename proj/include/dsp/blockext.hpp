#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dsp/classes.hpp"

namespace dsp {

/// A two-block decomposition of a tuple of diagonalizable classes: the
/// upper-left block P has size l, the lower-right block R has size n - l.
/// parts[j][k] = (m', m'') splits the multiplicity of slot k of class j.
struct BlockSplit {
  int l = 0;
  std::vector<std::vector<std::pair<int, int>>> parts;

  bool operator==(const BlockSplit&) const = default;
};

enum class CaseTag { none, B, C, D, E, F };
std::string to_string(CaseTag t);

struct ExtReport {
  int l = 0;
  int n = 0;
  std::vector<int> s;
  /// dim Ext^1 between the two diagonal blocks: sum s_j - 2 l (n - l).
  int delta = 0;
  std::vector<int> d1, d2, r1, r2;
  /// Dimension of the trivial-centralizer variety: sum d_j - n^2 + 1.
  int dprime = 0;
  /// Dimension of the block upper-triangular (up to conjugacy) variety.
  int ddprime = 0;
  /// Same, truly block upper-triangular.
  int dtriple = 0;
  CaseTag case_tag = CaseTag::none;
  /// The q of Cases E and F, else 0.
  int case_q = 0;

  /// Class 1 is split with distinct, disjoint eigenvalues in P and R.
  bool class1_disjoint = false;
  /// Each block of size >= 2 satisfies (alpha) and (beta) at its own size.
  /// Advisory stand-in for "trivial centralizer", which is not decidable
  /// from the classes alone.
  bool upper_alpha_beta = false;
  bool lower_alpha_beta = false;
};

/// The instance formed by the P (upper) or R (lower) diagonal blocks.
Instance upper_instance(const Instance& inst, const BlockSplit& sp);
Instance lower_instance(const Instance& inst, const BlockSplit& sp);

/// l (n - l) - sum_i m'_i m''_i for class j.
int s_of_split(const Instance& inst, const BlockSplit& sp, std::size_t j);

/// Throws ValidationError if the split does not fit the instance, and
/// PreconditionError if some class is not diagonalizable.
ExtReport delta_of_split(const Instance& inst, const BlockSplit& sp);

/// Cases B-F (p = 2, l >= n - l >= 2); CaseTag::none otherwise. The second
/// member is q for Cases E and F.
std::pair<CaseTag, int> detect_case_BF(const Instance& inst,
                                       const BlockSplit& sp);

inline constexpr std::size_t kSplitBound = 1'000'000;

/// All ways to put l of the multiplicity of each slot into P, for one class,
/// lexicographic in m'.
std::vector<std::vector<std::pair<int, int>>> enumerate_class_splits(
    const ClassSpec& c, int l);

/// Cartesian product of the per-class splits, class 1 varying slowest.
/// Throws BoundExceeded if more than `bound` splits would be produced.
std::vector<BlockSplit> enumerate_splits(const Instance& inst, int l,
                                         std::size_t bound = kSplitBound);

/// Number of splits enumerate_splits would return (saturating at SIZE_MAX).
std::size_t count_splits(const Instance& inst, int l);

/// Parses "1,1,0,0;1,1;1,0,1": per class (';'-separated), the m' of each
/// slot in file order.
BlockSplit parse_split(const Instance& inst, int l, const std::string& text);

}  // namespace dsp
