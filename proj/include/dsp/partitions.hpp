#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace dsp {

/// An integer partition, parts stored weakly decreasing.
class Partition {
public:
  Partition() = default;
  /// Sorts the parts; throws std::invalid_argument on a non-positive part.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const;
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }

  auto operator<=>(const Partition&) const = default;

private:
  std::vector<int> parts_;
};

/// Eigenvalue multiplicities of a diagonal JNF. Zero entries are dropped and
/// the rest kept weakly decreasing, so equality is up to permutation.
class MultiplicityVector {
public:
  MultiplicityVector() = default;
  explicit MultiplicityVector(std::vector<int> mults);

  const std::vector<int>& mults() const { return mults_; }
  int size() const;

  auto operator<=>(const MultiplicityVector&) const = default;

private:
  std::vector<int> mults_;
};

/// Jordan normal form: one block-size partition per distinct eigenvalue.
/// Slots are kept in a canonical order, so two Jnf values compare equal
/// exactly when they agree up to relabelling the eigenvalues.
class Jnf {
public:
  Jnf() = default;
  explicit Jnf(std::vector<Partition> slots);

  /// The diagonal JNF with the given multiplicities.
  static Jnf diagonal(const MultiplicityVector& mv);

  const std::vector<Partition>& slots() const { return slots_; }
  int size() const;
  bool is_diagonal() const;

  auto operator<=>(const Jnf&) const = default;

private:
  std::vector<Partition> slots_;
};

Partition dual_partition(const Partition& p);

/// Union over eigenvalue slots of the dual partitions.
MultiplicityVector corresponding_diagonal(const Jnf& j);

inline constexpr int kCorrespondingJnfBound = 12;

/// Every JNF of size mv.size() whose corresponding diagonal JNF is mv.
/// Throws BoundExceeded when the size is above `bound`.
std::vector<Jnf> corresponding_jnfs(const MultiplicityVector& mv,
                                    int bound = kCorrespondingJnfBound);

/// n minus the largest number of Jordan blocks sharing an eigenvalue.
int r_of_jnf(const Jnf& j);

/// Orbit dimension, n^2 minus the centralizer dimension
/// sum_slots sum_{i,i'} min(b_i, b_i').
int d_of_jnf(const Jnf& j);

bool is_regular(const Jnf& j);

/// All partitions of n, in reverse lexicographic order ((n) first).
std::vector<Partition> all_partitions(int n);

/// All JNFs of size n (as canonical values), deterministic order.
std::vector<Jnf> all_jnfs(int n);

std::string to_string(const Partition& p);
std::string to_string(const MultiplicityVector& mv);
/// Braced notation, e.g. {{3,2},{7,6,1}}.
std::string to_string(const Jnf& j);

/// Parses "3,2,1" into a partition.
Partition parse_partition(const std::string& text);
/// Parses "3,2;7,6,1" or the printed form "{{3,2},{7,6,1}}".
Jnf parse_jnf(const std::string& text);

std::ostream& operator<<(std::ostream& os, const Partition& p);
std::ostream& operator<<(std::ostream& os, const MultiplicityVector& mv);
std::ostream& operator<<(std::ostream& os, const Jnf& j);

}  // namespace dsp
