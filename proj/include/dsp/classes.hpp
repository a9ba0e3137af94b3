#pragma once

#include <string>
#include <vector>

#include "dsp/partitions.hpp"
#include "dsp/rational.hpp"

namespace dsp {

/// Additive: matrices summing to zero, eigenvalues stored as-is.
/// Multiplicative: matrices with product I, each eigenvalue stored as its
/// log q with sigma = exp(2 pi i q).
enum class Mode { additive, multiplicative };

std::string to_string(Mode m);
Mode parse_mode(const std::string& text);

/// Mode-aware eigenvalue identity. Multiplicative logs are equal when they
/// differ by a real integer.
bool same_eigenvalue(const GaussianRational& a, const GaussianRational& b,
                     Mode mode);

/// One distinct eigenvalue of a class with its Jordan block sizes.
struct EigenSlot {
  GaussianRational value;
  Partition blocks;

  int multiplicity() const { return blocks.weight(); }
  bool operator==(const EigenSlot&) const = default;
};

/// A conjugacy class: exact eigenvalues with their Jordan structure.
/// Slot order is the order given by the user and is preserved.
struct ClassSpec {
  std::vector<EigenSlot> slots;

  int size() const;
  Jnf jnf() const;
  bool is_diagonalizable() const;
  /// A single eigenvalue with only 1x1 blocks.
  bool is_scalar() const;
  /// Eigenvalue multiplicities in slot order.
  std::vector<int> multiplicities() const;

  bool operator==(const ClassSpec&) const = default;
};

/// p+1 classes of a common size n.
struct Instance {
  Mode mode = Mode::additive;
  std::vector<ClassSpec> classes;

  int n() const { return classes.empty() ? 0 : classes.front().size(); }
  int p() const { return static_cast<int>(classes.size()) - 1; }

  bool operator==(const Instance&) const = default;
};

struct DerivedQuantities {
  std::vector<int> d;
  std::vector<int> r;
  int kappa = 0;
  /// Exact sum of all eigenvalues (logs in multiplicative mode) with
  /// multiplicity.
  GaussianRational trace_sum;
  /// Sum is 0 (additive) or a real integer (multiplicative).
  bool trace_ok = false;
  /// Class 1 is diagonal with n distinct eigenvalues.
  bool convention2 = false;

  int sum_d() const;
  /// r_2 + ... + r_{p+1}.
  int sum_r_tail() const;
};

/// Checks the structural invariants and computes the scalar invariants.
/// Throws ValidationError on duplicate eigenvalues within a class, empty
/// classes, fewer than two classes, or size mismatch.
DerivedQuantities validate_instance(const Instance& inst);

/// Whether a sum of eigenvalues (or logs) is the neutral value for the mode:
/// 0 additively, a real integer multiplicatively.
bool is_neutral_sum(const GaussianRational& sum, Mode mode);

/// Reinterprets additive eigenvalues as multiplicative logs. Throws
/// ValidationError when two eigenvalues of one class differ by a nonzero
/// real integer, and PreconditionError if the instance is not additive.
Instance exponentiate_instance(const Instance& inst);

/// A diagonalizable class with the given eigenvalues, each of multiplicity 1
/// unless repeated in `mults`.
ClassSpec make_diagonal_class(const std::vector<GaussianRational>& values,
                              const std::vector<int>& mults = {});

}  // namespace dsp
