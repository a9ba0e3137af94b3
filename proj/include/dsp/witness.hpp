#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dsp/blockext.hpp"
#include "dsp/classes.hpp"

namespace dsp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Floating-point witness matrices A_j (or M_j) with where they came from.
struct NumericMatrixTuple {
  Mode mode = Mode::additive;
  std::vector<Matrix> matrices;
  std::uint64_t seed = 0;
  int restart = -1;
  int iterations = 0;

  int n() const {
    return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows());
  }
};

struct RealizationConfig {
  /// Relative residual threshold for the sum / product condition.
  double tol_sum = 1e-10;
  /// Singular values below tol_rank * sigma_max count as zero.
  double tol_rank = 1e-7;
  /// Eigenvalue matching tolerance.
  double tol_eig = 1e-6;
  int restarts = 32;
  int max_iterations = 5000;
  /// A restart is abandoned once a conjugator is worse conditioned.
  double condition_guard = 1e6;
  std::uint64_t rng_seed = 0;
  /// Only accept tuples generating the full matrix algebra.
  bool require_irreducible = false;
  /// Only accept tuples with scalar centralizer.
  bool require_trivial_centralizer = false;
  /// Restarts run in batches of this many threads.
  unsigned threads = 1;

  /// Throws ValidationError if some tolerance or count is not positive.
  void validate() const;
};

struct RealizationReport {
  double residual = 0;
  std::vector<double> membership_distance;
  std::vector<bool> member;
  int algebra_dimension = 0;
  int centralizer_dimension = 0;
  bool converged = false;

  bool all_members() const;
};

/// exp(2 pi i q) in multiplicative mode, the value itself otherwise.
Complex numeric_eigenvalue(const GaussianRational& value, Mode mode);

/// Block-diagonal Jordan matrix of the class (upper Jordan blocks, slots in
/// order).
Matrix jnf_seed_matrix(const ClassSpec& c, Mode mode);

/// ||sum A_j||_F / max(1, max_j ||A_j||_F) additively,
/// ||M_1 ... M_{p+1} - I||_F multiplicatively.
double residual(const NumericMatrixTuple& t);

/// Squared residual of the tuple G_j D_j G_j^{-1} as a function of the
/// conjugators G_j, with its analytic gradient. The gradient is returned as
/// complex matrices whose real/imaginary parts are the partial derivatives
/// with respect to the real/imaginary parts of G_j.
class ConjugationObjective {
public:
  ConjugationObjective(std::vector<Matrix> seeds, Mode mode);

  double value(const std::vector<Matrix>& conjugators) const;
  /// `mats`, when given, receives the conjugated matrices.
  double value_and_gradient(const std::vector<Matrix>& conjugators,
                            std::vector<Matrix>& gradient,
                            std::vector<Matrix>* mats = nullptr) const;
  std::vector<Matrix> matrices(const std::vector<Matrix>& conjugators) const;
  /// Damped Gauss-Newton step dG_j = X_j G_j, where X minimizes
  /// ||E + J X||^2 + damping ||X||^2 for the linearization dA_j = [X_j, A_j].
  /// damping is relative to the mean diagonal of J J^H. A descent direction
  /// for value() whenever the gradient is nonzero.
  std::vector<Matrix> gauss_newton_direction(
      const std::vector<Matrix>& conjugators, const std::vector<Matrix>& mats,
      double damping) const;

  Mode mode() const { return mode_; }
  const std::vector<Matrix>& seeds() const { return seeds_; }

private:
  std::vector<Matrix> seeds_;
  Mode mode_;
};

/// Result of one descent run from one random start.
struct RestartOutcome {
  int restart = 0;
  bool converged = false;
  bool guard_tripped = false;
  double residual = 0;
  int iterations = 0;
  NumericMatrixTuple tuple;
};

/// Seed used by restart k: a deterministic function of (rng_seed, k).
std::uint64_t restart_seed(std::uint64_t rng_seed, int restart);

/// One gradient-descent run over the conjugators. Requires the trace
/// condition.
RestartOutcome run_restart(const Instance& inst, const RealizationConfig& cfg,
                           int restart);

struct FindResult {
  bool found = false;
  std::optional<NumericMatrixTuple> tuple;
  RealizationReport report;
  int restarts_tried = 0;
  /// Why nothing was accepted; "not found at this budget" style text.
  std::string failure;
};

/// Searches for A_j in c_j with zero sum (M_j in C_j with product I).
/// The lowest-index accepted restart wins, independent of threading.
/// Throws PreconditionError if the trace condition fails.
FindResult find_tuple(const Instance& inst, const RealizationConfig& cfg);

/// Distance between the spectrum of m and that of c: eigenvalues are
/// assigned to the nearest class eigenvalue and each cluster mean is
/// compared. Infinity when the cluster sizes do not match multiplicities.
double membership_distance(const Matrix& m, const ClassSpec& c, Mode mode);

/// Eigenvalues match within tol_eig and rank (m - lambda I)^k equals the
/// Jordan-structure value for every eigenvalue and every k up to one past
/// the largest block.
bool membership_check(const Matrix& m, const ClassSpec& c, Mode mode,
                      const RealizationConfig& cfg);

/// Numerical rank with cutoff tol_rank * max(sigma_max, scale). Pass the
/// magnitude the matrix was computed from so pure roundoff has rank 0.
int numeric_rank(const Matrix& m, double tol_rank, double scale = 0);

/// Dimension of the unital algebra generated by the matrices.
int irreducibility_check(const NumericMatrixTuple& t,
                         const RealizationConfig& cfg);
int algebra_dimension(const std::vector<Matrix>& mats, double tol_rank);

/// Dimension of {X : A_j X = X A_j for all j}.
int centralizer_dimension(const NumericMatrixTuple& t,
                          const RealizationConfig& cfg);
int centralizer_dimension(const std::vector<Matrix>& mats, double tol_rank);

/// Rank decisions inside use the cutoff max(tol_rank, sqrt(residual)).
RealizationReport verify(const Instance& inst, const NumericMatrixTuple& t,
                         const RealizationConfig& cfg);

/// [[P_j, Q_j], [0, R_j]] for each j.
NumericMatrixTuple assemble_block_triangular(const NumericMatrixTuple& upper,
                                             const NumericMatrixTuple& lower,
                                             const std::vector<Matrix>& q);

/// Block upper-triangular tuple with the given diagonal blocks and
/// off-diagonal blocks Q_j chosen in the extension space modulo
/// coboundaries, so the extension does not split. Works in both modes.
/// Throws PreconditionError when delta < 1 at the split and
/// ValidationError when the blocks do not fit the split.
NumericMatrixTuple build_semidirect(const Instance& inst, const BlockSplit& sp,
                                    const NumericMatrixTuple& upper,
                                    const NumericMatrixTuple& lower,
                                    const RealizationConfig& cfg);

/// Convenience: realize both blocks of the split with find_tuple
/// (irreducible when of size >= 2) and glue them with build_semidirect.
FindResult realize_semidirect(const Instance& inst, const BlockSplit& sp,
                              const RealizationConfig& cfg);

}  // namespace dsp
