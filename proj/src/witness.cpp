#include "dsp/witness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "dsp/errors.hpp"

namespace dsp {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXcd vec(const Matrix& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Matrix unvec(const Eigen::VectorXcd& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

// Real inner product on tuples of complex matrices.
double inner(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    s += (a[j].array().conjugate() * b[j].array()).sum().real();
  return s;
}

// Orthonormal basis of the column range, cutoff relative to max(sigma_max,
// floor).
Matrix range_basis(const Matrix& m, double tol, double floor = 0) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(sv.size() ? sv(0) : 0.0, floor);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

Matrix null_basis(const Matrix& m, double tol) {
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol * (sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

double condition_number(const Matrix& g) {
  Eigen::JacobiSVD<Matrix> svd(g);
  const auto& sv = svd.singularValues();
  const double lo = sv(sv.size() - 1);
  return lo > 0 ? sv(0) / lo : std::numeric_limits<double>::infinity();
}

Matrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) g(i, k) = Complex(normal(rng), normal(rng));
  return g;
}

}  // namespace

void RealizationConfig::validate() const {
  if (!(tol_sum > 0) || !(tol_rank > 0) || !(tol_eig > 0) ||
      !(condition_guard > 0))
    throw ValidationError("realization tolerances must be positive");
  if (restarts < 1 || max_iterations < 1 || threads < 1)
    throw ValidationError("restarts, iterations and threads must be positive");
}

bool RealizationReport::all_members() const {
  return std::all_of(member.begin(), member.end(), [](bool b) { return b; });
}

Complex numeric_eigenvalue(const GaussianRational& value, Mode mode) {
  const Complex z = value.to_complex();
  if (mode == Mode::additive) return z;
  // Reduce the real part modulo 1 before exponentiating.
  const Rational frac = value.re - Rational(boost::multiprecision::numerator(
                                                value.re) /
                                            boost::multiprecision::denominator(
                                                value.re));
  const double re = frac.convert_to<double>();
  return std::exp(Complex(0, 2 * std::numbers::pi) * Complex(re, z.imag()));
}

Matrix jnf_seed_matrix(const ClassSpec& c, Mode mode) {
  const int n = c.size();
  Matrix m = Matrix::Zero(n, n);
  int at = 0;
  for (const auto& slot : c.slots) {
    const Complex lambda = numeric_eigenvalue(slot.value, mode);
    for (int b : slot.blocks.parts()) {
      for (int i = 0; i < b; ++i) {
        m(at + i, at + i) = lambda;
        if (i + 1 < b) m(at + i, at + i + 1) = 1.0;
      }
      at += b;
    }
  }
  return m;
}

double residual(const NumericMatrixTuple& t) {
  if (t.matrices.empty()) return 0;
  const auto n = t.matrices.front().rows();
  if (t.mode == Mode::additive) {
    Matrix sum = Matrix::Zero(n, n);
    double scale = 1;
    for (const auto& a : t.matrices) {
      sum += a;
      scale = std::max(scale, a.norm());
    }
    return sum.norm() / scale;
  }
  Matrix prod = Matrix::Identity(n, n);
  for (const auto& m : t.matrices) prod = prod * m;
  return (prod - Matrix::Identity(n, n)).norm();
}

ConjugationObjective::ConjugationObjective(std::vector<Matrix> seeds, Mode mode)
    : seeds_(std::move(seeds)), mode_(mode) {}

std::vector<Matrix> ConjugationObjective::matrices(
    const std::vector<Matrix>& g) const {
  std::vector<Matrix> out;
  out.reserve(seeds_.size());
  for (std::size_t j = 0; j < seeds_.size(); ++j)
    out.push_back(g[j] * seeds_[j] * g[j].partialPivLu().inverse());
  return out;
}

double ConjugationObjective::value(const std::vector<Matrix>& g) const {
  const auto mats = matrices(g);
  const auto n = seeds_.front().rows();
  Matrix e;
  if (mode_ == Mode::additive) {
    e = Matrix::Zero(n, n);
    for (const auto& a : mats) e += a;
  } else {
    e = Matrix::Identity(n, n);
    for (const auto& m : mats) e = e * m;
    e -= Matrix::Identity(n, n);
  }
  return e.squaredNorm();
}

double ConjugationObjective::value_and_gradient(
    const std::vector<Matrix>& g, std::vector<Matrix>& grad,
    std::vector<Matrix>* mats_out) const {
  const std::size_t k = seeds_.size();
  const auto n = seeds_.front().rows();
  std::vector<Matrix> inv(k), a(k);
  for (std::size_t j = 0; j < k; ++j) {
    inv[j] = g[j].partialPivLu().inverse();
    a[j] = g[j] * seeds_[j] * inv[j];
  }
  grad.assign(k, Matrix());
  double f = 0;
  // f = ||E||^2; df = 2 Re tr(B_j dA_j) with dA_j = [dG_j G_j^{-1}, A_j],
  // so the gradient in G_j is 2 (G_j^{-1} [A_j, B_j])^H.
  if (mode_ == Mode::additive) {
    Matrix e = Matrix::Zero(n, n);
    for (const auto& x : a) e += x;
    f = e.squaredNorm();
    const Matrix b = e.adjoint();
    for (std::size_t j = 0; j < k; ++j)
      grad[j] = 2.0 * (inv[j] * (a[j] * b - b * a[j])).adjoint();
  } else {
    std::vector<Matrix> prefix(k + 1), suffix(k + 1);
    prefix[0] = Matrix::Identity(n, n);
    for (std::size_t j = 0; j < k; ++j) prefix[j + 1] = prefix[j] * a[j];
    suffix[k] = Matrix::Identity(n, n);
    for (std::size_t j = k; j-- > 0;) suffix[j] = a[j] * suffix[j + 1];
    const Matrix e = prefix[k] - Matrix::Identity(n, n);
    f = e.squaredNorm();
    const Matrix eh = e.adjoint();
    for (std::size_t j = 0; j < k; ++j) {
      const Matrix b = suffix[j + 1] * eh * prefix[j];
      grad[j] = 2.0 * (inv[j] * (a[j] * b - b * a[j])).adjoint();
    }
  }
  if (mats_out) *mats_out = std::move(a);
  return f;
}

std::vector<Matrix> ConjugationObjective::gauss_newton_direction(
    const std::vector<Matrix>& g, const std::vector<Matrix>& a,
    double damping) const {
  const std::size_t k = seeds_.size();
  const auto n = seeds_.front().rows();
  const auto n2 = n * n;
  const Matrix id = Matrix::Identity(n, n);
  // vec(X A - A X) = (A^T (x) I - I (x) A) vec X.
  Matrix jac(n2, n2 * static_cast<Eigen::Index>(k));
  Matrix e;
  if (mode_ == Mode::additive) {
    e = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < k; ++j) {
      e += a[j];
      jac.middleCols(j * n2, n2) =
          kron(a[j].transpose(), id) - kron(id, a[j]);
    }
  } else {
    std::vector<Matrix> prefix(k + 1), suffix(k + 1);
    prefix[0] = id;
    for (std::size_t j = 0; j < k; ++j) prefix[j + 1] = prefix[j] * a[j];
    suffix[k] = id;
    for (std::size_t j = k; j-- > 0;) suffix[j] = a[j] * suffix[j + 1];
    e = prefix[k] - id;
    // vec(L M R) = (R^T (x) L) vec M.
    for (std::size_t j = 0; j < k; ++j)
      jac.middleCols(j * n2, n2) =
          kron(suffix[j + 1].transpose(), prefix[j]) *
          (kron(a[j].transpose(), id) - kron(id, a[j]));
  }
  Matrix gram = jac * jac.adjoint();
  const double mean_diag = gram.diagonal().real().mean();
  gram.diagonal().array() += damping * std::max(mean_diag, 1e-300);
  const Eigen::VectorXcd y = gram.ldlt().solve(-vec(e));
  const Eigen::VectorXcd x = jac.adjoint() * y;
  std::vector<Matrix> dir(k);
  for (std::size_t j = 0; j < k; ++j)
    dir[j] = unvec(x.segment(j * n2, n2), n, n) * g[j];
  return dir;
}

std::uint64_t restart_seed(std::uint64_t rng_seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed),
                    static_cast<std::uint32_t>(rng_seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

constexpr int kPolishSteps = 40;
constexpr int kStallSteps = 500;

RestartOutcome run_restart(const Instance& inst, const RealizationConfig& cfg,
                           int restart) {
  const int n = inst.n();
  std::vector<Matrix> seeds;
  for (const auto& c : inst.classes)
    seeds.push_back(jnf_seed_matrix(c, inst.mode));
  const ConjugationObjective obj(seeds, inst.mode);

  RestartOutcome out;
  out.restart = restart;
  out.tuple.mode = inst.mode;
  out.tuple.restart = restart;
  out.tuple.seed = restart_seed(cfg.rng_seed, restart);
  std::mt19937_64 rng(out.tuple.seed);

  const std::size_t k = seeds.size();
  std::vector<Matrix> g(k);
  for (auto& x : g) {
    x = random_matrix(n, rng);
    x *= std::sqrt(double(n)) / x.norm();
  }

  auto rel_residual = [&](double f, const std::vector<Matrix>& mats) {
    if (inst.mode == Mode::multiplicative) return std::sqrt(f);
    double scale = 1;
    for (const auto& m : mats) scale = std::max(scale, m.norm());
    return std::sqrt(f) / scale;
  };

  std::vector<Matrix> grad, mats, trial(k), trial_grad, trial_mats;
  double f = obj.value_and_gradient(g, grad, &mats);
  double mu = 1e-2;
  int it = 0;
  // Past tol_sum keep stepping while the residual still drops fast. Near a
  // reducible tuple the residual is quadratic in the distance to it, so rank
  // decisions need the residual well below tol_sum.
  int polish = 0;
  double prev_f = std::numeric_limits<double>::infinity();
  double best_f = prev_f;
  int best_it = 0;
  for (; it < cfg.max_iterations; ++it) {
    out.residual = rel_residual(f, mats);
    if (out.residual <= cfg.tol_sum) {
      out.converged = true;
      if (++polish > kPolishSteps || f > 0.9 * prev_f) break;
    }
    prev_f = f;
    // Give up on a restart stuck in a local minimum.
    if (f < 0.5 * best_f) {
      best_f = f;
      best_it = it;
    } else if (it - best_it > kStallSteps) {
      break;
    }
    if (it % 25 == 0) {
      bool bad = false;
      for (auto& x : g) {
        if (condition_number(x) > cfg.condition_guard) bad = true;
        x *= std::sqrt(double(n)) / x.norm();
      }
      if (bad) {
        out.guard_tripped = true;
        break;
      }
      f = obj.value_and_gradient(g, grad, &mats);
    }
    // Armijo backtracking along the damped Gauss-Newton direction, or
    // along the negative gradient when that direction is not descending.
    std::vector<Matrix> dir = obj.gauss_newton_direction(g, mats, mu);
    double slope = inner(grad, dir);
    if (!(slope < 0)) {
      dir = grad;
      for (auto& d : dir) d = -d;
      slope = -inner(grad, grad);
    }
    bool accepted = false;
    double ft = 0;
    double step = 1;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t j = 0; j < k; ++j) trial[j] = g[j] + step * dir[j];
      ft = obj.value_and_gradient(trial, trial_grad, &trial_mats);
      if (std::isfinite(ft) && ft <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    mu = step == 1 ? std::max(mu / 3, 1e-12) : std::min(mu * 4, 1e6);
    std::swap(g, trial);
    std::swap(grad, trial_grad);
    std::swap(mats, trial_mats);
    f = ft;
  }
  if (!out.converged) out.residual = rel_residual(f, mats);
  out.iterations = it;
  out.tuple.iterations = it;
  out.tuple.matrices = std::move(mats);
  return out;
}

double membership_distance(const Matrix& m, const ClassSpec& c, Mode mode) {
  const auto n = m.rows();
  if (n != c.size()) return std::numeric_limits<double>::infinity();
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  const auto& ev = es.eigenvalues();
  std::vector<Complex> target;
  for (const auto& s : c.slots) target.push_back(numeric_eigenvalue(s.value, mode));
  std::vector<Complex> sum(target.size(), 0.0);
  std::vector<int> count(target.size(), 0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < target.size(); ++k)
      if (std::abs(ev(i) - target[k]) < std::abs(ev(i) - target[best]))
        best = k;
    sum[best] += ev(i);
    ++count[best];
  }
  double dist = 0;
  for (std::size_t k = 0; k < target.size(); ++k) {
    if (count[k] != c.slots[k].multiplicity())
      return std::numeric_limits<double>::infinity();
    dist = std::max(dist, std::abs(sum[k] / double(count[k]) - target[k]));
  }
  return dist;
}

int numeric_rank(const Matrix& m, double tol_rank, double scale) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double cut = tol_rank * std::max(sv(0), scale);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return rank;
}

bool membership_check(const Matrix& m, const ClassSpec& c, Mode mode,
                      const RealizationConfig& cfg) {
  if (m.rows() != c.size() || m.cols() != c.size()) return false;
  if (!(membership_distance(m, c, mode) <= cfg.tol_eig)) return false;
  const int n = c.size();
  const Matrix id = Matrix::Identity(n, n);
  // Ranks of (m - lambda I)^k are constant from one past the largest block
  // on, so checking up to there covers every k <= n.
  for (const auto& slot : c.slots) {
    const Complex lambda = numeric_eigenvalue(slot.value, mode);
    const Matrix shifted = m - lambda * id;
    // Roundoff in the shift is relative to the unshifted magnitudes.
    const double base = std::max(m.norm(), std::abs(lambda));
    double scale = 1;
    Matrix power = id;
    const int last = std::min(slot.blocks.largest() + 1, n);
    for (int k = 1; k <= last; ++k) {
      power = power * shifted;
      scale *= base;
      int expected = n;
      for (int b : slot.blocks.parts()) expected -= std::min(b, k);
      if (numeric_rank(power, cfg.tol_rank, scale) != expected) return false;
    }
  }
  return true;
}

int algebra_dimension(const std::vector<Matrix>& mats, double tol_rank) {
  if (mats.empty()) return 0;
  const auto n = mats.front().rows();
  const auto full = n * n;
  std::vector<Matrix> gens;
  for (const auto& a : mats) {
    const double nrm = a.norm();
    if (nrm > 0) gens.push_back(a / nrm);
  }
  std::vector<Eigen::VectorXcd> basis;
  std::vector<Matrix> queue;
  const Matrix id = Matrix::Identity(n, n);
  basis.push_back(vec(id) / std::sqrt(double(n)));
  queue.push_back(id / std::sqrt(double(n)));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    if (static_cast<Eigen::Index>(basis.size()) == full) break;
    for (const auto& a : gens) {
      Eigen::VectorXcd w = vec(a * queue[head]);
      const double nrm = w.norm();
      if (nrm == 0) continue;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) w -= b.dot(w) * b;
      if (w.norm() > tol_rank * nrm) {
        w.normalize();
        basis.push_back(w);
        queue.push_back(unvec(w, n, n));
        if (static_cast<Eigen::Index>(basis.size()) == full) break;
      }
    }
  }
  return static_cast<int>(basis.size());
}

int irreducibility_check(const NumericMatrixTuple& t,
                         const RealizationConfig& cfg) {
  return algebra_dimension(t.matrices, cfg.tol_rank);
}

int centralizer_dimension(const std::vector<Matrix>& mats, double tol_rank) {
  if (mats.empty()) return 0;
  const auto n = mats.front().rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix k(static_cast<Eigen::Index>(mats.size()) * n * n, n * n);
  double scale = 0;
  for (std::size_t j = 0; j < mats.size(); ++j) {
    k.middleRows(static_cast<Eigen::Index>(j) * n * n, n * n) =
        kron(id, mats[j]) - kron(mats[j].transpose(), id);
    scale = std::max(scale, mats[j].norm());
  }
  Eigen::JacobiSVD<Matrix> svd(k);
  const auto& sv = svd.singularValues();
  const double cut = tol_rank * std::max(sv(0), scale);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return static_cast<int>(n * n) - rank;
}

int centralizer_dimension(const NumericMatrixTuple& t,
                          const RealizationConfig& cfg) {
  return centralizer_dimension(t.matrices, cfg.tol_rank);
}

RealizationReport verify(const Instance& inst, const NumericMatrixTuple& t,
                         const RealizationConfig& cfg) {
  if (t.matrices.size() != inst.classes.size())
    throw ValidationError("tuple and instance have different lengths");
  RealizationReport rep;
  rep.residual = residual(t);
  rep.converged = rep.residual <= cfg.tol_sum;
  for (std::size_t j = 0; j < inst.classes.size(); ++j) {
    rep.membership_distance.push_back(
        membership_distance(t.matrices[j], inst.classes[j], inst.mode));
    rep.member.push_back(
        membership_check(t.matrices[j], inst.classes[j], inst.mode, cfg));
  }
  // A tuple with residual r only pins down a solution to within about
  // sqrt(r), so smaller singular values cannot be told from zero.
  const double rank_tol = std::max(cfg.tol_rank, std::sqrt(rep.residual));
  rep.algebra_dimension = algebra_dimension(t.matrices, rank_tol);
  rep.centralizer_dimension = centralizer_dimension(t.matrices, rank_tol);
  return rep;
}

namespace {

bool acceptable(const RealizationReport& rep, const RealizationConfig& cfg,
                int n) {
  if (!rep.converged || !rep.all_members()) return false;
  if (cfg.require_irreducible && rep.algebra_dimension != n * n) return false;
  if (cfg.require_trivial_centralizer && rep.centralizer_dimension != 1)
    return false;
  return true;
}

}  // namespace

FindResult find_tuple(const Instance& inst, const RealizationConfig& cfg) {
  cfg.validate();
  const auto dq = validate_instance(inst);
  if (!dq.trace_ok)
    throw PreconditionError(
        "trace condition fails: no tuple can satisfy the sum/product relation");
  const int n = inst.n();
  FindResult res;

  if (n == 1) {
    NumericMatrixTuple t;
    t.mode = inst.mode;
    t.restart = 0;
    for (const auto& c : inst.classes)
      t.matrices.push_back(jnf_seed_matrix(c, inst.mode));
    res.report = verify(inst, t, cfg);
    res.restarts_tried = 0;
    res.found = acceptable(res.report, cfg, n);
    res.tuple = std::move(t);
    if (!res.found) res.failure = "scalar tuple fails verification";
    return res;
  }

  int converged = 0, guard = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int first = 0; first < cfg.restarts;
       first += static_cast<int>(cfg.threads)) {
    const int last = std::min(cfg.restarts, first + static_cast<int>(cfg.threads));
    std::vector<std::future<RestartOutcome>> jobs;
    for (int r = first; r < last; ++r)
      jobs.push_back(std::async(cfg.threads > 1 ? std::launch::async
                                                : std::launch::deferred,
                                [&inst, &cfg, r] {
                                  return run_restart(inst, cfg, r);
                                }));
    for (auto& job : jobs) {
      RestartOutcome out = job.get();
      ++res.restarts_tried;
      best = std::min(best, out.residual);
      if (out.guard_tripped) ++guard;
      if (!out.converged) continue;
      ++converged;
      auto rep = verify(inst, out.tuple, cfg);
      if (acceptable(rep, cfg, n)) {
        res.found = true;
        res.report = std::move(rep);
        res.tuple = std::move(out.tuple);
        return res;
      }
    }
  }
  std::ostringstream os;
  os << "not found at this budget: " << res.restarts_tried << " restarts, "
     << converged << " converged but rejected, " << guard
     << " abandoned by the condition guard, best residual " << best;
  res.failure = os.str();
  return res;
}

NumericMatrixTuple assemble_block_triangular(const NumericMatrixTuple& upper,
                                             const NumericMatrixTuple& lower,
                                             const std::vector<Matrix>& q) {
  if (upper.matrices.size() != lower.matrices.size() ||
      q.size() != upper.matrices.size())
    throw ValidationError("block tuples have different lengths");
  const auto l = upper.n(), m = lower.n();
  NumericMatrixTuple out;
  out.mode = upper.mode;
  for (std::size_t j = 0; j < q.size(); ++j) {
    Matrix a = Matrix::Zero(l + m, l + m);
    a.topLeftCorner(l, l) = upper.matrices[j];
    a.bottomRightCorner(m, m) = lower.matrices[j];
    a.topRightCorner(l, m) = q[j];
    out.matrices.push_back(std::move(a));
  }
  return out;
}

NumericMatrixTuple build_semidirect(const Instance& inst, const BlockSplit& sp,
                                    const NumericMatrixTuple& upper,
                                    const NumericMatrixTuple& lower,
                                    const RealizationConfig& cfg) {
  const ExtReport rep = delta_of_split(inst, sp);
  if (rep.delta < 1)
    throw PreconditionError("delta = " + std::to_string(rep.delta) +
                            " at this split: every extension splits");
  const std::size_t k = inst.classes.size();
  const int l = sp.l, m = inst.n() - sp.l;
  if (upper.matrices.size() != k || lower.matrices.size() != k ||
      upper.n() != l || lower.n() != m)
    throw ValidationError("diagonal blocks do not match the split sizes");
  if (upper.mode != inst.mode || lower.mode != inst.mode)
    throw ValidationError("diagonal blocks have the wrong mode");

  const Matrix il = Matrix::Identity(l, l), im = Matrix::Identity(m, m);
  // Q_j ranges over the image of X -> P_j X - X R_j (keeps A_j in its
  // class); b[j] is an orthonormal basis of that image.
  std::vector<Matrix> ad(k), b(k);
  Eigen::Index total = 0;
  for (std::size_t j = 0; j < k; ++j) {
    ad[j] = kron(im, upper.matrices[j]) -
            kron(lower.matrices[j].transpose(), il);
    b[j] = range_basis(ad[j], cfg.tol_rank);
    if (b[j].cols() != rep.s[j])
      throw ValidationError(
          "class " + std::to_string(j + 1) + ": numeric s_j = " +
          std::to_string(b[j].cols()) + " but the split predicts " +
          std::to_string(rep.s[j]) + " (blocks not in the expected classes)");
    total += b[j].cols();
  }

  // Linear condition on the off-diagonal blocks of the sum / product.
  const Eigen::Index lm = static_cast<Eigen::Index>(l) * m;
  Matrix constraint(lm, total);
  Eigen::Index at = 0;
  for (std::size_t j = 0; j < k; ++j) {
    Matrix map;
    if (inst.mode == Mode::additive) {
      map = Matrix::Identity(lm, lm);
    } else {
      Matrix left = il, right = im;
      for (std::size_t i = 0; i < j; ++i) left = left * upper.matrices[i];
      for (std::size_t i = j + 1; i < k; ++i) right = right * lower.matrices[i];
      map = kron(right.transpose(), left);
    }
    constraint.middleCols(at, b[j].cols()) = map * b[j];
    at += b[j].cols();
  }
  const Matrix kernel = null_basis(constraint, cfg.tol_rank);

  // Coboundaries X -> (P_j X - X R_j)_j in the same coordinates.
  Matrix cob(total, lm);
  at = 0;
  for (std::size_t j = 0; j < k; ++j) {
    cob.middleRows(at, b[j].cols()) = b[j].adjoint() * ad[j];
    at += b[j].cols();
  }
  const Matrix cob_basis = range_basis(cob, cfg.tol_rank);
  const Matrix ext = kernel - cob_basis * (cob_basis.adjoint() * kernel);
  const Matrix ext_basis = range_basis(ext, cfg.tol_rank, 1.0);
  if (ext_basis.cols() == 0)
    throw PreconditionError(
        "no non-split extension found numerically at this split");

  std::mt19937_64 rng(restart_seed(cfg.rng_seed, -1));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd coeff(ext_basis.cols());
  for (Eigen::Index i = 0; i < coeff.size(); ++i)
    coeff(i) = Complex(normal(rng), normal(rng));
  Eigen::VectorXcd c = ext_basis * coeff;

  std::vector<Matrix> q(k);
  double biggest = 0;
  at = 0;
  for (std::size_t j = 0; j < k; ++j) {
    q[j] = unvec(b[j] * c.segment(at, b[j].cols()), l, m);
    biggest = std::max(biggest, q[j].norm());
    at += b[j].cols();
  }
  for (auto& x : q) x /= biggest;
  NumericMatrixTuple out = assemble_block_triangular(upper, lower, q);
  out.seed = cfg.rng_seed;
  return out;
}

FindResult realize_semidirect(const Instance& inst, const BlockSplit& sp,
                              const RealizationConfig& cfg) {
  const Instance up = upper_instance(inst, sp), lo = lower_instance(inst, sp);
  FindResult res;
  auto sub = [&](const Instance& block, std::uint64_t salt) {
    RealizationConfig c = cfg;
    c.rng_seed = cfg.rng_seed + salt;
    c.require_irreducible = block.n() >= 2;
    c.require_trivial_centralizer = false;
    return find_tuple(block, c);
  };
  const FindResult fu = sub(up, 1), fl = sub(lo, 2);
  if (!fu.found || !fl.found) {
    res.failure = "diagonal block not realized: " +
                  (fu.found ? fl.failure : fu.failure);
    return res;
  }
  NumericMatrixTuple t = build_semidirect(inst, sp, *fu.tuple, *fl.tuple, cfg);
  res.report = verify(inst, t, cfg);
  res.found = res.report.converged && res.report.all_members();
  if (!res.found) res.failure = "assembled tuple fails verification";
  res.tuple = std::move(t);
  return res;
}

}  // namespace dsp
