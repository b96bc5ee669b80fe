#pragma once

// Data-parallel inner loops. Every batch kernel has a serial reference
// (`*_serial`) and an OpenMP version (`*_omp`); items are independent, so
// both return identical results in identical order. The `Exec` overloads
// dispatch between them.

#include <span>
#include <vector>

#include "waringlab/polycore.hpp"
#include "waringlab/types.hpp"

namespace waringlab::kernels {

/// Homogeneous polynomial system flattened for fast evaluation of values
/// and the holomorphic Jacobian.
class CompiledSystem {
 public:
  explicit CompiledSystem(std::span<const HomogeneousPoly> eqs);

  int num_vars() const { return num_vars_; }
  int num_eqs() const { return static_cast<int>(eqs_.size()); }
  int degree(int eq) const { return degrees_[static_cast<std::size_t>(eq)]; }

  /// Values into `r`; Jacobian (num_eqs x num_vars) into `jac` when given.
  void eval(const Vector& z, Vector& r, Eigen::MatrixXcd* jac) const;

 private:
  struct Term {
    cplx coeff;
    std::vector<int> exp;
  };
  int num_vars_ = 0;
  int max_degree_ = 0;
  std::vector<int> degrees_;
  std::vector<std::vector<Term>> eqs_;
};

// ---------------------------------------------------------------------------
// Chart Newton

struct NewtonStart {
  Vector chart;  // affine chart a . z = 1
  Vector z0;
};

struct NewtonSettings {
  int max_iterations = 80;
  double residual_tol = 1e-8;
  double isolation_tol = 1e-8;
};

struct NewtonOutcome {
  bool converged = false;  // residual below tolerance at the unit representative
  bool isolated = false;   // Jacobian has corank one at the solution
  Vector point;            // unit representative (valid when converged)
  double residual = 0.0;
  int iterations = 0;
};

NewtonOutcome newton_solve(const CompiledSystem& sys, const NewtonStart& start,
                           const NewtonSettings& settings);

std::vector<NewtonOutcome> newton_batch_serial(const CompiledSystem& sys,
                                               std::span<const NewtonStart> starts,
                                               const NewtonSettings& settings);
std::vector<NewtonOutcome> newton_batch_omp(const CompiledSystem& sys,
                                            std::span<const NewtonStart> starts,
                                            const NewtonSettings& settings);
std::vector<NewtonOutcome> newton_batch(const CompiledSystem& sys,
                                        std::span<const NewtonStart> starts,
                                        const NewtonSettings& settings, Exec exec);

// ---------------------------------------------------------------------------
// Total-degree homotopy for a square system (num_vars - 1 equations) on the
// affine chart a . z = 1:  H(y, t) = (1 - t) gamma G(y) + t F(y), with start
// system G_i = y_i^(d_i) - 1 in chart coordinates y.

struct HomotopyOutcome {
  bool success = false;
  Vector point;  // homogeneous endpoint (valid when success)
  int steps = 0;
};

class TotalDegreeHomotopy {
 public:
  TotalDegreeHomotopy(const CompiledSystem& target, const Vector& chart, cplx gamma);

  int num_paths() const { return num_paths_; }
  const Vector& chart() const { return chart_; }
  HomotopyOutcome track(int path) const;

 private:
  void eval(const Vector& y, double t, Vector& h, Eigen::MatrixXcd& hy,
            Vector* ht) const;
  Vector start(int path) const;

  const CompiledSystem& target_;
  Vector chart_;
  Vector base_;            // a . base = 1
  Eigen::MatrixXcd basis_; // columns span a . z = 0
  cplx gamma_;
  std::vector<int> degrees_;
  int num_paths_ = 1;
};

std::vector<HomotopyOutcome> track_paths_serial(const TotalDegreeHomotopy& hom);
std::vector<HomotopyOutcome> track_paths_omp(const TotalDegreeHomotopy& hom);
std::vector<HomotopyOutcome> track_paths(const TotalDegreeHomotopy& hom, Exec exec);

// ---------------------------------------------------------------------------
// Levenberg-Marquardt for sum_i L_i^d = target with weights absorbed into
// the forms. Parameters are the stacked coefficient vectors of L_1..L_h.

class PowerSumProblem {
 public:
  PowerSumProblem(int num_vars, int degree, int terms, Vector target);

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  int terms() const { return terms_; }
  int num_params() const { return num_vars_ * terms_; }
  const Vector& target() const { return target_; }

  /// r = sum_i L_i^d - target and its Jacobian in the parameters.
  void eval(const Vector& params, Vector& r, Eigen::MatrixXcd* jac) const;

 private:
  int num_vars_;
  int degree_;
  int terms_;
  Vector target_;
  std::vector<Exponent> top_;                  // degree-d monomials
  std::vector<Exponent> low_;                  // degree-(d-1) monomials
  std::vector<std::vector<int>> lowered_;      // top index, var -> low index or -1
  std::vector<double> top_multinomial_;
  std::vector<double> low_multinomial_;
};

struct LmSettings {
  int max_iterations = 400;
  double tol = 1e-8;  // relative residual for convergence
};

struct LmOutcome {
  bool converged = false;
  Vector params;
  double residual = 0.0;  // relative to ||target||
  int iterations = 0;
};

LmOutcome lm_power_sum(const PowerSumProblem& problem, const Vector& start,
                       const LmSettings& settings);

std::vector<LmOutcome> lm_batch_serial(const PowerSumProblem& problem,
                                       std::span<const Vector> starts,
                                       const LmSettings& settings);
std::vector<LmOutcome> lm_batch_omp(const PowerSumProblem& problem,
                                    std::span<const Vector> starts,
                                    const LmSettings& settings);
std::vector<LmOutcome> lm_batch(const PowerSumProblem& problem,
                                std::span<const Vector> starts,
                                const LmSettings& settings, Exec exec);

// ---------------------------------------------------------------------------
// Subset rank scan

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

/// Rank test for one row subset.
bool subset_has_rank(const DenseMatrix& rows, const std::vector<int>& subset,
                     int target_rank, double tol);

/// Row subsets of size `k` whose stacked rows have rank exactly
/// `target_rank` (relative tolerance `tol`), in lexicographic order.
std::vector<std::vector<int>> rank_deficient_subsets_serial(
    const DenseMatrix& rows, int k, int target_rank, double tol);
std::vector<std::vector<int>> rank_deficient_subsets_omp(
    const DenseMatrix& rows, int k, int target_rank, double tol);
std::vector<std::vector<int>> rank_deficient_subsets(
    const DenseMatrix& rows, int k, int target_rank, double tol, Exec exec);

}  // namespace waringlab::kernels
