#pragma once

// Dense numeric linear algebra (SVD rank and kernels), univariate and binary
// root finding, and zero-dimensional projective system solving.

#include <cstddef>
#include <span>
#include <vector>

#include "waringlab/polycore.hpp"
#include "waringlab/types.hpp"

namespace waringlab {

inline constexpr double kDefaultRankTol = 1e-8;

/// Point of P^N held by its unit-norm, phase-fixed representative.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const Vector& coords);

  const Vector& coords() const { return coords_; }
  std::size_t size() const { return static_cast<std::size_t>(coords_.size()); }

  double distance(const ProjectivePoint& other) const;
  bool approx_equal(const ProjectivePoint& other, double tol = 1e-6) const {
    return distance(other) < tol;
  }

 private:
  Vector coords_;
};

/// Number of singular values above tol * sigma_max.
int rank_with_tol(const DenseMatrix& m, double tol = kDefaultRankTol);

/// Orthonormal basis (as columns) of the right kernel.
DenseMatrix nullspace(const DenseMatrix& m, double tol = kDefaultRankTol);

/// Singular values in decreasing order.
Eigen::VectorXd singular_values(const DenseMatrix& m);

/// Complex roots, with multiplicity, of p[0] + p[1] t + ... + p[k] t^k.
/// Exact leading zeros are trimmed first. Companion-matrix eigenvalues are
/// polished by Newton steps that never increase |p|.
std::vector<cplx> univariate_roots(std::span<const cplx> ascending);

/// Roots of the binary form sum_j c[j] s^(m-j) t^j as unit-norm (s, t)
/// pairs, m = c.size() - 1. Works through a fixed unitary change of chart so
/// roots at t = 0 or s = 0 are handled uniformly.
std::vector<Vector> binary_form_roots(std::span<const cplx> c);

/// Minimum-norm least-squares solution of a x = b.
Vector least_squares(const Eigen::MatrixXcd& a, const Vector& b);

struct PolySysOptions {
  double residual_tol = 1e-8;   // max |eq_i| at the unit representative
  double cluster_radius = 1e-6; // Fubini-Study radius for deduplication
  double isolation_tol = 1e-8;  // relative rank tolerance on the Jacobian
  int batch_size = 32;
  int batches_per_chart = 12;
  int charts = 3;
  int max_newton_iterations = 80;
  // Converged but rank-deficient starts tolerated before NotZeroDimensional.
  int max_non_isolated = 6;
  Exec exec = Exec::parallel;
};

/// Distinct isolated projective solutions of a homogeneous system in m+1
/// variables, found by damped Gauss-Newton from seeded multistarts in random
/// affine charts. Equations are scaled to unit coefficient norm first. When
/// the system is square on a chart, or can be squared up by random
/// combinations of equations of one degree, the first starts of each chart
/// are the endpoints of a total-degree homotopy; every candidate is then
/// checked against the full system.
/// Returns exactly `expected_count` points sorted lexicographically, or throws
/// CountMismatch / NotZeroDimensional.
std::vector<ProjectivePoint> polysys_solve(
    std::span<const HomogeneousPoly> eqs, int expected_count, Seed seed,
    const PolySysOptions& options = {});

}  // namespace waringlab
