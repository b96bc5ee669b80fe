#pragma once

// Canonical Waring decompositions: binary forms of odd degree, cubic
// surfaces (pentahedral form), and ternary quintics (seven terms).

#include <array>
#include <utility>
#include <vector>

#include "waringlab/numlin.hpp"
#include "waringlab/polycore.hpp"

namespace waringlab {

struct BinaryOptions {
  double rank_tol = kDefaultRankTol;
  double distinct_tol = 1e-6;  // Fubini-Study separation between roots
  double residual_tol = 1e-8;
};

/// Unique (d+1)/2-term decomposition of a general binary form of odd degree
/// d, read off the one-dimensional kernel of catalecticant(F, h-1, h).
WaringDecomposition decompose_binary(const HomogeneousPoly& f,
                                     const BinaryOptions& options = {});

/// The 10 points xi of P^3 where the quadric sum_i xi_i dF/dx_i has rank 2.
std::vector<ProjectivePoint> rank2_locus(const HomogeneousPoly& f, Seed seed,
                                         const PolySysOptions& options = {});

/// Symmetric 4x4 matrix of the polar quadric sum_i xi_i dF/dx_i (up to a
/// global factor) evaluated at xi.
DenseMatrix polar_quadric(const HomogeneousPoly& f, const Vector& xi);

struct PentahedralWitness {
  std::vector<ProjectivePoint> rank2_points;   // 10 points
  std::vector<LinearForm> planes;              // 5 planes, normalized
  std::array<std::array<bool, 10>, 5> incidence{};
  std::array<int, 5> collinear_triples{};      // per plane
};

/// Groups 10 points of P^3 into the 5 planes carrying 6 of them each, by
/// scanning all 210 sextuples for rank-3 coordinate matrices.
PentahedralWitness group_coplanar(const std::vector<ProjectivePoint>& points,
                                  double tol = 1e-6, Exec exec = Exec::parallel);

struct PentahedralOptions {
  PolySysOptions solver{};
  double coplanar_tol = 1e-6;
  double residual_tol = 1e-8;
};

std::pair<WaringDecomposition, PentahedralWitness> decompose_pentahedral(
    const HomogeneousPoly& f, Seed seed, const PentahedralOptions& options = {});

struct QuinticOptions {
  int max_starts = 40;
  int batch_size = 8;
  int lm_iterations = 2000;
  double start_radius = 0.5;    // per-form norm of starts, times 7^(-1/10)
  double residual_tol = 1e-8;
  double agreement_tol = 1e-6;  // per-form Fubini-Study and relative weight match
  Exec exec = Exec::parallel;
};

/// Unique 7-term decomposition of a general ternary quintic by multistart
/// Levenberg-Marquardt; two independent converged starts must agree, and
/// the span certificate must pass.
WaringDecomposition decompose_quintic(const HomogeneousPoly& f, Seed seed,
                                      const QuinticOptions& options = {});

struct CanonicalCertificate {
  bool pass = false;
  int measured_rank = 0;   // rank of [L_i^k rows ; derivative rows]
  int expected_rank = 0;   // number of terms
  int rank_gap = 0;        // measured - expected
  double kernel_residual = 0.0;  // binary case: max |g(L_i)|
};

/// Span certificate: (2,5,7) second partials lie in span{L_i^3}; (3,3,5)
/// first partials lie in span{L_i^2}; binary: the catalecticant kernel form
/// vanishes at every L_i.
CanonicalCertificate verify_canonical(const HomogeneousPoly& f,
                                      const WaringDecomposition& dec,
                                      double rank_tol = 1e-7,
                                      double kernel_tol = 1e-6);

/// True when the two decompositions have the same terms up to order:
/// forms within `tol` (Fubini-Study) and weights within `tol` relative.
bool same_terms(const WaringDecomposition& a, const WaringDecomposition& b,
                double tol);

}  // namespace waringlab
