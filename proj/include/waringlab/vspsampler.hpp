#pragma once

// Constructive points of VSP: slicing varieties of minimal degree, the
// canonical-case samplers for h >= h_bar, and one-step extension.

#include <optional>
#include <vector>

#include "waringlab/numlin.hpp"
#include "waringlab/polycore.hpp"
#include "waringlab/secantlab.hpp"

namespace waringlab {

/// p = sum_i weights[i] * points[i].coords() on the affine cone.
struct PointDecomposition {
  std::vector<ProjectivePoint> points;
  std::vector<cplx> weights;
  std::vector<Vector> params;       // curve parameters (s, t); empty for quadrics
  double span_residual = 0.0;       // ||p - sum w_i x_i|| / ||p||
  double variety_residual = 0.0;    // max defining-equation value at unit points
};

struct MindegOptions {
  double span_tol = 1e-8;
  double variety_tol = 1e-8;
  double distinct_tol = 1e-6;
  int budget = 10;
  /// Rational normal curve only: use this hyperplane (coefficients w with
  /// w . p = 0) instead of a random one.
  std::optional<Vector> hyperplane;
};

/// Slices X (rational normal curve or quadric) with a random linear space
/// of dimension deg X - 1 through p and returns the deg X intersection
/// points with the weights expressing p.
PointDecomposition mindeg_decompose(const ParamVariety& x, const Vector& p, Seed seed,
                                    const MindegOptions& options = {});

/// h > deg X points: h - deg random weighted points of X, then a slice
/// through the residual point.
PointDecomposition mindeg_decompose_extended(const ParamVariety& x, const Vector& p,
                                             int h, Seed seed,
                                             const MindegOptions& options = {});

/// Degree of X for the two supported families.
int variety_degree(const ParamVariety& x);

/// Smallest h with a unique decomposition for the supported (n, d):
/// (d+1)/2 for binary odd d, 5 for cubic surfaces, 7 for plane quintics.
int canonical_rank(int num_vars, int degree);

struct SampleOptions {
  double residual_tol = 1e-6;
  int budget = 10;
};

/// An h-term decomposition of F drawn from VSP(F, h): G = alpha F +
/// sum lambda_i l_i^d is decomposed canonically and rearranged. The drawn
/// forms l_i of the accepted attempt are stored in `drawn` when given.
WaringDecomposition sample_vsp(const HomogeneousPoly& f, int h, Seed seed,
                               const SampleOptions& options = {},
                               std::vector<LinearForm>* drawn = nullptr);

/// Appends h' - h random forms and refits all weights against F.
WaringDecomposition extend_decomposition(const HomogeneousPoly& f,
                                         const WaringDecomposition& dec, int h_new,
                                         Seed seed, const SampleOptions& options = {});

}  // namespace waringlab
