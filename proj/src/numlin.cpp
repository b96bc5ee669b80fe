#include "waringlab/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "waringlab/error.hpp"
#include "waringlab/kernels.hpp"
#include "waringlab/random.hpp"

namespace waringlab {

namespace {

Eigen::JacobiSVD<Eigen::MatrixXcd> svd_of(const DenseMatrix& m, int options) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw InvalidArgument("empty matrix");
  }
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(Eigen::MatrixXcd(m), options);
}

int rank_from(const Eigen::VectorXd& sv, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("rank tolerance must be positive");
  if (sv.size() == 0 || !(sv[0] > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol * sv[0]) ++r;
  }
  return r;
}

cplx horner(std::span<const cplx> p, cplx t) {
  cplx acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

cplx horner_derivative(std::span<const cplx> p, cplx t) {
  cplx acc = 0.0;
  for (std::size_t k = p.size(); k-- > 1;) {
    acc = acc * t + static_cast<double>(k) * p[k];
  }
  return acc;
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

// Fixed unitary chart change for binary forms: (s, t) = R (u, 1).
const Eigen::Matrix2cd& chart_rotation() {
  static const Eigen::Matrix2cd r = [] {
    const double th = 0.4123;
    const cplx ph = std::polar(1.0, 0.9137);
    Eigen::Matrix2cd m;
    m << std::cos(th), -std::sin(th) * ph,
        std::sin(th) * std::conj(ph), std::cos(th);
    return m;
  }();
  return r;
}

// Ascending coefficients of the product of two ascending polynomials.
std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ProjectivePoint::ProjectivePoint(const Vector& coords)
    : coords_(normalize_phase(coords).second) {}

double ProjectivePoint::distance(const ProjectivePoint& other) const {
  if (other.size() != size()) {
    throw InvalidArgument("ProjectivePoint: dimension mismatch");
  }
  return fubini_study(coords_, other.coords_);
}

Eigen::VectorXd singular_values(const DenseMatrix& m) {
  return svd_of(m, 0).singularValues();
}

int rank_with_tol(const DenseMatrix& m, double tol) {
  return rank_from(singular_values(m), tol);
}

DenseMatrix nullspace(const DenseMatrix& m, double tol) {
  const auto svd = svd_of(m, Eigen::ComputeFullV);
  const int r = rank_from(svd.singularValues(), tol);
  const auto& v = svd.matrixV();
  return v.rightCols(v.cols() - r);
}

Vector least_squares(const Eigen::MatrixXcd& a, const Vector& b) {
  if (a.rows() != b.size()) throw InvalidArgument("least_squares: shape mismatch");
  return a.completeOrthogonalDecomposition().solve(b);
}

std::vector<cplx> univariate_roots(std::span<const cplx> ascending) {
  std::size_t deg = ascending.size();
  while (deg > 0 && ascending[deg - 1] == 0.0) --deg;
  if (deg == 0) throw InvalidArgument("univariate_roots: zero polynomial");
  if (deg == 1) throw InvalidArgument("univariate_roots: constant polynomial");
  const std::span<const cplx> p = ascending.first(deg);
  const auto m = static_cast<Eigen::Index>(deg - 1);

  std::vector<cplx> roots;
  if (m == 1) {
    roots.push_back(-p[0] / p[1]);
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      companion(i, m - 1) = -p[static_cast<std::size_t>(i)] / p[deg - 1];
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    if (es.info() != Eigen::Success) {
      throw NoConvergence("univariate_roots: eigenvalue iteration failed");
    }
    for (Eigen::Index i = 0; i < m; ++i) roots.push_back(es.eigenvalues()[i]);
  }
  for (auto& x : roots) {
    double fx = std::abs(horner(p, x));
    for (int k = 0; k < 6 && fx > 0.0; ++k) {
      const cplx dp = horner_derivative(p, x);
      if (dp == 0.0) break;
      const cplx candidate = x - horner(p, x) / dp;
      const double fc = std::abs(horner(p, candidate));
      if (!(fc < fx)) break;
      x = candidate;
      fx = fc;
    }
  }
  return roots;
}

std::vector<Vector> binary_form_roots(std::span<const cplx> c) {
  if (c.size() < 2) throw InvalidArgument("binary_form_roots: degree < 1");
  const std::size_t deg = c.size() - 1;
  const auto& r = chart_rotation();
  // s = r00 u + r01, t = r10 u + r11; accumulate sum_j c_j s^(deg-j) t^j.
  const std::vector<cplx> s_lin{r(0, 1), r(0, 0)};
  const std::vector<cplx> t_lin{r(1, 1), r(1, 0)};
  std::vector<std::vector<cplx>> s_pow{{1.0}}, t_pow{{1.0}};
  for (std::size_t k = 1; k <= deg; ++k) {
    s_pow.push_back(poly_mul(s_pow.back(), s_lin));
    t_pow.push_back(poly_mul(t_pow.back(), t_lin));
  }
  std::vector<cplx> q(deg + 1, 0.0);
  for (std::size_t j = 0; j <= deg; ++j) {
    if (c[j] == 0.0) continue;
    const auto term = poly_mul(s_pow[deg - j], t_pow[j]);
    for (std::size_t k = 0; k < term.size(); ++k) q[k] += c[j] * term[k];
  }
  double scale = 0.0;
  for (const auto& v : q) scale = std::max(scale, std::abs(v));
  if (!(scale > 0.0)) throw InvalidArgument("binary_form_roots: zero form");
  if (std::abs(q[deg]) <= 1e-14 * scale) {
    throw DegenerateInput("binary_form_roots: root at the chart boundary");
  }
  std::vector<Vector> out;
  for (const cplx u : univariate_roots(q)) {
    Eigen::Vector2cd st = r * Eigen::Vector2cd(u, 1.0);
    out.push_back(st / st.norm());
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<ProjectivePoint> polysys_solve(std::span<const HomogeneousPoly> eqs,
                                           int expected_count, Seed seed,
                                           const PolySysOptions& options) {
  if (expected_count <= 0) {
    throw InvalidArgument("polysys_solve: expected_count must be positive");
  }
  if (eqs.empty()) throw InvalidArgument("polysys_solve: no equations");
  const int nv = eqs.front().num_vars();
  std::vector<HomogeneousPoly> scaled;
  for (const auto& f : eqs) {
    if (f.num_vars() != nv) {
      throw InvalidArgument("polysys_solve: equations differ in variable count");
    }
    const double n = f.norm();
    if (n > 0.0) scaled.push_back(f.scaled(1.0 / n));
  }
  if (scaled.empty()) {
    throw NotZeroDimensional("polysys_solve: every equation vanishes identically");
  }
  const kernels::CompiledSystem full(scaled);
  const kernels::NewtonSettings settings{options.max_newton_iterations,
                                         options.residual_tol,
                                         options.isolation_tol};
  // Overdetermined systems of one degree are squared up per chart with
  // random combinations; the full system then filters spurious roots.
  const bool square_up =
      static_cast<int>(scaled.size()) > nv - 1 &&
      std::all_of(scaled.begin(), scaled.end(), [&](const HomogeneousPoly& f) {
        return f.degree() == scaled.front().degree();
      });

  std::vector<Vector> found;
  int non_isolated = 0;
  for (int chart_id = 0; chart_id < options.charts; ++chart_id) {
    auto chart_rng = make_rng(seed, {0x636861ULL, static_cast<std::uint64_t>(chart_id)});
    const Vector chart = complex_gaussian(chart_rng, nv);
    std::vector<HomogeneousPoly> combos;
    if (square_up) {
      for (int j = 0; j < nv - 1; ++j) {
        HomogeneousPoly g(nv, scaled.front().degree());
        for (const auto& f : scaled) g = g + f.scaled(complex_gaussian(chart_rng));
        combos.push_back(g);
      }
    }
    const kernels::CompiledSystem sys = square_up ? kernels::CompiledSystem(combos) : full;
    const bool square = sys.num_eqs() == nv - 1;
    // Batch -1 seeds Newton with homotopy endpoints of the square system.
    for (int batch = square ? -1 : 0; batch < options.batches_per_chart; ++batch) {
      std::vector<kernels::NewtonStart> starts;
      if (batch < 0) {
        const cplx gamma = std::polar(1.0, std::arg(complex_gaussian(chart_rng)));
        const kernels::TotalDegreeHomotopy hom(sys, chart, gamma);
        for (const auto& e : kernels::track_paths(hom, options.exec)) {
          if (e.success) starts.push_back({chart, e.point});
        }
      }
      for (int j = 0; batch >= 0 && j < options.batch_size; ++j) {
        const auto index = static_cast<std::uint64_t>(batch * options.batch_size + j);
        auto rng = make_rng(seed, {static_cast<std::uint64_t>(chart_id), index});
        Vector z0 = complex_gaussian(rng, nv);
        cplx at = chart.cwiseProduct(z0).sum();
        while (std::abs(at) < 1e-6 * z0.norm() * chart.norm()) {
          z0 = complex_gaussian(rng, nv);
          at = chart.cwiseProduct(z0).sum();
        }
        starts.push_back({chart, z0 / at});
      }
      const auto outcomes = kernels::newton_batch(sys, starts, settings, options.exec);
      for (const auto& o : outcomes) {
        if (!o.converged) continue;
        Vector r;
        Eigen::MatrixXcd jac;
        full.eval(o.point, r, &jac);
        if (r.cwiseAbs().maxCoeff() > options.residual_tol) continue;
        if (rank_with_tol(DenseMatrix(jac), options.isolation_tol) != nv - 1) {
          if (++non_isolated > options.max_non_isolated) {
            throw NotZeroDimensional(
                "polysys_solve: converged starts lie on a positive-dimensional component");
          }
          continue;
        }
        const bool known = std::any_of(found.begin(), found.end(), [&](const Vector& f) {
          return fubini_study(f, o.point) < options.cluster_radius;
        });
        if (!known) found.push_back(o.point);
      }
      if (static_cast<int>(found.size()) > expected_count) {
        throw CountMismatch("polysys_solve: found " + std::to_string(found.size()) +
                            " isolated solutions, expected " +
                            std::to_string(expected_count));
      }
      if (static_cast<int>(found.size()) == expected_count) {
        std::vector<ProjectivePoint> out;
        for (const auto& f : found) out.emplace_back(f);
        std::sort(out.begin(), out.end(),
                  [](const ProjectivePoint& a, const ProjectivePoint& b) {
                    return lex_less(a.coords(), b.coords());
                  });
        return out;
      }
    }
  }
  throw CountMismatch("polysys_solve: found " + std::to_string(found.size()) +
                      " isolated solutions, expected " +
                      std::to_string(expected_count));
}

}  // namespace waringlab
