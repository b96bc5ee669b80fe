#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "waringlab/error.hpp"
#include "waringlab/kernels.hpp"
#include "waringlab/numlin.hpp"

namespace waringlab::kernels {

// ---------------------------------------------------------------------------
// CompiledSystem

CompiledSystem::CompiledSystem(std::span<const HomogeneousPoly> eqs) {
  if (eqs.empty()) throw InvalidArgument("CompiledSystem: no equations");
  num_vars_ = eqs.front().num_vars();
  for (const auto& f : eqs) {
    if (f.num_vars() != num_vars_) {
      throw InvalidArgument("CompiledSystem: equations differ in variable count");
    }
    max_degree_ = std::max(max_degree_, f.degree());
    degrees_.push_back(f.degree());
    const auto exps = monomials(f.num_vars(), f.degree());
    std::vector<Term> terms;
    for (std::size_t m = 0; m < exps.size(); ++m) {
      const cplx c = f.coeffs()[static_cast<Eigen::Index>(m)];
      if (c != 0.0) terms.push_back({c, exps[m]});
    }
    eqs_.push_back(std::move(terms));
  }
}

void CompiledSystem::eval(const Vector& z, Vector& r,
                          Eigen::MatrixXcd* jac) const {
  const int nv = num_vars_;
  // pw(v, k) = z_v^k
  Eigen::MatrixXcd pw(nv, max_degree_ + 1);
  for (int v = 0; v < nv; ++v) {
    pw(v, 0) = 1.0;
    for (int k = 1; k <= max_degree_; ++k) pw(v, k) = pw(v, k - 1) * z[v];
  }
  r.resize(num_eqs());
  if (jac) jac->setZero(num_eqs(), nv);
  for (int q = 0; q < num_eqs(); ++q) {
    cplx acc = 0.0;
    for (const auto& t : eqs_[q]) {
      cplx mono = t.coeff;
      for (int v = 0; v < nv; ++v) mono *= pw(v, t.exp[v]);
      acc += mono;
      if (!jac) continue;
      for (int j = 0; j < nv; ++j) {
        if (t.exp[j] == 0) continue;
        cplx d = t.coeff * static_cast<double>(t.exp[j]) * pw(j, t.exp[j] - 1);
        for (int v = 0; v < nv; ++v) {
          if (v != j) d *= pw(v, t.exp[v]);
        }
        (*jac)(q, j) += d;
      }
    }
    r[q] = acc;
  }
}

// ---------------------------------------------------------------------------
// Chart Newton

// Largest accepted residual growth per step; mild non-monotonicity lets
// starts leave shallow basins.
constexpr double kGrowth = 10.0;

namespace {

void chart_residual(const CompiledSystem& sys, const Vector& chart,
                    const Vector& z, Vector& r, Eigen::MatrixXcd* jac) {
  Vector re;
  Eigen::MatrixXcd je;
  sys.eval(z, re, jac ? &je : nullptr);
  const int m = sys.num_eqs();
  r.resize(m + 1);
  r.head(m) = re;
  r[m] = chart.cwiseProduct(z).sum() - cplx(1.0);
  if (jac) {
    jac->resize(m + 1, sys.num_vars());
    jac->topRows(m) = je;
    jac->row(m) = chart.transpose();
  }
}

}  // namespace

NewtonOutcome newton_solve(const CompiledSystem& sys, const NewtonStart& start,
                           const NewtonSettings& settings) {
  NewtonOutcome out;
  Vector z = start.z0;
  Vector r, r_try;
  Eigen::MatrixXcd jac;
  chart_residual(sys, start.chart, z, r, &jac);
  double nr = r.norm();
  int it = 0;
  int settled = 0;
  for (; it < settings.max_iterations; ++it) {
    if (!std::isfinite(nr) || z.norm() > 1e8) break;
    const Vector step = jac.colPivHouseholderQr().solve(-r);
    double t = 1.0;
    bool accepted = false;
    Vector z_try;
    while (t >= 1.0 / 64.0) {
      z_try = z + t * step;
      chart_residual(sys, start.chart, z_try, r_try, nullptr);
      if (r_try.norm() < kGrowth * nr || r_try.norm() <= 1e-15 * (1.0 + z_try.norm())) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    z = z_try;
    chart_residual(sys, start.chart, z, r, &jac);
    nr = r.norm();
    if (t == 1.0 && step.norm() <= 1e-13 * (1.0 + z.norm())) {
      // two consecutive tiny full steps: converged to working precision
      if (++settled >= 2) break;
    } else {
      settled = 0;
    }
  }
  out.iterations = it;
  if (!std::isfinite(nr) || !(z.norm() > 0.0) || !z.allFinite()) return out;

  out.point = z / z.norm();
  Vector ru;
  Eigen::MatrixXcd ju;
  sys.eval(out.point, ru, &ju);
  out.residual = ru.cwiseAbs().maxCoeff();
  out.converged = out.residual <= settings.residual_tol;
  if (out.converged) {
    DenseMatrix j = ju;
    out.isolated = rank_with_tol(j, settings.isolation_tol) == sys.num_vars() - 1;
  }
  return out;
}

std::vector<NewtonOutcome> newton_batch_serial(const CompiledSystem& sys,
                                               std::span<const NewtonStart> starts,
                                               const NewtonSettings& settings) {
  std::vector<NewtonOutcome> out(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    out[i] = newton_solve(sys, starts[i], settings);
  }
  return out;
}

std::vector<NewtonOutcome> newton_batch(const CompiledSystem& sys,
                                        std::span<const NewtonStart> starts,
                                        const NewtonSettings& settings, Exec exec) {
  return exec == Exec::serial ? newton_batch_serial(sys, starts, settings)
                              : newton_batch_omp(sys, starts, settings);
}

// ---------------------------------------------------------------------------
// Homotopy continuation

TotalDegreeHomotopy::TotalDegreeHomotopy(const CompiledSystem& target,
                                         const Vector& chart, cplx gamma)
    : target_(target), chart_(chart), gamma_(gamma) {
  const int nv = target.num_vars();
  if (target.num_eqs() != nv - 1) {
    throw InvalidArgument("TotalDegreeHomotopy: system must be square on a chart");
  }
  if (chart.size() != nv || !(chart.norm() > 0.0)) {
    throw InvalidArgument("TotalDegreeHomotopy: bad chart");
  }
  base_ = chart.conjugate() / chart.squaredNorm();
  DenseMatrix row(1, nv);
  row.row(0) = chart.transpose();
  basis_ = nullspace(row, 1e-12);
  for (int q = 0; q < target.num_eqs(); ++q) {
    degrees_.push_back(target.degree(q));
    num_paths_ *= target.degree(q);
  }
}

Vector TotalDegreeHomotopy::start(int path) const {
  const auto m = static_cast<Eigen::Index>(degrees_.size());
  Vector y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int d = degrees_[static_cast<std::size_t>(i)];
    const int k = path % d;
    path /= d;
    y[i] = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
  }
  return y;
}

void TotalDegreeHomotopy::eval(const Vector& y, double t, Vector& h,
                               Eigen::MatrixXcd& hy, Vector* ht) const {
  const Vector z = base_ + basis_ * y;
  Vector f;
  Eigen::MatrixXcd jz;
  target_.eval(z, f, &jz);
  const auto m = y.size();
  Vector g(m);
  Eigen::MatrixXcd gy = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int d = degrees_[static_cast<std::size_t>(i)];
    const cplx p = std::pow(y[i], d - 1);
    g[i] = p * y[i] - 1.0;
    gy(i, i) = static_cast<double>(d) * p;
  }
  h = (1.0 - t) * gamma_ * g + t * f;
  hy = (1.0 - t) * gamma_ * gy + t * (jz * basis_);
  if (ht) *ht = f - gamma_ * g;
}

HomotopyOutcome TotalDegreeHomotopy::track(int path) const {
  HomotopyOutcome out;
  Vector y = start(path);
  Vector h, ht;
  Eigen::MatrixXcd hy;
  auto tangent = [&](const Vector& at, double t) {
    eval(at, t, h, hy, &ht);
    return Vector(hy.partialPivLu().solve(-ht));
  };
  double t = 0.0;
  double dt = 0.02;
  int streak = 0;
  while (t < 1.0) {
    if (++out.steps > 20000 || dt < 1e-12 || !y.allFinite() || y.norm() > 1e8) return out;
    const double step = std::min(dt, 1.0 - t);
    const Vector k1 = tangent(y, t);
    const Vector k2 = tangent(y + 0.5 * step * k1, t + 0.5 * step);
    const Vector k3 = tangent(y + 0.5 * step * k2, t + 0.5 * step);
    const Vector k4 = tangent(y + step * k3, t + step);
    Vector yc = y + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    bool ok = false;
    for (int k = 0; k < 3; ++k) {
      eval(yc, t + step, h, hy, nullptr);
      const Vector delta = hy.partialPivLu().solve(-h);
      if (!delta.allFinite()) break;
      const double scale = 1.0 + yc.norm();
      if (k == 0 && delta.norm() > 0.05 * scale) break;
      yc += delta;
      if (delta.norm() <= 1e-10 * scale) {
        ok = true;
        break;
      }
    }
    if (ok) {
      y = yc;
      t += step;
      if (++streak >= 3) {
        dt = std::min(2.0 * dt, 0.1);
        streak = 0;
      }
    } else {
      dt *= 0.5;
      streak = 0;
    }
  }
  out.point = base_ + basis_ * y;
  out.success = out.point.allFinite();
  return out;
}

std::vector<HomotopyOutcome> track_paths_serial(const TotalDegreeHomotopy& hom) {
  std::vector<HomotopyOutcome> out(static_cast<std::size_t>(hom.num_paths()));
  for (int i = 0; i < hom.num_paths(); ++i) out[static_cast<std::size_t>(i)] = hom.track(i);
  return out;
}

std::vector<HomotopyOutcome> track_paths(const TotalDegreeHomotopy& hom, Exec exec) {
  return exec == Exec::serial ? track_paths_serial(hom) : track_paths_omp(hom);
}

// ---------------------------------------------------------------------------
// Power sums

PowerSumProblem::PowerSumProblem(int num_vars, int degree, int terms,
                                 Vector target)
    : num_vars_(num_vars), degree_(degree), terms_(terms),
      target_(std::move(target)) {
  if (num_vars < 1 || degree < 1 || terms < 1) {
    throw InvalidArgument("PowerSumProblem: bad shape");
  }
  top_ = monomials(num_vars, degree);
  low_ = monomials(num_vars, degree - 1);
  if (static_cast<std::size_t>(target_.size()) != top_.size()) {
    throw InvalidArgument("PowerSumProblem: target has wrong length");
  }
  lowered_.assign(top_.size(), std::vector<int>(num_vars, -1));
  for (std::size_t m = 0; m < top_.size(); ++m) {
    for (int j = 0; j < num_vars; ++j) {
      if (top_[m][j] == 0) continue;
      Exponent e = top_[m];
      --e[j];
      lowered_[m][j] = static_cast<int>(monomial_index(e));
    }
    top_multinomial_.push_back(multinomial(top_[m]));
  }
  for (const auto& e : low_) low_multinomial_.push_back(multinomial(e));
}

void PowerSumProblem::eval(const Vector& params, Vector& r,
                           Eigen::MatrixXcd* jac) const {
  const int nv = num_vars_;
  const int d = degree_;
  const auto n_top = static_cast<Eigen::Index>(top_.size());
  r = -target_;
  if (jac) jac->setZero(n_top, num_params());
  Eigen::MatrixXcd pw(nv, d + 1);
  Vector low(static_cast<Eigen::Index>(low_.size()));
  for (int i = 0; i < terms_; ++i) {
    for (int v = 0; v < nv; ++v) {
      pw(v, 0) = 1.0;
      for (int k = 1; k <= d; ++k) pw(v, k) = pw(v, k - 1) * params[i * nv + v];
    }
    for (Eigen::Index m = 0; m < n_top; ++m) {
      cplx t = top_multinomial_[static_cast<std::size_t>(m)];
      for (int v = 0; v < nv; ++v) t *= pw(v, top_[static_cast<std::size_t>(m)][v]);
      r[m] += t;
    }
    if (!jac) continue;
    for (Eigen::Index m = 0; m < low.size(); ++m) {
      cplx t = low_multinomial_[static_cast<std::size_t>(m)];
      for (int v = 0; v < nv; ++v) t *= pw(v, low_[static_cast<std::size_t>(m)][v]);
      low[m] = t;
    }
    // d/dl_j (L^d) = d * x_j * L^(d-1)
    for (Eigen::Index m = 0; m < n_top; ++m) {
      for (int j = 0; j < nv; ++j) {
        const int li = lowered_[static_cast<std::size_t>(m)][j];
        if (li >= 0) (*jac)(m, i * nv + j) = static_cast<double>(d) * low[li];
      }
    }
  }
}

LmOutcome lm_power_sum(const PowerSumProblem& problem, const Vector& start,
                       const LmSettings& settings) {
  LmOutcome out;
  const double scale = problem.target().norm();
  if (!(scale > 0.0)) throw InvalidArgument("lm_power_sum: zero target");
  Vector z = start;
  Vector r, r_try;
  Eigen::MatrixXcd jac;
  problem.eval(z, r, &jac);
  double cost = r.squaredNorm();
  Eigen::MatrixXcd a = jac.adjoint() * jac;
  Vector g = jac.adjoint() * r;
  double mu = 1e-3 * a.diagonal().real().maxCoeff();
  double nu = 2.0;
  const auto np = static_cast<Eigen::Index>(problem.num_params());
  int it = 0;
  for (; it < settings.max_iterations; ++it) {
    if (std::sqrt(cost) <= 1e-14 * scale) break;
    Eigen::MatrixXcd damped = a;
    damped.diagonal().array() += mu;
    const Vector step = damped.ldlt().solve(-g);
    if (!step.allFinite()) break;
    if (step.norm() <= 1e-15 * (z.norm() + 1e-15)) break;
    const Vector z_try = z + step;
    problem.eval(z_try, r_try, nullptr);
    const double cost_try = r_try.squaredNorm();
    const double predicted = cost - (r + jac * step).squaredNorm();
    const double rho = predicted > 0.0 ? (cost - cost_try) / predicted : -1.0;
    if (rho > 0.0 && std::isfinite(cost_try)) {
      z = z_try;
      problem.eval(z, r, &jac);
      cost = r.squaredNorm();
      a = jac.adjoint() * jac;
      g = jac.adjoint() * r;
      const double f = 2.0 * rho - 1.0;
      mu *= std::max(1.0 / 3.0, 1.0 - f * f * f);
      nu = 2.0;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (mu > 1e30) break;
    }
  }
  // Newton polish; keeps a step only if it lowers the residual.
  for (int k = 0; k < 4 && jac.rows() == np; ++k) {
    const Vector step = jac.partialPivLu().solve(-r);
    if (!step.allFinite()) break;
    const Vector z_try = z + step;
    problem.eval(z_try, r_try, nullptr);
    if (!(r_try.squaredNorm() < cost)) break;
    z = z_try;
    problem.eval(z, r, &jac);
    cost = r.squaredNorm();
  }
  out.params = z;
  out.iterations = it;
  out.residual = std::sqrt(cost) / scale;
  out.converged = std::isfinite(out.residual) && out.residual <= settings.tol;
  return out;
}

std::vector<LmOutcome> lm_batch_serial(const PowerSumProblem& problem,
                                       std::span<const Vector> starts,
                                       const LmSettings& settings) {
  std::vector<LmOutcome> out(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    out[i] = lm_power_sum(problem, starts[i], settings);
  }
  return out;
}

std::vector<LmOutcome> lm_batch(const PowerSumProblem& problem,
                                std::span<const Vector> starts,
                                const LmSettings& settings, Exec exec) {
  return exec == Exec::serial ? lm_batch_serial(problem, starts, settings)
                              : lm_batch_omp(problem, starts, settings);
}

// ---------------------------------------------------------------------------
// Subset scans

std::vector<std::vector<int>> combinations(int n, int k) {
  if (k < 0 || n < 0 || k > n) {
    throw InvalidArgument("combinations: need 0 <= k <= n");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

bool subset_has_rank(const DenseMatrix& rows, const std::vector<int>& subset,
                     int target_rank, double tol) {
  DenseMatrix m(static_cast<Eigen::Index>(subset.size()), rows.cols());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = rows.row(subset[i]);
  }
  return rank_with_tol(m, tol) == target_rank;
}

std::vector<std::vector<int>> rank_deficient_subsets_serial(
    const DenseMatrix& rows, int k, int target_rank, double tol) {
  std::vector<std::vector<int>> out;
  for (auto& s : combinations(static_cast<int>(rows.rows()), k)) {
    if (subset_has_rank(rows, s, target_rank, tol)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<int>> rank_deficient_subsets(
    const DenseMatrix& rows, int k, int target_rank, double tol, Exec exec) {
  return exec == Exec::serial
             ? rank_deficient_subsets_serial(rows, k, target_rank, tol)
             : rank_deficient_subsets_omp(rows, k, target_rank, tol);
}

}  // namespace waringlab::kernels
