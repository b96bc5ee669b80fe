#include "waringlab/vspsampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "waringlab/error.hpp"
#include "waringlab/random.hpp"
#include "waringlab/waring.hpp"

namespace waringlab {

namespace {

bool is_curve(const ParamVariety& x) {
  return x.kind() == VarietyKind::rational_normal_curve ||
         (x.kind() == VarietyKind::veronese && x.args()[0] == 1);
}

// Max |x_j x_{k+1} - x_{j+1} x_k| over the 2x2 minors of the Hankel matrix;
// coordinates are ordered s^d, s^(d-1) t, ..., t^d.
double curve_equation_residual(const Vector& x) {
  const Eigen::Index d = x.size() - 1;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      worst = std::max(worst, std::abs(x[j] * x[k + 1] - x[j + 1] * x[k]));
    }
  }
  return worst;
}

cplx bilinear(const Vector& a, const DenseMatrix& s, const Vector& b) {
  return (a.transpose() * s * b)(0, 0);
}

// Fills weights and residuals; false when the points fail the checks.
bool finish(PointDecomposition& out, const Vector& p, const ParamVariety& x,
            const MindegOptions& options, std::size_t fixed = 0) {
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    for (std::size_t j = i + 1; j < out.points.size(); ++j) {
      if (out.points[i].distance(out.points[j]) < options.distinct_tol) return false;
    }
  }
  const auto m = static_cast<Eigen::Index>(out.points.size());
  Eigen::MatrixXcd a(p.size(), m);
  for (Eigen::Index i = 0; i < m; ++i) a.col(i) = out.points[static_cast<std::size_t>(i)].coords();
  if (fixed == 0) {
    const Vector w = least_squares(a, p);
    out.weights.assign(w.data(), w.data() + w.size());
  } else {
    Vector target = p;
    for (std::size_t i = 0; i < fixed; ++i) {
      target -= out.weights[i] * out.points[i].coords();
    }
    const Vector w = least_squares(a.rightCols(m - static_cast<Eigen::Index>(fixed)), target);
    out.weights.resize(fixed);
    out.weights.insert(out.weights.end(), w.data(), w.data() + w.size());
  }
  Vector recon = Vector::Zero(p.size());
  for (Eigen::Index i = 0; i < m; ++i) recon += out.weights[static_cast<std::size_t>(i)] * a.col(i);
  out.span_residual = (p - recon).norm() / p.norm();
  out.variety_residual = 0.0;
  for (const auto& pt : out.points) {
    const double r = is_curve(x) ? curve_equation_residual(pt.coords())
                                 : std::abs(bilinear(pt.coords(), x.quadric_matrix(), pt.coords()));
    out.variety_residual = std::max(out.variety_residual, r);
  }
  return out.span_residual <= options.span_tol && out.variety_residual <= options.variety_tol;
}

std::optional<PointDecomposition> slice_curve(const ParamVariety& x, const Vector& p,
                                              std::mt19937_64& rng,
                                              const MindegOptions& options) {
  const Eigen::Index d = x.ambient_n();
  Vector w;
  if (options.hyperplane) {
    w = *options.hyperplane;
    if (w.size() != d + 1) throw InvalidArgument("mindeg_decompose: hyperplane size");
    if (std::abs(w.cwiseProduct(p).sum()) > 1e-8 * w.norm() * p.norm()) {
      throw InvalidArgument("mindeg_decompose: hyperplane does not contain p");
    }
  } else {
    // Hyperplane through p and d - 1 random points.
    DenseMatrix rows(d, d + 1);
    rows.row(0) = p.transpose();
    for (Eigen::Index i = 1; i < d; ++i) rows.row(i) = complex_gaussian(rng, d + 1).transpose();
    const DenseMatrix k = nullspace(rows);
    if (k.cols() != 1) return std::nullopt;
    w = k.col(0);
  }
  // Pull back: w . nu(s, t) = sum_j w_j s^(d-j) t^j.
  std::vector<Vector> roots;
  try {
    roots = binary_form_roots(std::span<const cplx>(w.data(), static_cast<std::size_t>(w.size())));
  } catch (const DegenerateInput&) {
    return std::nullopt;
  }
  PointDecomposition out;
  for (const auto& st : roots) {
    out.params.push_back(st);
    out.points.push_back(x.embed(st));
  }
  if (!finish(out, p, x, options)) return std::nullopt;
  return out;
}

std::optional<PointDecomposition> slice_quadric(const ParamVariety& x, const Vector& p,
                                                std::mt19937_64& rng,
                                                const MindegOptions& options) {
  const DenseMatrix s = x.quadric_matrix();
  const Vector r = complex_gaussian(rng, p.size());
  // q(a p + b r) = a^2 q(p) + 2 a b p^T S r + b^2 q(r).
  const cplx c[3] = {bilinear(p, s, p), 2.0 * bilinear(p, s, r), bilinear(r, s, r)};
  std::vector<Vector> roots;
  try {
    roots = binary_form_roots(std::span<const cplx>(c, 3));
  } catch (const DegenerateInput&) {
    return std::nullopt;
  }
  PointDecomposition out;
  for (const auto& ab : roots) out.points.emplace_back(ab[0] * p + ab[1] * r);
  if (!finish(out, p, x, options)) return std::nullopt;
  return out;
}

WaringDecomposition canonical_decompose(const HomogeneousPoly& g, Seed seed) {
  if (g.num_vars() == 2) return decompose_binary(g);
  if (g.num_vars() == 4) return decompose_pentahedral(g, seed).first;
  return decompose_quintic(g, seed);
}

}  // namespace

int variety_degree(const ParamVariety& x) {
  if (is_curve(x)) return static_cast<int>(x.ambient_n());
  if (x.kind() == VarietyKind::quadric) return 2;
  throw InvalidArgument("only rational normal curves and quadrics are supported");
}

PointDecomposition mindeg_decompose(const ParamVariety& x, const Vector& p, Seed seed,
                                    const MindegOptions& options) {
  variety_degree(x);
  if (p.size() != x.ambient_n() + 1) {
    throw InvalidArgument("mindeg_decompose: p has the wrong number of coordinates");
  }
  if (!(p.norm() > 0.0)) throw InvalidArgument("mindeg_decompose: p is zero");
  if (options.hyperplane && !is_curve(x)) {
    throw InvalidArgument("mindeg_decompose: hyperplane override needs a curve");
  }
  const int budget = options.hyperplane ? 1 : options.budget;
  for (int attempt = 0; attempt < budget; ++attempt) {
    auto rng = make_rng(seed, {0x6d696eULL, static_cast<std::uint64_t>(attempt)});
    auto out = is_curve(x) ? slice_curve(x, p, rng, options) : slice_quadric(x, p, rng, options);
    if (out) return *out;
  }
  throw SamplingFailure("mindeg_decompose: no transverse slice within budget");
}

PointDecomposition mindeg_decompose_extended(const ParamVariety& x, const Vector& p,
                                             int h, Seed seed,
                                             const MindegOptions& options) {
  const int deg = variety_degree(x);
  if (h < deg) {
    throw InvalidArgument("mindeg_decompose_extended: h must be at least deg X = " +
                          std::to_string(deg));
  }
  if (h == deg) return mindeg_decompose(x, p, seed, options);
  for (int attempt = 0; attempt < options.budget; ++attempt) {
    auto rng = make_rng(seed, {0x657874ULL, static_cast<std::uint64_t>(attempt)});
    PointDecomposition out;
    Vector rest = p;
    for (int i = 0; i < h - deg; ++i) {
      const Vector params = x.random_params(rng);
      if (is_curve(x)) out.params.push_back(params);
      out.points.push_back(x.embed(params));
      out.weights.push_back(complex_gaussian(rng) * p.norm());
      rest -= out.weights.back() * out.points.back().coords();
    }
    MindegOptions sub = options;
    sub.budget = 1;
    PointDecomposition tail;
    try {
      tail = mindeg_decompose(x, rest, seed ^ (0x9e3779b97f4a7c15ULL * (attempt + 1)), sub);
    } catch (const SamplingFailure&) {
      continue;
    }
    const auto fixed = out.points.size();
    out.points.insert(out.points.end(), tail.points.begin(), tail.points.end());
    out.params.insert(out.params.end(), tail.params.begin(), tail.params.end());
    if (finish(out, p, x, options, fixed)) return out;
  }
  throw SamplingFailure("mindeg_decompose_extended: no valid draw within budget");
}

int canonical_rank(int num_vars, int degree) {
  if (num_vars == 2 && degree % 2 == 1) return (degree + 1) / 2;
  if (num_vars == 4 && degree == 3) return 5;
  if (num_vars == 3 && degree == 5) return 7;
  throw InvalidArgument("no canonical decomposition for " + std::to_string(num_vars) +
                        " variables in degree " + std::to_string(degree));
}

WaringDecomposition sample_vsp(const HomogeneousPoly& f, int h, Seed seed,
                               const SampleOptions& options,
                               std::vector<LinearForm>* drawn) {
  const int h_bar = canonical_rank(f.num_vars(), f.degree());
  if (h < h_bar) {
    throw InvalidArgument("sample_vsp: h must be at least " + std::to_string(h_bar));
  }
  const double scale = f.norm();
  if (!(scale > 0.0)) throw InvalidArgument("sample_vsp: zero form");
  if (h == h_bar) {
    if (drawn) drawn->clear();
    return canonical_decompose(f, seed);
  }
  const int d = f.degree();
  const HomogeneousPoly unit = f.scaled(1.0 / scale);
  for (int attempt = 0; attempt < options.budget; ++attempt) {
    auto rng = make_rng(seed, {0x767370ULL, static_cast<std::uint64_t>(attempt)});
    cplx alpha = complex_gaussian(rng);
    while (std::abs(alpha) < 1e-3) alpha = complex_gaussian(rng);
    std::vector<WaringTerm> extra;
    HomogeneousPoly g = unit.scaled(alpha);
    for (int i = 0; i < h - h_bar; ++i) {
      Vector l = complex_gaussian(rng, f.num_vars());
      l /= l.norm();
      const cplx lambda = complex_gaussian(rng);
      const LinearForm form(l);
      g = g + power_of_linear(form, d).scaled(lambda);
      extra.push_back({-lambda * scale / alpha, form});
    }
    try {
      // F = (|F| / alpha) G - sum (|F| lambda_i / alpha) l_i^d
      const WaringDecomposition dg = canonical_decompose(g, seed + 1 + attempt);
      std::vector<WaringTerm> terms;
      for (const auto& t : dg.terms()) terms.push_back({t.weight * scale / alpha, t.form});
      terms.insert(terms.end(), extra.begin(), extra.end());
      WaringDecomposition dec(d, std::move(terms));
      if (residual(f, dec) <= options.residual_tol) {
        if (drawn) {
          drawn->clear();
          for (const auto& t : extra) drawn->push_back(t.form);
        }
        return dec;
      }
    } catch (const DegenerateInput&) {
    } catch (const NoConvergence&) {
    }
  }
  throw SamplingFailure("sample_vsp: no valid draw within budget");
}

WaringDecomposition extend_decomposition(const HomogeneousPoly& f,
                                         const WaringDecomposition& dec, int h_new,
                                         Seed seed, const SampleOptions& options) {
  const int h = static_cast<int>(dec.size());
  if (h_new < h) throw InvalidArgument("extend_decomposition: h' must be >= h");
  if (dec.degree() != f.degree()) throw InvalidArgument("extend_decomposition: degree mismatch");
  if (h_new == h) return dec;
  const int d = f.degree();
  for (int attempt = 0; attempt < options.budget; ++attempt) {
    auto rng = make_rng(seed, {0x657874ULL, static_cast<std::uint64_t>(attempt)});
    std::vector<LinearForm> forms;
    for (const auto& t : dec.terms()) forms.push_back(t.form);
    for (int i = h; i < h_new; ++i) forms.emplace_back(complex_gaussian(rng, f.num_vars()));
    DenseMatrix powers(static_cast<Eigen::Index>(forms.size()),
                       static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < forms.size(); ++i) {
      powers.row(static_cast<Eigen::Index>(i)) = power_of_linear(forms[i], d).coeffs().transpose();
    }
    if (rank_with_tol(powers, 1e-10) != h_new) continue;
    const auto weights = fit_weights(f, forms);
    std::vector<WaringTerm> terms;
    for (std::size_t i = 0; i < forms.size(); ++i) terms.push_back({weights[i], forms[i]});
    try {
      WaringDecomposition out(d, std::move(terms));
      if (residual(f, out) <= options.residual_tol) return out;
    } catch (const DegenerateInput&) {
    }
  }
  throw SamplingFailure("extend_decomposition: ill-conditioned refit within budget");
}

}  // namespace waringlab
