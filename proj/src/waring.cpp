#include "waringlab/waring.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "waringlab/error.hpp"
#include "waringlab/kernels.hpp"
#include "waringlab/random.hpp"

namespace waringlab {

namespace {

void require_shape(const HomogeneousPoly& f, int num_vars, int degree,
                   const char* who) {
  if (f.num_vars() != num_vars || f.degree() != degree) {
    throw InvalidArgument(std::string(who) + ": expected a form of degree " +
                          std::to_string(degree) + " in " +
                          std::to_string(num_vars) + " variables");
  }
}

HomogeneousPoly det3(const HomogeneousPoly m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// T[i][j][k] = d^3 F / dx_i dx_j dx_k for a cubic.
std::array<std::array<std::array<cplx, 4>, 4>, 4> third_partials(
    const HomogeneousPoly& f) {
  std::array<std::array<std::array<cplx, 4>, 4>, 4> t{};
  for (int i = 0; i < 4; ++i) {
    const auto fi = partial_derivative(f, i);
    for (int j = 0; j < 4; ++j) {
      const auto fij = partial_derivative(fi, j);
      for (int k = 0; k < 4; ++k) {
        t[i][j][k] = partial_derivative(fij, k).coeffs()[0];
      }
    }
  }
  return t;
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

// Rows L_i^power and all order-`order` partials of F, each scaled to unit
// norm; returns (rank of the L block, rank of the stack).
std::pair<int, int> span_ranks(const HomogeneousPoly& f,
                               const WaringDecomposition& dec, int power,
                               int order, double tol) {
  const int nv = f.num_vars();
  std::vector<Vector> l_rows, d_rows;
  for (const auto& t : dec.terms()) {
    const Vector r = power_of_linear(t.form, power).coeffs();
    l_rows.push_back(r / r.norm());
  }
  for (const auto& e : monomials(nv, order)) {
    HomogeneousPoly p = f;
    for (int v = 0; v < nv; ++v) {
      if (e[v] > 0) p = partial_derivative(p, v, e[v]);
    }
    if (p.norm() > 0.0) d_rows.push_back(p.coeffs() / p.norm());
  }
  const auto width = l_rows.front().size();
  DenseMatrix l_block(static_cast<Eigen::Index>(l_rows.size()), width);
  DenseMatrix stacked(static_cast<Eigen::Index>(l_rows.size() + d_rows.size()), width);
  Eigen::Index r = 0;
  for (const auto& v : l_rows) {
    l_block.row(r) = v.transpose();
    stacked.row(r++) = v.transpose();
  }
  for (const auto& v : d_rows) stacked.row(r++) = v.transpose();
  return {rank_with_tol(l_block, tol), rank_with_tol(stacked, tol)};
}

cplx eval_binary_kernel(const Vector& c, const Vector& form) {
  const auto h = static_cast<int>(c.size()) - 1;
  cplx acc = 0.0;
  for (int j = 0; j <= h; ++j) {
    acc += c[j] * std::pow(form[0], h - j) * std::pow(form[1], j);
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------

WaringDecomposition decompose_binary(const HomogeneousPoly& f,
                                     const BinaryOptions& options) {
  if (f.num_vars() != 2) {
    throw InvalidArgument("decompose_binary: form is not binary");
  }
  if (f.degree() % 2 == 0) {
    throw InvalidArgument("decompose_binary: degree must be odd");
  }
  const int d = f.degree();
  const int h = (d + 1) / 2;
  const DenseMatrix cat = catalecticant(f, h - 1, h);
  const DenseMatrix kernel = nullspace(cat, options.rank_tol);
  if (kernel.cols() != 1) {
    throw DegenerateInput("decompose_binary: catalecticant kernel has dimension " +
                          std::to_string(kernel.cols()) + ", expected 1");
  }
  const Vector c = kernel.col(0);
  const auto roots =
      binary_form_roots(std::span<const cplx>(c.data(), static_cast<std::size_t>(c.size())));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (fubini_study(roots[i], roots[j]) < options.distinct_tol) {
        throw DegenerateInput("decompose_binary: kernel form has a repeated root");
      }
    }
  }
  std::vector<LinearForm> forms;
  for (const auto& r : roots) forms.emplace_back(r);
  const auto weights = fit_weights(f, forms);
  std::vector<WaringTerm> terms;
  for (std::size_t i = 0; i < forms.size(); ++i) terms.push_back({weights[i], forms[i]});
  WaringDecomposition dec(d, std::move(terms));
  if (residual(f, dec) > options.residual_tol) {
    throw DegenerateInput("decompose_binary: residual above tolerance");
  }
  return dec;
}

// ---------------------------------------------------------------------------

DenseMatrix polar_quadric(const HomogeneousPoly& f, const Vector& xi) {
  require_shape(f, 4, 3, "polar_quadric");
  const auto t = third_partials(f);
  DenseMatrix q = DenseMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) q(j, k) += xi[i] * t[i][j][k];
    }
  }
  return q;
}

std::vector<ProjectivePoint> rank2_locus(const HomogeneousPoly& f, Seed seed,
                                         const PolySysOptions& options) {
  require_shape(f, 4, 3, "rank2_locus");
  const auto t = third_partials(f);
  // Entries of Q(xi) as linear forms in xi.
  std::vector<std::vector<HomogeneousPoly>> q;
  for (int j = 0; j < 4; ++j) {
    std::vector<HomogeneousPoly> row;
    for (int k = 0; k < 4; ++k) {
      Vector c(4);
      for (int i = 0; i < 4; ++i) c[i] = t[i][j][k];
      row.emplace_back(4, 1, std::move(c));
    }
    q.push_back(std::move(row));
  }
  // 3x3 minors; Q is symmetric so (rows, cols) and (cols, rows) agree.
  const auto triples = kernels::combinations(4, 3);
  std::vector<HomogeneousPoly> minors;
  for (std::size_t a = 0; a < triples.size(); ++a) {
    for (std::size_t b = a; b < triples.size(); ++b) {
      const HomogeneousPoly m[3][3] = {
          {q[triples[a][0]][triples[b][0]], q[triples[a][0]][triples[b][1]], q[triples[a][0]][triples[b][2]]},
          {q[triples[a][1]][triples[b][0]], q[triples[a][1]][triples[b][1]], q[triples[a][1]][triples[b][2]]},
          {q[triples[a][2]][triples[b][0]], q[triples[a][2]][triples[b][1]], q[triples[a][2]][triples[b][2]]}};
      minors.push_back(det3(m));
    }
  }
  std::vector<ProjectivePoint> points;
  try {
    points = polysys_solve(minors, 10, seed, options);
  } catch (const CountMismatch& e) {
    throw NonGenericCubic(std::string("rank2_locus: ") + e.what());
  }
  for (const auto& p : points) {
    if (rank_with_tol(polar_quadric(f, p.coords()), 1e-6) != 2) {
      throw NonGenericCubic("rank2_locus: polar quadric is not of rank 2");
    }
  }
  return points;
}

PentahedralWitness group_coplanar(const std::vector<ProjectivePoint>& points,
                                  double tol, Exec exec) {
  if (points.size() != 10) {
    throw InvalidArgument("group_coplanar: expected 10 points");
  }
  DenseMatrix a(10, 4);
  for (int i = 0; i < 10; ++i) {
    if (points[static_cast<std::size_t>(i)].size() != 4) {
      throw InvalidArgument("group_coplanar: points must lie in P^3");
    }
    a.row(i) = points[static_cast<std::size_t>(i)].coords().transpose();
  }
  const auto sextuples = kernels::rank_deficient_subsets(a, 6, 3, tol, exec);
  if (sextuples.size() != 5) {
    throw NoPentahedron("group_coplanar: " + std::to_string(sextuples.size()) +
                        " coplanar sextuples, expected 5");
  }
  struct Plane {
    LinearForm form;
    std::vector<int> members;
  };
  std::vector<Plane> planes;
  for (const auto& s : sextuples) {
    DenseMatrix sub(6, 4);
    for (int r = 0; r < 6; ++r) sub.row(r) = a.row(s[static_cast<std::size_t>(r)]);
    const DenseMatrix k = nullspace(sub, tol);
    if (k.cols() != 1) {
      throw NoPentahedron("group_coplanar: sextuple does not span a plane");
    }
    planes.push_back({LinearForm(k.col(0)).normalized().second, s});
  }
  std::sort(planes.begin(), planes.end(), [](const Plane& x, const Plane& y) {
    return lex_less(x.form.coeffs(), y.form.coeffs());
  });

  PentahedralWitness w;
  w.rank2_points = points;
  std::array<int, 10> per_point{};
  for (int p = 0; p < 5; ++p) {
    const auto& pl = planes[static_cast<std::size_t>(p)];
    w.planes.push_back(pl.form);
    for (int idx : pl.members) {
      w.incidence[static_cast<std::size_t>(p)][static_cast<std::size_t>(idx)] = true;
      ++per_point[static_cast<std::size_t>(idx)];
    }
    DenseMatrix sub(6, 4);
    for (int r = 0; r < 6; ++r) {
      sub.row(r) = a.row(pl.members[static_cast<std::size_t>(r)]);
    }
    w.collinear_triples[static_cast<std::size_t>(p)] = static_cast<int>(
        kernels::rank_deficient_subsets(sub, 3, 2, tol, Exec::serial).size());
  }
  for (int c : per_point) {
    if (c != 3) throw NoPentahedron("group_coplanar: a point is not on exactly 3 planes");
  }
  for (int c : w.collinear_triples) {
    if (c != 4) {
      throw NoPentahedron("group_coplanar: a plane does not carry 4 collinear triples");
    }
  }
  return w;
}

std::pair<WaringDecomposition, PentahedralWitness> decompose_pentahedral(
    const HomogeneousPoly& f, Seed seed, const PentahedralOptions& options) {
  require_shape(f, 4, 3, "decompose_pentahedral");
  auto witness = group_coplanar(rank2_locus(f, seed, options.solver),
                                options.coplanar_tol, options.solver.exec);
  const auto weights = fit_weights(f, witness.planes);
  std::vector<WaringTerm> terms;
  for (std::size_t i = 0; i < witness.planes.size(); ++i) {
    terms.push_back({weights[i], witness.planes[i]});
  }
  WaringDecomposition dec(3, std::move(terms));
  if (residual(f, dec) > options.residual_tol) {
    throw NonGenericCubic("decompose_pentahedral: residual above tolerance");
  }
  return {std::move(dec), std::move(witness)};
}

// ---------------------------------------------------------------------------

bool same_terms(const WaringDecomposition& a, const WaringDecomposition& b,
                double tol) {
  if (a.size() != b.size() || a.degree() != b.degree()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& ta : a.terms()) {
    std::size_t best = b.size();
    double best_d = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = fubini_study(ta.form.coeffs(), b.terms()[j].form.coeffs());
      if (best == b.size() || dist < best_d) {
        best = j;
        best_d = dist;
      }
    }
    if (best == b.size() || best_d > tol) return false;
    const cplx wb = b.terms()[best].weight;
    const double scale = std::max({std::abs(ta.weight), std::abs(wb), 1e-300});
    if (std::abs(ta.weight - wb) > tol * scale) return false;
    used[best] = true;
  }
  return true;
}

WaringDecomposition decompose_quintic(const HomogeneousPoly& f, Seed seed,
                                      const QuinticOptions& options) {
  require_shape(f, 3, 5, "decompose_quintic");
  constexpr int kTerms = 7;
  const double scale = f.norm();
  if (!(scale > 0.0)) throw InvalidArgument("decompose_quintic: zero form");
  const kernels::PowerSumProblem problem(3, 5, kTerms, f.coeffs() / scale);
  const kernels::LmSettings settings{options.lm_iterations, options.residual_tol};
  const double radius = options.start_radius * std::pow(static_cast<double>(kTerms), -0.1);

  std::optional<WaringDecomposition> reference;
  for (int first = 0; first < options.max_starts; first += options.batch_size) {
    const int count = std::min(options.batch_size, options.max_starts - first);
    std::vector<Vector> starts;
    for (int i = 0; i < count; ++i) {
      auto rng = make_rng(seed, {0x71756eULL, static_cast<std::uint64_t>(first + i)});
      Vector z = complex_gaussian(rng, 3 * kTerms);
      for (int t = 0; t < kTerms; ++t) {
        z.segment(3 * t, 3) *= radius / z.segment(3 * t, 3).norm();
      }
      starts.push_back(std::move(z));
    }
    for (const auto& o : kernels::lm_batch(problem, starts, settings, options.exec)) {
      if (!o.converged) continue;
      std::vector<WaringTerm> terms;
      bool collapsed = false;
      for (int t = 0; t < kTerms; ++t) {
        const Vector l = o.params.segment(3 * t, 3);
        if (l.norm() < 1e-6) collapsed = true;
        if (collapsed) break;
        terms.push_back({cplx(1.0), LinearForm(l)});
      }
      if (collapsed) continue;
      WaringDecomposition dec(5, std::move(terms), true);
      if (dec.degenerate()) continue;
      if (!reference) {
        reference = std::move(dec);
        continue;
      }
      if (!same_terms(*reference, dec, options.agreement_tol)) {
        throw UniquenessViolated(
            "decompose_quintic: two converged starts disagree; input is not general");
      }
      std::vector<LinearForm> forms;
      for (const auto& t : reference->terms()) forms.push_back(t.form);
      const auto weights = fit_weights(f, forms);
      std::vector<WaringTerm> out;
      for (std::size_t i = 0; i < forms.size(); ++i) out.push_back({weights[i], forms[i]});
      WaringDecomposition result(5, std::move(out));
      if (residual(f, result) > options.residual_tol) {
        throw NoConvergence("decompose_quintic: refit residual above tolerance");
      }
      if (!verify_canonical(f, result).pass) {
        throw UniquenessViolated("decompose_quintic: span certificate failed");
      }
      return result;
    }
  }
  throw NoConvergence("decompose_quintic: fewer than two converged starts in " +
                      std::to_string(options.max_starts));
}

// ---------------------------------------------------------------------------

CanonicalCertificate verify_canonical(const HomogeneousPoly& f,
                                      const WaringDecomposition& dec,
                                      double rank_tol, double kernel_tol) {
  const int nv = f.num_vars();
  const int d = f.degree();
  const int h = static_cast<int>(dec.size());
  if (dec.degree() != d || (h > 0 && dec.num_vars() != nv)) {
    throw InvalidArgument("verify_canonical: decomposition does not match F");
  }
  CanonicalCertificate cert;
  cert.expected_rank = h;
  if (nv == 3 && d == 5 && h == 7) {
    const auto [rl, rs] = span_ranks(f, dec, 3, 2, rank_tol);
    cert.measured_rank = rs;
    cert.pass = rl == h && rs == h;
  } else if (nv == 4 && d == 3 && h == 5) {
    const auto [rl, rs] = span_ranks(f, dec, 2, 1, rank_tol);
    cert.measured_rank = rs;
    cert.pass = rl == h && rs == h;
  } else if (nv == 2 && d % 2 == 1 && h == (d + 1) / 2) {
    const DenseMatrix cat = catalecticant(f, h - 1, h);
    cert.measured_rank = rank_with_tol(cat, kDefaultRankTol);
    const DenseMatrix kernel = nullspace(cat, kDefaultRankTol);
    if (kernel.cols() == 1) {
      const Vector c = kernel.col(0);
      for (const auto& t : dec.terms()) {
        cert.kernel_residual =
            std::max(cert.kernel_residual, std::abs(eval_binary_kernel(c, t.form.coeffs())));
      }
      cert.pass = cert.measured_rank == h && cert.kernel_residual <= kernel_tol;
    }
  } else {
    throw InvalidArgument("verify_canonical: unsupported (n, d, h)");
  }
  cert.rank_gap = cert.measured_rank - cert.expected_rank;
  return cert;
}

}  // namespace waringlab
