#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "waringlab/error.hpp"
#include "waringlab/waring.hpp"

using namespace waringlab;
using namespace testsupport;

namespace {

DenseMatrix random_matrix(int n, std::mt19937_64& rng) {
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss_c(rng);
  return a;
}

// Terms of `dec` with forms pushed through v -> A^T v.
WaringDecomposition transform_forms(const WaringDecomposition& dec, const DenseMatrix& a) {
  std::vector<WaringTerm> out;
  for (const auto& t : dec.terms()) {
    out.push_back({t.weight, LinearForm(Vector(a.transpose() * t.form.coeffs()))});
  }
  return WaringDecomposition(dec.degree(), out);
}

WaringDecomposition perturb_first_form(const WaringDecomposition& dec, double eps) {
  auto terms = dec.terms();
  Vector v = terms[0].form.coeffs();
  for (int i = 0; i < v.size(); ++i) v(i) += eps * (i % 2 ? 1.0 : -1.0);
  terms[0].form = LinearForm(v);
  return WaringDecomposition(dec.degree(), terms);
}

}  // namespace

TEST_CASE("binary example against the quadratic-formula oracle") {
  const auto f = sample_cubic();
  const auto dec = decompose_binary(f);
  REQUIRE(dec.size() == 2);
  CHECK(residual(f, dec) < 1e-12);

  // Kernel form -a^2 + 5ab + 2b^2 vanishes at a/b = (5 +- sqrt 33)/2, the
  // forms being a x0 + x1.
  const double r1 = (5.0 - std::sqrt(33.0)) / 2.0;
  const double r2 = (5.0 + std::sqrt(33.0)) / 2.0;
  // Weights with monic forms: w1 + w2 = 1, w1 r1^3 + w2 r2^3 = 1.
  const double w2 = (1.0 - r1 * r1 * r1) / (r2 * r2 * r2 - r1 * r1 * r1);
  const double w1 = 1.0 - w2;

  const auto monic = dec.monic_last_terms();
  const auto& small = std::abs(monic[0].form.coeffs()(0)) < 1.0 ? monic[0] : monic[1];
  const auto& large = std::abs(monic[0].form.coeffs()(0)) < 1.0 ? monic[1] : monic[0];
  CHECK(std::abs(small.form.coeffs()(0) - r1) < 1e-10);
  CHECK(std::abs(large.form.coeffs()(0) - r2) < 1e-10);
  CHECK(std::abs(small.weight - w1) < 1e-10);
  CHECK(std::abs(large.weight - w2) < 1e-10);

  // Rounded reference values, to four decimals.
  CHECK(std::abs(small.form.coeffs()(0) - (-0.3722812)) < 1e-4);
  CHECK(std::abs(large.form.coeffs()(0) - 5.3722813) < 1e-4);
  CHECK(std::abs(small.weight - 0.99322) < 1e-4);
  CHECK(std::abs(large.weight - 0.00678) < 1e-4);

  const auto cert = verify_canonical(f, dec);
  CHECK(cert.pass);
  CHECK(cert.measured_rank == 2);
}

TEST_CASE("binary sum of two cubes") {
  const auto f = HomogeneousPoly::from_terms(2, 3, {{{3, 0}, 2.0}, {{1, 2}, 6.0}});
  const auto dec = decompose_binary(f);
  const WaringDecomposition want(
      3, {{1.0, LinearForm(Vector::Ones(2))},
          {1.0, LinearForm((Vector(2) << 1.0, -1.0).finished())}});
  CHECK(same_terms(dec, want, 1e-10));
}

TEST_CASE("binary rejects degenerate and malformed inputs") {
  CHECK_THROWS_AS(decompose_binary(HomogeneousPoly::from_terms(2, 3, {{{3, 0}, 1.0}})),
                  DegenerateInput);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(decompose_binary(random_poly(2, 4, rng)), InvalidArgument);
  CHECK_THROWS_AS(decompose_binary(random_poly(3, 3, rng)), InvalidArgument);
  // A binary quintic of rank 2 has a two-dimensional kernel.
  CHECK_THROWS_AS(decompose_binary(synthesize(random_terms(2, 2, rng), 5)), DegenerateInput);
}

TEST_CASE("binary term count on random forms of odd degree up to 21") {
  std::mt19937_64 rng(2024);
  for (int d = 1; d <= 21; d += 2) {
    CAPTURE(d);
    const auto f = random_poly(2, d, rng);
    const auto dec = decompose_binary(f);
    CHECK(dec.size() == static_cast<std::size_t>((d + 1) / 2));
    CHECK(residual(f, dec) <= 1e-8);
  }
}

TEST_CASE("binary round trip and equivariance") {
  std::mt19937_64 rng(99);
  for (int d : {3, 5, 7, 9}) {
    CAPTURE(d);
    const auto terms = random_terms(2, (d + 1) / 2, rng);
    const auto f = synthesize(terms, d);
    const WaringDecomposition truth(d, terms);
    const auto dec = decompose_binary(f);
    CHECK(same_terms(dec, truth, 1e-6));

    const cplx c = gauss_c(rng);
    CHECK(same_terms(decompose_binary(f.scaled(c)), truth.scaled(c), 1e-6));

    const auto a = random_matrix(2, rng);
    CHECK(same_terms(decompose_binary(substitute_linear(f, a)), transform_forms(truth, a), 1e-6));
  }
}

TEST_CASE("binary certificate rejects a perturbed form") {
  std::mt19937_64 rng(4);
  const auto f = synthesize(random_terms(2, 3, rng), 5);
  const auto dec = decompose_binary(f);
  CHECK(verify_canonical(f, dec).pass);
  CHECK_FALSE(verify_canonical(f, perturb_first_form(dec, 1e-2)).pass);
}

TEST_CASE("rank-2 locus of the Fermat-plus cubic") {
  const auto f = fermat_plus();
  const auto pts = rank2_locus(f, 5);
  REQUIRE(pts.size() == 10);

  // Triple intersections of the planes x_i = 0 and x0 + x1 + x2 + x3 = 0.
  std::vector<ProjectivePoint> want;
  for (int i = 0; i < 4; ++i) {
    Vector e = Vector::Zero(4);
    e(i) = 1.0;
    want.emplace_back(e);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      Vector v = Vector::Zero(4);
      v(i) = 1.0;
      v(j) = -1.0;
      want.emplace_back(v);
    }
  }
  for (const auto& w : want) {
    int hits = 0;
    for (const auto& p : pts) hits += p.approx_equal(w, 1e-8) ? 1 : 0;
    CHECK(hits == 1);
  }
  for (const auto& p : pts) CHECK(rank_with_tol(polar_quadric(f, p.coords()), 1e-6) == 2);
}

TEST_CASE("Fermat-plus pentahedron") {
  const auto f = fermat_plus();
  const auto [dec, witness] = decompose_pentahedral(f, 3);
  REQUIRE(dec.size() == 5);
  CHECK(residual(f, dec) < 1e-10);
  CHECK(witness.planes.size() == 5);

  std::vector<WaringTerm> truth;
  for (int i = 0; i < 4; ++i) {
    Vector e = Vector::Zero(4);
    e(i) = 1.0;
    truth.push_back({1.0, LinearForm(e)});
  }
  truth.push_back({1.0, LinearForm(Vector::Ones(4))});
  CHECK(same_terms(dec, WaringDecomposition(3, truth), 1e-8));
  // With unit-coefficient forms every weight is 1.
  for (const auto& t : dec.terms()) {
    const auto& c = t.form.coeffs();
    const cplx s = c(0) + c(1) + c(2) + c(3);
    CHECK(std::abs(t.weight * std::pow(std::abs(s) > 1.5 ? 0.5 : 1.0, 3) - 1.0) < 1e-8);
  }
}

TEST_CASE("group_coplanar rejects random points") {
  std::mt19937_64 rng(6);
  std::vector<ProjectivePoint> pts;
  for (int i = 0; i < 10; ++i) pts.emplace_back(random_vector(4, rng));
  CHECK_THROWS_AS(group_coplanar(pts), NoPentahedron);
  pts.pop_back();
  CHECK_THROWS_AS(group_coplanar(pts), InvalidArgument);
}

TEST_CASE("cones are not generic cubics") {
  const auto cone = HomogeneousPoly::from_terms(
      4, 3, {{{3, 0, 0, 0}, 1.0}, {{0, 3, 0, 0}, 1.0}, {{0, 0, 3, 0}, 1.0}});
  CHECK_THROWS_AS(rank2_locus(cone, 1), NonGenericCubic);
  CHECK_THROWS_AS(decompose_pentahedral(cone, 1), NonGenericCubic);
}

TEST_CASE("pentahedral round trip, witness and equivariance") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 4; ++trial) {
    CAPTURE(trial);
    const auto terms = random_terms(4, 5, rng);
    const auto f = synthesize(terms, 3);
    const WaringDecomposition truth(3, terms);
    const auto [dec, w] = decompose_pentahedral(f, 10 + trial);
    CHECK(same_terms(dec, truth, 1e-6));
    CHECK(residual(f, dec) < 1e-8);

    for (int p = 0; p < 5; ++p) {
      int row = 0;
      for (int q = 0; q < 10; ++q) row += w.incidence[p][q] ? 1 : 0;
      CHECK(row == 6);
      CHECK(w.collinear_triples[p] == 4);
    }
    for (int q = 0; q < 10; ++q) {
      int col = 0;
      for (int p = 0; p < 5; ++p) col += w.incidence[p][q] ? 1 : 0;
      CHECK(col == 3);
    }

    const auto cert = verify_canonical(f, dec);
    CHECK(cert.pass);
    CHECK(cert.measured_rank == 5);
    const auto bad = verify_canonical(f, perturb_first_form(dec, 1e-2));
    CHECK_FALSE(bad.pass);
    CHECK(bad.measured_rank == 6);

    const auto again = decompose_pentahedral(f, 777 + trial).first;
    CHECK(same_terms(dec, again, 1e-8));

    const cplx c = gauss_c(rng);
    CHECK(same_terms(decompose_pentahedral(f.scaled(c), 3).first, truth.scaled(c), 1e-6));

    const auto a = random_matrix(4, rng);
    CHECK(same_terms(decompose_pentahedral(substitute_linear(f, a), 4).first,
                     transform_forms(truth, a), 1e-6));
  }
}

TEST_CASE("group_coplanar serial and parallel agree") {
  std::mt19937_64 rng(8);
  const auto f = synthesize(random_terms(4, 5, rng), 3);
  const auto pts = rank2_locus(f, 1);
  const auto a = group_coplanar(pts, 1e-6, Exec::serial);
  const auto b = group_coplanar(pts, 1e-6, Exec::parallel);
  for (int p = 0; p < 5; ++p) CHECK(a.planes[p].coeffs() == b.planes[p].coeffs());
  CHECK(a.incidence == b.incidence);
}

TEST_CASE("quintic round trip, uniqueness and certificate") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 3; ++trial) {
    CAPTURE(trial);
    const auto terms = random_terms(3, 7, rng);
    const auto f = synthesize(terms, 5);
    const WaringDecomposition truth(5, terms);
    const auto dec = decompose_quintic(f, 100 + trial);
    REQUIRE(dec.size() == 7);
    CHECK(residual(f, dec) < 1e-8);
    CHECK(same_terms(dec, truth, 1e-6));
    CHECK(same_terms(dec, decompose_quintic(f, 9000 + trial), 1e-6));

    const auto cert = verify_canonical(f, dec);
    CHECK(cert.pass);
    CHECK(cert.measured_rank == 7);
    CHECK(cert.rank_gap == 0);
    const auto bad = verify_canonical(f, perturb_first_form(dec, 1e-2));
    CHECK_FALSE(bad.pass);
    CHECK(bad.measured_rank == 8);

    if (trial == 0) {
      const cplx c = gauss_c(rng);
      CHECK(same_terms(decompose_quintic(f.scaled(c), 5), truth.scaled(c), 1e-6));
    }
  }
}

TEST_CASE("quintic rejects a pure power") {
  const auto f = HomogeneousPoly::from_terms(3, 5, {{{5, 0, 0}, 1.0}});
  QuinticOptions opt;
  opt.max_starts = 16;
  bool rejected = false;
  try {
    decompose_quintic(f, 1, opt);
  } catch (const UniquenessViolated&) {
    rejected = true;
  } catch (const NoConvergence&) {
    rejected = true;
  }
  CHECK(rejected);
}

TEST_CASE("verify_canonical rejects unsupported shapes") {
  std::mt19937_64 rng(2);
  const auto terms = random_terms(3, 4, rng);
  const auto f = synthesize(terms, 4);
  CHECK_THROWS_AS(verify_canonical(f, WaringDecomposition(4, terms)), InvalidArgument);
}
