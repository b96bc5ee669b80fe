#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "waringlab/error.hpp"
#include "waringlab/vspsampler.hpp"

using namespace waringlab;
using namespace testsupport;

namespace {

Vector unit_point(int size, std::mt19937_64& rng) {
  const Vector v = random_vector(size, rng);
  return v / v.norm();
}

Eigen::MatrixXcd point_matrix(const std::vector<ProjectivePoint>& pts) {
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(pts.front().size()),
                     static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = pts[i].coords();
  return a;
}

bool same_form_set(const WaringDecomposition& a, const WaringDecomposition& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& ta : a.terms()) {
    bool found = false;
    for (const auto& tb : b.terms()) {
      found = found || fubini_study(ta.form.coeffs(), tb.form.coeffs()) < tol;
    }
    if (!found) return false;
  }
  return true;
}

// Coefficients of prod_i (t_i s - s_i t) in the basis s^m, s^(m-1) t, ..., t^m.
Vector vanishing_form(const std::vector<Vector>& params) {
  Vector c = Vector::Zero(1);
  c(0) = 1.0;
  for (const auto& st : params) {
    Vector next = Vector::Zero(c.size() + 1);
    for (Eigen::Index j = 0; j < c.size(); ++j) {
      next(j) += st(1) * c(j);
      next(j + 1) -= st(0) * c(j);
    }
    c = next;
  }
  return c;
}

}  // namespace

TEST_CASE("quadric in P3: a line through p meets Q twice") {
  const auto q = ParamVariety::quadric(3);
  const auto s = q.quadric_matrix();
  std::mt19937_64 rng(1);
  for (Seed seed = 0; seed < 20; ++seed) {
    const Vector p = unit_point(4, rng);
    const auto out = mindeg_decompose(q, p, seed);
    REQUIRE(out.points.size() == 2);
    CHECK(out.params.empty());
    CHECK(out.span_residual < 1e-8);
    CHECK(out.variety_residual < 1e-8);
    Vector recon = Vector::Zero(4);
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& x = out.points[i].coords();
      CHECK(std::abs((x.transpose() * s * x)(0, 0)) < 1e-8);
      recon += out.weights[i] * x;
    }
    CHECK((recon - p).norm() < 1e-8);
  }
}

TEST_CASE("twisted cubic: plane sections and Vieta") {
  const auto c = ParamVariety::rational_normal_curve(3);
  std::mt19937_64 rng(2);
  for (Seed seed = 0; seed < 20; ++seed) {
    const Vector p = unit_point(4, rng);
    const auto out = mindeg_decompose(c, p, seed);
    REQUIRE(out.points.size() == 3);
    REQUIRE(out.params.size() == 3);
    CHECK(out.span_residual < 1e-8);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(out.points[i].approx_equal(c.embed(out.params[i]), 1e-12));
    }
    // The plane whose pullback is prod (t_i s - s_i t) contains p.
    const Vector w = vanishing_form(out.params);
    CHECK(std::abs(w.cwiseProduct(p).sum()) < 1e-8 * w.norm());
    for (const auto& pt : out.points) {
      CHECK(std::abs(w.cwiseProduct(pt.coords()).sum()) < 1e-10 * w.norm());
    }
  }
}

TEST_CASE("slicing the rational normal curve agrees with the catalecticant") {
  std::mt19937_64 rng(3);
  for (int h : {2, 3}) {
    CAPTURE(h);
    const int d = 2 * h - 1;
    const auto curve = ParamVariety::rational_normal_curve(d);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_poly(2, d, rng);
      const auto dec = decompose_binary(f);
      const Vector p = f.normalized_coeffs();

      // Hyperplane pulling back to g * m, with g the kernel form.
      const DenseMatrix k = nullspace(catalecticant(f, h - 1, h));
      REQUIRE(k.cols() == 1);
      const Vector g = k.col(0);
      const Vector m = random_vector(h, rng);
      Vector w = Vector::Zero(d + 1);
      for (int i = 0; i <= h; ++i)
        for (int j = 0; j < h; ++j) w(i + j) += g(i) * m(j);

      MindegOptions opt;
      opt.hyperplane = w;
      const auto out = mindeg_decompose(curve, p, 7, opt);
      REQUIRE(out.points.size() == static_cast<std::size_t>(d));
      CHECK(out.span_residual < 1e-8);

      double wmax = 0.0;
      for (auto x : out.weights) wmax = std::max(wmax, std::abs(x));
      int carried = 0;
      for (std::size_t i = 0; i < out.points.size(); ++i) {
        if (std::abs(out.weights[i]) < 1e-8 * wmax) continue;
        ++carried;
        int hits = 0;
        for (const auto& t : dec.terms()) {
          hits += fubini_study(out.params[i], t.form.coeffs()) < 1e-8 ? 1 : 0;
        }
        CHECK(hits == 1);
      }
      CHECK(carried == h);
    }
  }
}

TEST_CASE("minimal-degree slicing validates its inputs") {
  const auto c = ParamVariety::rational_normal_curve(3);
  CHECK_THROWS_AS(mindeg_decompose(c, Vector::Ones(5), 1), InvalidArgument);
  CHECK_THROWS_AS(mindeg_decompose(c, Vector::Zero(4), 1), InvalidArgument);
  CHECK_THROWS_AS(mindeg_decompose(ParamVariety::grassmann(1, 3), Vector::Ones(6), 1),
                  InvalidArgument);
  MindegOptions opt;
  opt.hyperplane = Vector::Ones(4);
  Vector p(4);
  p << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(mindeg_decompose(c, p, 1, opt), InvalidArgument);
  CHECK(variety_degree(c) == 3);
  CHECK(variety_degree(ParamVariety::quadric(5)) == 2);
}

TEST_CASE("extended slicing") {
  std::mt19937_64 rng(4);

  SUBCASE("quadric, three points spanning a plane through p") {
    const auto q = ParamVariety::quadric(3);
    for (Seed seed = 0; seed < 10; ++seed) {
      const Vector p = unit_point(4, rng);
      const auto out = mindeg_decompose_extended(q, p, 3, seed);
      REQUIRE(out.points.size() == 3);
      CHECK(out.span_residual < 1e-8);
      CHECK(out.variety_residual < 1e-8);
      const auto a = point_matrix(out.points);
      CHECK(rank_with_tol(DenseMatrix(a)) == 3);
      Eigen::MatrixXcd with_p(4, 4);
      with_p << a, p;
      CHECK(rank_with_tol(DenseMatrix(with_p), 1e-8) == 3);
    }
  }

  SUBCASE("twisted cubic, four points reachable from each of four draws") {
    const auto c = ParamVariety::rational_normal_curve(3);
    for (Seed seed = 0; seed < 10; ++seed) {
      const Vector p = unit_point(4, rng);
      const auto out = mindeg_decompose_extended(c, p, 4, seed);
      REQUIRE(out.points.size() == 4);
      REQUIRE(out.params.size() == 4);
      CHECK(out.span_residual < 1e-8);
      for (std::size_t j = 0; j < 4; ++j) {
        // Drawing x_j first leaves p - w_j x_j in the plane of the other three.
        const Vector rest = p - out.weights[j] * out.points[j].coords();
        Eigen::MatrixXcd m(4, 4);
        int col = 0;
        for (std::size_t i = 0; i < 4; ++i) {
          if (i != j) m.col(col++) = out.points[i].coords();
        }
        m.col(3) = rest / rest.norm();
        CHECK(rank_with_tol(DenseMatrix(m), 1e-8) == 3);
      }
    }
  }

  SUBCASE("h equal to the degree is plain slicing") {
    const auto q = ParamVariety::quadric(3);
    const Vector p = unit_point(4, rng);
    const auto a = mindeg_decompose_extended(q, p, 2, 5);
    const auto b = mindeg_decompose(q, p, 5);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      CHECK(a.points[i].coords() == b.points[i].coords());
    }
    CHECK_THROWS_AS(mindeg_decompose_extended(q, p, 1, 5), InvalidArgument);
  }
}

TEST_CASE("canonical ranks") {
  CHECK(canonical_rank(2, 5) == 3);
  CHECK(canonical_rank(4, 3) == 5);
  CHECK(canonical_rank(3, 5) == 7);
  CHECK_THROWS_AS(canonical_rank(3, 4), InvalidArgument);
}

TEST_CASE("sampling VSP(F, 8) for a plane quintic keeps the drawn form") {
  std::mt19937_64 rng(5);
  const auto f = random_poly(3, 5, rng);
  std::vector<LinearForm> drawn;
  const auto dec = sample_vsp(f, 8, 11, {}, &drawn);
  CHECK(dec.size() == 8);
  CHECK(residual(f, dec) < 1e-6);
  REQUIRE(drawn.size() == 1);
  CHECK(contains_forms(dec, drawn, 1e-8));
}

TEST_CASE("sampling VSP(F, 6) for a cubic surface") {
  std::mt19937_64 rng(6);
  const auto f = random_poly(4, 3, rng);
  const auto dec = sample_vsp(f, 6, 3);
  CHECK(dec.size() == 6);
  CHECK(residual(f, dec) < 1e-6);
}

TEST_CASE("VSP(F, 7) of a plane quintic is a point") {
  std::mt19937_64 rng(7);
  const auto f = synthesize(random_terms(3, 7, rng), 5);
  const auto first = sample_vsp(f, 7, 0);
  for (Seed s = 1; s < 4; ++s) CHECK(same_terms(first, sample_vsp(f, 7, s), 1e-6));
}

TEST_CASE("samples above the canonical rank are distinct") {
  std::mt19937_64 rng(8);
  const auto f = random_poly(2, 5, rng);
  std::vector<WaringDecomposition> seen;
  for (Seed s = 0; s < 10; ++s) {
    auto dec = sample_vsp(f, 5, s);
    CHECK(dec.size() == 5);
    CHECK(residual(f, dec) < 1e-6);
    for (const auto& other : seen) CHECK_FALSE(same_form_set(dec, other, 1e-6));
    seen.push_back(std::move(dec));
  }
  CHECK(same_form_set(sample_vsp(f, 5, 3), seen[3], 1e-12));
  CHECK_THROWS_AS(sample_vsp(f, 2, 0), InvalidArgument);
}

TEST_CASE("extending decompositions") {
  std::mt19937_64 rng(9);
  const auto terms = random_terms(3, 7, rng);
  const auto f = synthesize(terms, 5);
  const WaringDecomposition dec(5, terms);
  std::vector<LinearForm> forms;
  for (const auto& t : dec.terms()) forms.push_back(t.form);

  const auto ext = extend_decomposition(f, dec, 8, 1);
  CHECK(ext.size() == 8);
  CHECK(residual(f, ext) < 1e-6);
  CHECK(contains_forms(ext, forms, 1e-12));

  const auto same = extend_decomposition(f, dec, 7, 1);
  CHECK(same_terms(same, dec, 1e-12));

  auto step = dec;
  for (int i = 0; i < 3; ++i) step = extend_decomposition(f, step, 8 + i, 20 + i);
  const auto jump = extend_decomposition(f, dec, 10, 30);
  const std::initializer_list<const WaringDecomposition*> both{&step, &jump};
  for (const auto* e : both) {
    CHECK(e->size() == 10);
    CHECK(residual(f, *e) < 1e-6);
    CHECK(contains_forms(*e, forms, 1e-12));
  }
  CHECK_FALSE(same_form_set(step, jump, 1e-6));
  CHECK_THROWS_AS(extend_decomposition(f, dec, 6, 1), InvalidArgument);
}
