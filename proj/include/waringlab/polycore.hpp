#pragma once

// Homogeneous polynomials over C in a dense graded-lexicographic basis,
// powers of linear forms, catalecticant matrices and Waring decompositions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "waringlab/types.hpp"

namespace waringlab {

/// Number of degree-`d` monomials in `n + 1` variables, i.e. C(n+d, d).
/// Requires n >= 1 and d >= 1; throws Overflow past int64.
std::int64_t monomial_count(int n, int d);

/// Exact binomial coefficient with overflow checking.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// d! / (e_0! ... e_n!) for an exponent tuple summing to d.
double multinomial(const Exponent& e);

/// All exponent tuples of total degree `degree` in `num_vars` variables in
/// graded-lexicographic order: x0^d, x0^(d-1) x1, ..., x_n^d.
std::vector<Exponent> monomials(int num_vars, int degree);

/// Position of `e` inside monomials(e.size(), sum(e)).
std::size_t monomial_index(const Exponent& e);

enum class ScalarField { real, complex };

class HomogeneousPoly {
 public:
  /// Zero form.
  HomogeneousPoly(int num_vars, int degree);
  HomogeneousPoly(int num_vars, int degree, Vector coeffs);

  static HomogeneousPoly from_terms(
      int num_vars, int degree,
      const std::vector<std::pair<Exponent, cplx>>& terms);

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  const Vector& coeffs() const { return coeffs_; }
  std::size_t size() const { return static_cast<std::size_t>(coeffs_.size()); }

  cplx coeff(const Exponent& e) const;
  /// Real when every imaginary part is exactly zero.
  ScalarField field() const;
  double norm() const { return coeffs_.norm(); }

  cplx operator()(std::span<const cplx> x) const;
  cplx operator()(const Vector& x) const;

  HomogeneousPoly operator+(const HomogeneousPoly& other) const;
  HomogeneousPoly operator-(const HomogeneousPoly& other) const;
  HomogeneousPoly operator*(const HomogeneousPoly& other) const;
  HomogeneousPoly scaled(cplx factor) const;

  /// Coefficients divided by the multinomial factors, so that a pure power
  /// (a . x)^d has normalized coefficients a^e.
  Vector normalized_coeffs() const;

 private:
  int num_vars_;
  int degree_;
  Vector coeffs_;
};

/// Linear form sum_i c_i x_i. Stores the coefficients as given; use
/// normalized() for the canonical projective representative.
class LinearForm {
 public:
  explicit LinearForm(Vector coeffs);

  const Vector& coeffs() const { return coeffs_; }
  int num_vars() const { return static_cast<int>(coeffs_.size()); }

  /// Returns (s, N) with this = s * N, where N has unit norm and its first
  /// non-negligible coordinate is real positive.
  std::pair<cplx, LinearForm> normalized() const;

 private:
  Vector coeffs_;
};

/// Unit-norm, phase-fixed representative of a nonzero vector, and the scale
/// with v = scale * representative.
std::pair<cplx, Vector> normalize_phase(const Vector& v);

HomogeneousPoly partial_derivative(const HomogeneousPoly& f, int var,
                                   int order = 1);

HomogeneousPoly power_of_linear(const LinearForm& l, int d);

/// Catalecticant with one row per order-`a` normalized differential
/// operator and one column per degree-`b` monomial; entry (alpha, beta) is
/// the normalized coefficient of x^(alpha+beta). Requires a + b = deg f.
DenseMatrix catalecticant(const HomogeneousPoly& f, int a, int b);

/// f(A x): substitutes x_i -> sum_j A(i, j) x_j.
HomogeneousPoly substitute_linear(const HomogeneousPoly& f,
                                  const DenseMatrix& a);

struct WaringTerm {
  cplx weight;
  LinearForm form;
};

/// F = sum_i weight_i * form_i^d with forms stored normalized and sorted
/// lexicographically by coefficients.
class WaringDecomposition {
 public:
  /// Throws DegenerateInput on projectively repeated forms unless
  /// `allow_degenerate` is set.
  WaringDecomposition(int degree, std::vector<WaringTerm> terms,
                      bool allow_degenerate = false);

  int degree() const { return degree_; }
  int num_vars() const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<WaringTerm>& terms() const { return terms_; }
  bool degenerate() const { return degenerate_; }

  WaringDecomposition scaled(cplx factor) const;

  /// Forms rescaled so that their last coefficient is 1, weights adjusted.
  /// Throws InvalidArgument when some form has a vanishing last coefficient.
  std::vector<WaringTerm> monic_last_terms() const;

  /// Throws NotReal when some weight or form coefficient has an imaginary
  /// part larger than `tol`.
  void require_real(double tol) const;

 private:
  int degree_;
  std::vector<WaringTerm> terms_;
  bool degenerate_ = false;
};

HomogeneousPoly recompose(const WaringDecomposition& dec);

/// ||F - recompose(dec)|| / ||F||. Throws InvalidArgument on degree or
/// variable mismatch, or when F is zero.
double residual(const HomogeneousPoly& f, const WaringDecomposition& dec);

/// Weights minimizing ||F - sum w_i L_i^d|| for fixed forms.
std::vector<cplx> fit_weights(const HomogeneousPoly& f,
                              std::span<const LinearForm> forms);

/// Fubini-Study angle between the lines spanned by u and v.
double fubini_study(const Vector& u, const Vector& v);

}  // namespace waringlab
