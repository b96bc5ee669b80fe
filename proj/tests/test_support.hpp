#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "waringlab/polycore.hpp"
#include "waringlab/waring.hpp"

namespace testsupport {

using namespace waringlab;

inline cplx gauss_c(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

inline Vector random_vector(int n, std::mt19937_64& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss_c(rng);
  return v;
}

inline std::vector<WaringTerm> random_terms(int num_vars, int h, std::mt19937_64& rng) {
  std::vector<WaringTerm> terms;
  for (int i = 0; i < h; ++i) {
    terms.push_back({gauss_c(rng), LinearForm(random_vector(num_vars, rng))});
  }
  return terms;
}

inline HomogeneousPoly synthesize(const std::vector<WaringTerm>& terms, int d) {
  HomogeneousPoly f(terms.front().form.num_vars(), d);
  for (const auto& t : terms) f = f + power_of_linear(t.form, d).scaled(t.weight);
  return f;
}

inline HomogeneousPoly random_poly(int num_vars, int d, std::mt19937_64& rng) {
  const auto count = monomials(num_vars, d).size();
  return HomogeneousPoly(num_vars, d, random_vector(static_cast<int>(count), rng));
}

// Every form in `forms` appears (projectively) in `dec`.
inline bool contains_forms(const WaringDecomposition& dec, const std::vector<LinearForm>& forms,
                           double tol) {
  for (const auto& f : forms) {
    bool found = false;
    for (const auto& t : dec.terms()) {
      if (fubini_study(t.form.coeffs(), f.coeffs()) < tol) found = true;
    }
    if (!found) return false;
  }
  return true;
}

inline HomogeneousPoly fermat_plus() {
  HomogeneousPoly f(4, 3);
  for (int i = 0; i < 4; ++i) {
    Vector e = Vector::Zero(4);
    e(i) = 1.0;
    f = f + power_of_linear(LinearForm(e), 3);
  }
  return f + power_of_linear(LinearForm(Vector::Ones(4)), 3);
}

// x0^3 + x0^2 x1 - x0 x1^2 + x1^3
inline HomogeneousPoly sample_cubic() {
  return HomogeneousPoly::from_terms(
      2, 3, {{{3, 0}, 1.0}, {{2, 1}, 1.0}, {{1, 2}, -1.0}, {{0, 3}, 1.0}});
}

}  // namespace testsupport
