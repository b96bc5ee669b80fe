#include "waringlab/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "waringlab/error.hpp"

namespace waringlab {

namespace {

constexpr double kPhaseThreshold = 1e-10;
constexpr double kDuplicateAngle = 1e-8;

std::size_t count_monomials(int num_vars, int degree) {
  return static_cast<std::size_t>(binomial(num_vars - 1 + degree, degree));
}

void enumerate(int var, int num_vars, int remaining, Exponent& cur,
               std::vector<Exponent>& out) {
  if (var == num_vars - 1) {
    cur[var] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[var] = k;
    enumerate(var + 1, num_vars, remaining - k, cur, out);
  }
}

int exponent_sum(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Falling factorial k (k-1) ... (k-order+1).
double falling(int k, int order) {
  double r = 1.0;
  for (int i = 0; i < order; ++i) r *= static_cast<double>(k - i);
  return r;
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

}  // namespace

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) {
    throw InvalidArgument("binomial: need 0 <= k <= n");
  }
  k = std::min(k, n - k);
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::int64_t>::max()) {
      throw Overflow("binomial(" + std::to_string(n) + ", " +
                     std::to_string(k) + ") exceeds int64");
    }
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t monomial_count(int n, int d) {
  if (n < 1 || d < 1) {
    throw InvalidArgument("monomial_count: need n >= 1 and d >= 1");
  }
  return binomial(static_cast<std::int64_t>(n) + d, d);
}

double multinomial(const Exponent& e) {
  double r = 1.0;
  int running = 0;
  for (int ei : e) {
    for (int j = 1; j <= ei; ++j) {
      ++running;
      r = r * running / j;
    }
  }
  return r;
}

std::vector<Exponent> monomials(int num_vars, int degree) {
  if (num_vars < 1 || degree < 0) {
    throw InvalidArgument("monomials: need num_vars >= 1 and degree >= 0");
  }
  std::vector<Exponent> out;
  out.reserve(count_monomials(num_vars, degree));
  Exponent cur(num_vars, 0);
  enumerate(0, num_vars, degree, cur, out);
  return out;
}

std::size_t monomial_index(const Exponent& e) {
  const int nv = static_cast<int>(e.size());
  int remaining = exponent_sum(e);
  std::size_t idx = 0;
  for (int i = 0; i + 1 < nv; ++i) {
    for (int k = e[i] + 1; k <= remaining; ++k) {
      idx += count_monomials(nv - i - 1, remaining - k);
    }
    remaining -= e[i];
  }
  return idx;
}

// ---------------------------------------------------------------------------
// HomogeneousPoly

HomogeneousPoly::HomogeneousPoly(int num_vars, int degree)
    : num_vars_(num_vars), degree_(degree) {
  if (num_vars < 1 || degree < 0) {
    throw InvalidArgument("HomogeneousPoly: need num_vars >= 1, degree >= 0");
  }
  coeffs_ = Vector::Zero(static_cast<Eigen::Index>(
      count_monomials(num_vars, degree)));
}

HomogeneousPoly::HomogeneousPoly(int num_vars, int degree, Vector coeffs)
    : num_vars_(num_vars), degree_(degree), coeffs_(std::move(coeffs)) {
  if (num_vars < 1 || degree < 0) {
    throw InvalidArgument("HomogeneousPoly: need num_vars >= 1, degree >= 0");
  }
  const auto expected = count_monomials(num_vars, degree);
  if (static_cast<std::size_t>(coeffs_.size()) != expected) {
    throw InvalidArgument("HomogeneousPoly: expected " +
                          std::to_string(expected) + " coefficients, got " +
                          std::to_string(coeffs_.size()));
  }
}

HomogeneousPoly HomogeneousPoly::from_terms(
    int num_vars, int degree,
    const std::vector<std::pair<Exponent, cplx>>& terms) {
  HomogeneousPoly p(num_vars, degree);
  for (const auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != num_vars) {
      throw InvalidArgument("from_terms: exponent has wrong length");
    }
    if (std::any_of(e.begin(), e.end(), [](int v) { return v < 0; }) ||
        exponent_sum(e) != degree) {
      throw InvalidArgument("from_terms: exponents must be >= 0 and sum to " +
                            std::to_string(degree));
    }
    p.coeffs_[static_cast<Eigen::Index>(monomial_index(e))] += c;
  }
  return p;
}

cplx HomogeneousPoly::coeff(const Exponent& e) const {
  if (static_cast<int>(e.size()) != num_vars_ || exponent_sum(e) != degree_) {
    throw InvalidArgument("coeff: exponent does not match the form");
  }
  return coeffs_[static_cast<Eigen::Index>(monomial_index(e))];
}

ScalarField HomogeneousPoly::field() const {
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].imag() != 0.0) return ScalarField::complex;
  }
  return ScalarField::real;
}

cplx HomogeneousPoly::operator()(std::span<const cplx> x) const {
  if (static_cast<int>(x.size()) != num_vars_) {
    throw InvalidArgument("evaluate: point has wrong dimension");
  }
  std::vector<std::vector<cplx>> pw(num_vars_, std::vector<cplx>(degree_ + 1));
  for (int i = 0; i < num_vars_; ++i) {
    pw[i][0] = 1.0;
    for (int k = 1; k <= degree_; ++k) pw[i][k] = pw[i][k - 1] * x[i];
  }
  const auto exps = monomials(num_vars_, degree_);
  cplx acc = 0.0;
  for (std::size_t m = 0; m < exps.size(); ++m) {
    cplx term = coeffs_[static_cast<Eigen::Index>(m)];
    for (int i = 0; i < num_vars_; ++i) term *= pw[i][exps[m][i]];
    acc += term;
  }
  return acc;
}

cplx HomogeneousPoly::operator()(const Vector& x) const {
  return (*this)(std::span<const cplx>(x.data(), static_cast<std::size_t>(x.size())));
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& other) const {
  if (other.num_vars_ != num_vars_ || other.degree_ != degree_) {
    throw InvalidArgument("add: forms differ in variables or degree");
  }
  return HomogeneousPoly(num_vars_, degree_, coeffs_ + other.coeffs_);
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& other) const {
  if (other.num_vars_ != num_vars_ || other.degree_ != degree_) {
    throw InvalidArgument("subtract: forms differ in variables or degree");
  }
  return HomogeneousPoly(num_vars_, degree_, coeffs_ - other.coeffs_);
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& other) const {
  if (other.num_vars_ != num_vars_) {
    throw InvalidArgument("multiply: forms differ in number of variables");
  }
  HomogeneousPoly out(num_vars_, degree_ + other.degree_);
  const auto ea = monomials(num_vars_, degree_);
  const auto eb = monomials(num_vars_, other.degree_);
  Exponent sum(num_vars_);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const cplx ca = coeffs_[static_cast<Eigen::Index>(i)];
    if (ca == 0.0) continue;
    for (std::size_t j = 0; j < eb.size(); ++j) {
      const cplx cb = other.coeffs_[static_cast<Eigen::Index>(j)];
      if (cb == 0.0) continue;
      for (int v = 0; v < num_vars_; ++v) sum[v] = ea[i][v] + eb[j][v];
      out.coeffs_[static_cast<Eigen::Index>(monomial_index(sum))] += ca * cb;
    }
  }
  return out;
}

HomogeneousPoly HomogeneousPoly::scaled(cplx factor) const {
  return HomogeneousPoly(num_vars_, degree_, coeffs_ * factor);
}

Vector HomogeneousPoly::normalized_coeffs() const {
  const auto exps = monomials(num_vars_, degree_);
  Vector out(coeffs_.size());
  for (std::size_t m = 0; m < exps.size(); ++m) {
    out[static_cast<Eigen::Index>(m)] =
        coeffs_[static_cast<Eigen::Index>(m)] / multinomial(exps[m]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// LinearForm

std::pair<cplx, Vector> normalize_phase(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("normalize_phase: vector is zero or not finite");
  }
  Vector u = v / n;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    if (a > kPhaseThreshold) {
      const cplx phase = u[i] / a;
      u *= std::conj(phase);
      u[i] = cplx(std::abs(u[i]), 0.0);
      return {n * phase, u};
    }
  }
  return {n, u};
}

LinearForm::LinearForm(Vector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 1 || !(coeffs_.norm() > 0.0)) {
    throw InvalidArgument("LinearForm: coefficients must not all vanish");
  }
}

std::pair<cplx, LinearForm> LinearForm::normalized() const {
  auto [scale, rep] = normalize_phase(coeffs_);
  return {scale, LinearForm(std::move(rep))};
}

// ---------------------------------------------------------------------------
// Calculus

HomogeneousPoly partial_derivative(const HomogeneousPoly& f, int var,
                                   int order) {
  if (var < 0 || var >= f.num_vars()) {
    throw InvalidArgument("partial_derivative: variable index out of range");
  }
  if (order < 0 || order > f.degree()) {
    throw InvalidArgument("partial_derivative: order exceeds degree");
  }
  if (order == 0) return f;
  HomogeneousPoly out(f.num_vars(), f.degree() - order);
  Vector c = out.coeffs();
  const auto exps = monomials(f.num_vars(), f.degree());
  for (std::size_t m = 0; m < exps.size(); ++m) {
    const int k = exps[m][var];
    if (k < order) continue;
    Exponent e = exps[m];
    e[var] -= order;
    c[static_cast<Eigen::Index>(monomial_index(e))] +=
        f.coeffs()[static_cast<Eigen::Index>(m)] * falling(k, order);
  }
  return HomogeneousPoly(f.num_vars(), f.degree() - order, std::move(c));
}

HomogeneousPoly power_of_linear(const LinearForm& l, int d) {
  if (d < 0) throw InvalidArgument("power_of_linear: negative degree");
  const int nv = l.num_vars();
  std::vector<std::vector<cplx>> pw(nv, std::vector<cplx>(d + 1));
  for (int i = 0; i < nv; ++i) {
    pw[i][0] = 1.0;
    for (int k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * l.coeffs()[i];
  }
  const auto exps = monomials(nv, d);
  Vector c(static_cast<Eigen::Index>(exps.size()));
  for (std::size_t m = 0; m < exps.size(); ++m) {
    cplx t = multinomial(exps[m]);
    for (int i = 0; i < nv; ++i) t *= pw[i][exps[m][i]];
    c[static_cast<Eigen::Index>(m)] = t;
  }
  return HomogeneousPoly(nv, d, std::move(c));
}

DenseMatrix catalecticant(const HomogeneousPoly& f, int a, int b) {
  if (a < 0 || b < 0 || a + b != f.degree()) {
    throw InvalidArgument("catalecticant: need a, b >= 0 with a + b = " +
                          std::to_string(f.degree()));
  }
  const int nv = f.num_vars();
  const auto rows = monomials(nv, a);
  const auto cols = monomials(nv, b);
  const Vector normalized = f.normalized_coeffs();
  DenseMatrix m(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(cols.size()));
  Exponent sum(nv);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (int v = 0; v < nv; ++v) sum[v] = rows[r][v] + cols[c][v];
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          normalized[static_cast<Eigen::Index>(monomial_index(sum))];
    }
  }
  return m;
}

HomogeneousPoly substitute_linear(const HomogeneousPoly& f,
                                  const DenseMatrix& a) {
  if (a.rows() != f.num_vars()) {
    throw InvalidArgument("substitute_linear: matrix must have one row per variable");
  }
  const int out_vars = static_cast<int>(a.cols());
  std::vector<LinearForm> rows;
  rows.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Vector r = a.row(i).transpose();
    if (r.norm() == 0.0) {
      throw InvalidArgument("substitute_linear: zero row");
    }
    rows.emplace_back(std::move(r));
  }
  HomogeneousPoly out(out_vars, f.degree());
  const auto exps = monomials(f.num_vars(), f.degree());
  for (std::size_t m = 0; m < exps.size(); ++m) {
    const cplx c = f.coeffs()[static_cast<Eigen::Index>(m)];
    if (c == 0.0) continue;
    HomogeneousPoly term(out_vars, 0, Vector::Constant(1, c));
    for (int i = 0; i < f.num_vars(); ++i) {
      if (exps[m][i] > 0) term = term * power_of_linear(rows[i], exps[m][i]);
    }
    out = out + term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decompositions

WaringDecomposition::WaringDecomposition(int degree,
                                         std::vector<WaringTerm> terms,
                                         bool allow_degenerate)
    : degree_(degree) {
  if (degree < 1) throw InvalidArgument("WaringDecomposition: degree < 1");
  for (auto& t : terms) {
    if (!terms.empty() && t.form.num_vars() != terms.front().form.num_vars()) {
      throw InvalidArgument("WaringDecomposition: forms differ in length");
    }
    auto [scale, rep] = t.form.normalized();
    terms_.push_back({t.weight * std::pow(scale, degree), std::move(rep)});
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const WaringTerm& x, const WaringTerm& y) {
              return lex_less(x.form.coeffs(), y.form.coeffs());
            });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = i + 1; j < terms_.size(); ++j) {
      if (fubini_study(terms_[i].form.coeffs(), terms_[j].form.coeffs()) <
          kDuplicateAngle) {
        degenerate_ = true;
      }
    }
  }
  if (degenerate_ && !allow_degenerate) {
    throw DegenerateInput("WaringDecomposition: projectively repeated forms");
  }
}

int WaringDecomposition::num_vars() const {
  return terms_.empty() ? 0 : terms_.front().form.num_vars();
}

WaringDecomposition WaringDecomposition::scaled(cplx factor) const {
  std::vector<WaringTerm> t = terms_;
  for (auto& term : t) term.weight *= factor;
  return WaringDecomposition(degree_, std::move(t), degenerate_);
}

std::vector<WaringTerm> WaringDecomposition::monic_last_terms() const {
  std::vector<WaringTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const Vector& c = t.form.coeffs();
    const cplx last = c[c.size() - 1];
    if (std::abs(last) < 1e-12) {
      throw InvalidArgument("monic_last_terms: form with vanishing last coefficient");
    }
    out.push_back({t.weight * std::pow(last, degree_), LinearForm(c / last)});
  }
  return out;
}

void WaringDecomposition::require_real(double tol) const {
  for (const auto& t : terms_) {
    if (std::abs(t.weight.imag()) > tol ||
        t.form.coeffs().imag().cwiseAbs().maxCoeff() > tol) {
      throw NotReal("decomposition has non-real terms");
    }
  }
}

HomogeneousPoly recompose(const WaringDecomposition& dec) {
  if (dec.terms().empty()) {
    throw InvalidArgument("recompose: empty decomposition has no variable count");
  }
  HomogeneousPoly out(dec.num_vars(), dec.degree());
  for (const auto& t : dec.terms()) {
    out = out + power_of_linear(t.form, dec.degree()).scaled(t.weight);
  }
  return out;
}

double residual(const HomogeneousPoly& f, const WaringDecomposition& dec) {
  if (dec.degree() != f.degree()) {
    throw InvalidArgument("residual: degree mismatch");
  }
  const double fn = f.norm();
  if (!(fn > 0.0)) throw InvalidArgument("residual: F is zero");
  if (dec.terms().empty()) return 1.0;
  if (dec.num_vars() != f.num_vars()) {
    throw InvalidArgument("residual: variable count mismatch");
  }
  return (f.coeffs() - recompose(dec).coeffs()).norm() / fn;
}

std::vector<cplx> fit_weights(const HomogeneousPoly& f,
                              std::span<const LinearForm> forms) {
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(f.size()),
                     static_cast<Eigen::Index>(forms.size()));
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].num_vars() != f.num_vars()) {
      throw InvalidArgument("fit_weights: variable count mismatch");
    }
    a.col(static_cast<Eigen::Index>(i)) =
        power_of_linear(forms[i], f.degree()).coeffs();
  }
  const Vector w = a.completeOrthogonalDecomposition().solve(f.coeffs());
  return {w.data(), w.data() + w.size()};
}

double fubini_study(const Vector& u, const Vector& v) {
  const double nu = u.norm(), nv = v.norm();
  if (!(nu > 0.0) || !(nv > 0.0)) {
    throw InvalidArgument("fubini_study: zero vector");
  }
  const Vector a = u / nu;
  const Vector b = v / nv;
  const cplx ip = a.dot(b);  // conjugate-linear in a
  const double c = std::abs(ip);
  const double s = (b - ip * a).norm();
  return std::atan2(s, c);
}

}  // namespace waringlab
