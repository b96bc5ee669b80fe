#include "waringlab/secantlab.hpp"

#include <algorithm>
#include <sstream>

#include "waringlab/error.hpp"
#include "waringlab/kernels.hpp"
#include "waringlab/polycore.hpp"
#include "waringlab/random.hpp"

namespace waringlab {

namespace {

constexpr std::int64_t kMaxEmbedded = 1'000'000;

cplx monomial_value(const Vector& x, const Exponent& e, Eigen::Index offset = 0) {
  cplx v = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (int p = 0; p < e[i]; ++p) v *= x[offset + static_cast<Eigen::Index>(i)];
  }
  return v;
}

// d/dx_i of x^e, evaluated.
cplx monomial_partial(const Vector& x, const Exponent& e, std::size_t i,
                      Eigen::Index offset = 0) {
  if (e[i] == 0) return 0.0;
  Exponent lowered = e;
  --lowered[i];
  return static_cast<double>(e[i]) * monomial_value(x, lowered, offset);
}

Eigen::MatrixXcd param_matrix(const Vector& params, int rows, int cols) {
  Eigen::MatrixXcd a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = params[i * cols + j];
  }
  return a;
}

Eigen::MatrixXcd columns_of(const Eigen::MatrixXcd& a, const std::vector<int>& cols) {
  Eigen::MatrixXcd out(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = a.col(cols[c]);
  return out;
}

// Determinant of m with row i and column j removed.
cplx minor_det(const Eigen::MatrixXcd& m, Eigen::Index i, Eigen::Index j) {
  const Eigen::Index k = m.rows();
  if (k == 1) return 1.0;
  Eigen::MatrixXcd sub(k - 1, k - 1);
  for (Eigen::Index r = 0, rr = 0; r < k; ++r) {
    if (r == i) continue;
    for (Eigen::Index c = 0, cc = 0; c < k; ++c) {
      if (c == j) continue;
      sub(rr, cc++) = m(r, c);
    }
    ++rr;
  }
  return sub.determinant();
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  const __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX || p < INT64_MIN) throw Overflow("integer overflow");
  return static_cast<std::int64_t>(p);
}

std::vector<int> parse_ints(std::istringstream& in, const std::string& spec) {
  std::vector<int> out;
  std::string part;
  while (std::getline(in, part, ':')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw InvalidArgument("variety spec '" + spec + "': bad integer '" + part + "'");
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ParamVariety::ParamVariety(VarietyKind kind, std::vector<int> args)
    : kind_(kind), args_(std::move(args)) {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw InvalidArgument(msg);
  };
  switch (kind_) {
    case VarietyKind::veronese:
    case VarietyKind::rational_normal_curve: {
      const int n = args_[0], d = args_[1];
      require(n >= 1 && d >= 1, "veronese: need n >= 1 and d >= 1");
      dim_ = n;
      ambient_n_ = monomial_count(n, d) - 1;
      num_params_ = n + 1;
      break;
    }
    case VarietyKind::quadric: {
      const int big_n = args_[0];
      require(big_n >= 2, "quadric: need N >= 2");
      dim_ = big_n - 1;
      ambient_n_ = big_n;
      num_params_ = big_n;
      break;
    }
    case VarietyKind::segre_veronese: {
      const int n = args_[0], m = args_[1], a = args_[2], b = args_[3];
      require(n >= 1 && m >= 1 && a >= 1 && b >= 1,
              "segre-veronese: need n, m, a, b >= 1");
      dim_ = n + m;
      ambient_n_ = checked_mul(binomial(a + n, n), binomial(b + m, m)) - 1;
      num_params_ = n + m + 2;
      break;
    }
    case VarietyKind::grassmann: {
      const int r = args_[0], n = args_[1];
      require(r >= 0 && n > r, "grassmann: need 0 <= r < n");
      dim_ = (r + 1) * (n - r);
      ambient_n_ = binomial(n + 1, r + 1) - 1;
      num_params_ = (r + 1) * (n + 1);
      break;
    }
  }
  if (ambient_n_ >= kMaxEmbedded) {
    throw InvalidArgument("variety too large to embed numerically");
  }
  switch (kind_) {
    case VarietyKind::veronese:
    case VarietyKind::rational_normal_curve:
      mono_a_ = monomials(args_[0] + 1, args_[1]);
      break;
    case VarietyKind::segre_veronese:
      mono_a_ = monomials(args_[0] + 1, args_[2]);
      mono_b_ = monomials(args_[1] + 1, args_[3]);
      break;
    case VarietyKind::grassmann:
      plucker_ = kernels::combinations(args_[1] + 1, args_[0] + 1);
      break;
    case VarietyKind::quadric:
      break;
  }
}

ParamVariety ParamVariety::veronese(int n, int d) {
  return ParamVariety(VarietyKind::veronese, {n, d});
}
ParamVariety ParamVariety::rational_normal_curve(int d) {
  return ParamVariety(VarietyKind::rational_normal_curve, {1, d});
}
ParamVariety ParamVariety::quadric(int big_n) {
  return ParamVariety(VarietyKind::quadric, {big_n});
}
ParamVariety ParamVariety::segre_veronese(int n, int m, int a, int b) {
  return ParamVariety(VarietyKind::segre_veronese, {n, m, a, b});
}
ParamVariety ParamVariety::grassmann(int r, int n) {
  return ParamVariety(VarietyKind::grassmann, {r, n});
}

ParamVariety ParamVariety::parse(const std::string& spec) {
  std::istringstream in(spec);
  std::string head;
  std::getline(in, head, ':');
  const auto v = parse_ints(in, spec);
  auto need = [&](std::size_t k) {
    if (v.size() != k) {
      throw InvalidArgument("variety spec '" + spec + "': expected " +
                            std::to_string(k) + " integer parameters");
    }
  };
  if (head == "veronese") {
    need(2);
    return veronese(v[0], v[1]);
  }
  if (head == "rnc" || head == "rational-normal-curve") {
    need(1);
    return rational_normal_curve(v[0]);
  }
  if (head == "quadric") {
    need(1);
    return quadric(v[0]);
  }
  if (head == "segre-veronese") {
    need(4);
    return segre_veronese(v[0], v[1], v[2], v[3]);
  }
  if (head == "grassmann") {
    need(2);
    return grassmann(v[0], v[1]);
  }
  throw InvalidArgument("unknown variety kind '" + head + "'");
}

std::string ParamVariety::name() const {
  std::string s;
  switch (kind_) {
    case VarietyKind::veronese: s = "veronese"; break;
    case VarietyKind::rational_normal_curve:
      return "rnc:" + std::to_string(args_[1]);
    case VarietyKind::quadric: s = "quadric"; break;
    case VarietyKind::segre_veronese: s = "segre-veronese"; break;
    case VarietyKind::grassmann: s = "grassmann"; break;
  }
  for (int a : args_) s += ":" + std::to_string(a);
  return s;
}

Vector ParamVariety::embed_affine(const Vector& p) const {
  if (p.size() != num_params_) {
    throw InvalidArgument("embed: expected " + std::to_string(num_params_) + " parameters");
  }
  Vector out(ambient_n_ + 1);
  switch (kind_) {
    case VarietyKind::veronese:
    case VarietyKind::rational_normal_curve:
      for (std::size_t i = 0; i < mono_a_.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = monomial_value(p, mono_a_[i]);
      }
      break;
    case VarietyKind::quadric: {
      // (t, u) -> (t^2, -sum u^2, t u_1, ..., t u_{N-1})
      const cplx t = p[0];
      cplx s = 0.0;
      for (Eigen::Index i = 1; i < p.size(); ++i) s += p[i] * p[i];
      out[0] = t * t;
      out[1] = -s;
      for (Eigen::Index i = 1; i < p.size(); ++i) out[i + 1] = t * p[i];
      break;
    }
    case VarietyKind::segre_veronese: {
      const Eigen::Index off = args_[0] + 1;
      Eigen::Index r = 0;
      for (const auto& a : mono_a_) {
        const cplx va = monomial_value(p, a);
        for (const auto& b : mono_b_) out[r++] = va * monomial_value(p, b, off);
      }
      break;
    }
    case VarietyKind::grassmann: {
      const auto a = param_matrix(p, args_[0] + 1, args_[1] + 1);
      for (std::size_t s = 0; s < plucker_.size(); ++s) {
        out[static_cast<Eigen::Index>(s)] = columns_of(a, plucker_[s]).determinant();
      }
      break;
    }
  }
  return out;
}

ProjectivePoint ParamVariety::embed(const Vector& params) const {
  return ProjectivePoint(embed_affine(params));
}

DenseMatrix ParamVariety::tangent_jacobian(const Vector& p) const {
  if (p.size() != num_params_) {
    throw InvalidArgument("tangent_jacobian: expected " +
                          std::to_string(num_params_) + " parameters");
  }
  DenseMatrix j = DenseMatrix::Zero(ambient_n_ + 1, num_params_);
  switch (kind_) {
    case VarietyKind::veronese:
    case VarietyKind::rational_normal_curve:
      for (std::size_t r = 0; r < mono_a_.size(); ++r) {
        for (std::size_t i = 0; i < mono_a_[r].size(); ++i) {
          j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
              monomial_partial(p, mono_a_[r], i);
        }
      }
      break;
    case VarietyKind::quadric: {
      j(0, 0) = 2.0 * p[0];
      for (Eigen::Index i = 1; i < p.size(); ++i) {
        j(1, i) = -2.0 * p[i];
        j(i + 1, 0) = p[i];
        j(i + 1, i) = p[0];
      }
      break;
    }
    case VarietyKind::segre_veronese: {
      const Eigen::Index off = args_[0] + 1;
      Eigen::Index r = 0;
      for (const auto& a : mono_a_) {
        const cplx va = monomial_value(p, a);
        for (const auto& b : mono_b_) {
          const cplx vb = monomial_value(p, b, off);
          for (std::size_t i = 0; i < a.size(); ++i) {
            j(r, static_cast<Eigen::Index>(i)) = monomial_partial(p, a, i) * vb;
          }
          for (std::size_t i = 0; i < b.size(); ++i) {
            j(r, off + static_cast<Eigen::Index>(i)) = va * monomial_partial(p, b, i, off);
          }
          ++r;
        }
      }
      break;
    }
    case VarietyKind::grassmann: {
      const int cols = args_[1] + 1;
      const auto a = param_matrix(p, args_[0] + 1, cols);
      for (std::size_t s = 0; s < plucker_.size(); ++s) {
        const auto m = columns_of(a, plucker_[s]);
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
          for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const double sign = (i + c) % 2 == 0 ? 1.0 : -1.0;
            j(static_cast<Eigen::Index>(s), i * cols + plucker_[s][static_cast<std::size_t>(c)]) =
                sign * minor_det(m, i, c);
          }
        }
      }
      break;
    }
  }
  return j;
}

Vector ParamVariety::random_params(std::mt19937_64& rng) const {
  return complex_gaussian(rng, num_params_);
}

DenseMatrix ParamVariety::quadric_matrix() const {
  if (kind_ != VarietyKind::quadric) {
    throw InvalidArgument("quadric_matrix: variety is not a quadric");
  }
  DenseMatrix s = DenseMatrix::Zero(ambient_n_ + 1, ambient_n_ + 1);
  s(0, 1) = s(1, 0) = 0.5;
  for (Eigen::Index i = 2; i <= ambient_n_; ++i) s(i, i) = 1.0;
  return s;
}

// ---------------------------------------------------------------------------

int terracini_secant_dim(const ParamVariety& x, int h, Seed seed, double rank_tol) {
  if (h < 1) throw InvalidArgument("terracini_secant_dim: h must be >= 1");
  int best = -1;
  for (std::uint64_t draw = 0; draw < 2; ++draw) {
    auto rng = make_rng(seed, {0x746572ULL, draw});
    DenseMatrix stacked(x.ambient_n() + 1, static_cast<Eigen::Index>(h) * x.num_params());
    for (int i = 0; i < h; ++i) {
      stacked.middleCols(static_cast<Eigen::Index>(i) * x.num_params(), x.num_params()) =
          x.tangent_jacobian(x.random_params(rng));
    }
    best = std::max(best, rank_with_tol(stacked, rank_tol) - 1);
  }
  return best;
}

std::int64_t expected_secant_dim(std::int64_t n, std::int64_t big_n, std::int64_t h) {
  return std::min(checked_mul(h, n) + h - 1, big_n);
}

bool is_defective(const ParamVariety& x, int h, Seed seed) {
  return terracini_secant_dim(x, h, seed) < expected_secant_dim(x.dim(), x.ambient_n(), h);
}

std::int64_t vsp_dim(std::int64_t n, std::int64_t big_n, std::int64_t h) {
  const std::int64_t v = checked_mul(h, n + 1) - big_n - 1;
  if (v < 0) {
    throw EmptyFiber("vsp_dim: h(n+1) - N - 1 = " + std::to_string(v) +
                     " < 0, the general fiber is empty");
  }
  return v;
}

VerBound ver_bound(std::int64_t n, std::int64_t d) {
  if (d < 2 || n < 1) throw InvalidArgument("ver_bound: need d > 1 and n >= 1");
  const std::int64_t n_plus_1 = binomial(n + d, d);
  const std::int64_t num = checked_mul(d, n_plus_1) - n;
  const std::int64_t h_bar = num / d + (num % d != 0 ? 1 : 0);
  return {n_plus_1 - 1, h_bar};
}

std::vector<Rc2Candidate> rc2_search(std::int64_t big_n, std::int64_t n) {
  if (!(big_n > n && n >= 1)) throw InvalidArgument("rc2_search: need N > n >= 1");
  std::vector<Rc2Candidate> out;
  for (std::int64_t k = 1; k < n; ++k) {
    if (big_n % (k + 1) != 0) continue;
    const std::int64_t h = big_n / (k + 1);
    const bool ok = big_n + n + 2 <= checked_mul(h, n + 1) && h < big_n - n + 1;
    out.push_back({k, h, ok});
  }
  return out;
}

}  // namespace waringlab
