#pragma once

// Parametrized varieties, Terracini secant dimensions, the VSP dimension
// count, and the integer bounds behind the reproduced tables.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "waringlab/numlin.hpp"
#include "waringlab/types.hpp"

namespace waringlab {

enum class VarietyKind {
  veronese,
  rational_normal_curve,
  quadric,
  segre_veronese,
  grassmann,
};

/// Projective variety given by a homogeneous polynomial parametrization of
/// its affine cone. Parameters are complex vectors of length num_params().
class ParamVariety {
 public:
  static ParamVariety veronese(int n, int d);
  static ParamVariety rational_normal_curve(int d);
  /// Smooth quadric x0 x1 + x2^2 + ... + xN^2 = 0 in P^N, N >= 2.
  static ParamVariety quadric(int big_n);
  static ParamVariety segre_veronese(int n, int m, int a, int b);
  static ParamVariety grassmann(int r, int n);

  /// "veronese:n:d", "rnc:d", "quadric:N", "segre-veronese:n:m:a:b",
  /// "grassmann:r:n".
  static ParamVariety parse(const std::string& spec);

  VarietyKind kind() const { return kind_; }
  const std::vector<int>& args() const { return args_; }
  std::string name() const;
  int dim() const { return dim_; }
  std::int64_t ambient_n() const { return ambient_n_; }
  int num_params() const { return num_params_; }

  /// Cone representative of the image point (length ambient_n() + 1).
  Vector embed_affine(const Vector& params) const;
  ProjectivePoint embed(const Vector& params) const;
  /// (ambient_n() + 1) x num_params() Jacobian of embed_affine; its columns
  /// span the affine tangent space of the cone.
  DenseMatrix tangent_jacobian(const Vector& params) const;

  Vector random_params(std::mt19937_64& rng) const;

  /// Quadric only: symmetric S with q(x) = x^T S x.
  DenseMatrix quadric_matrix() const;

 private:
  ParamVariety(VarietyKind kind, std::vector<int> args);

  VarietyKind kind_;
  std::vector<int> args_;
  int dim_ = 0;
  std::int64_t ambient_n_ = 0;
  int num_params_ = 0;
  std::vector<Exponent> mono_a_;             // veronese / first Segre factor
  std::vector<Exponent> mono_b_;             // second Segre factor
  std::vector<std::vector<int>> plucker_;    // column subsets
};

/// rank[J(p_1) | ... | J(p_h)] - 1 at random parameters, maximized over two
/// independent draws.
int terracini_secant_dim(const ParamVariety& x, int h, Seed seed,
                         double rank_tol = kDefaultRankTol);

/// min(h n + h - 1, N).
std::int64_t expected_secant_dim(std::int64_t n, std::int64_t big_n, std::int64_t h);

bool is_defective(const ParamVariety& x, int h, Seed seed);

/// h (n + 1) - N - 1; throws EmptyFiber when negative.
std::int64_t vsp_dim(std::int64_t n, std::int64_t big_n, std::int64_t h);

struct VerBound {
  std::int64_t big_n;
  std::int64_t h_bar;
};

/// N = C(n+d, d) - 1 and the least integer h with h >= (d(N+1) - n) / d.
VerBound ver_bound(std::int64_t n, std::int64_t d);

struct Rc2Candidate {
  std::int64_t k;
  std::int64_t h_bar;
  bool constraint_ok;  // (N+n+2)/(n+1) <= h_bar < N-n+1
};

/// Every k with 0 < k < n and (k+1) | N, ascending in k.
std::vector<Rc2Candidate> rc2_search(std::int64_t big_n, std::int64_t n);

// ---------------------------------------------------------------------------
// Tables

struct TableRow {
  std::vector<std::pair<std::string, std::int64_t>> inputs;
  std::int64_t dim = 0;
  std::int64_t big_n = 0;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> h_bar;
  std::optional<bool> constraint_ok;
  // Published values for this row.
  std::int64_t reference_dim = 0;
  std::int64_t reference_n = 0;
  std::optional<std::int64_t> reference_k;
  std::int64_t reference_h_bar = 0;
  bool discrepancy = false;
  std::string note;
};

struct Table {
  std::string schema;  // e.g. "waringlab.table.grassmann"
  std::vector<std::string> input_names;
  std::vector<TableRow> rows;
};

Table table_ver();
Table table_grassmann();
Table table_segre_veronese();

/// Recomputes one Grassmannian / Segre-Veronese row against a reference.
TableRow grassmann_row(int r, int n, std::int64_t ref_dim, std::int64_t ref_n,
                       std::int64_t ref_k, std::int64_t ref_h_bar);
TableRow segre_veronese_row(int n, int m, int a, int b, std::int64_t ref_dim,
                            std::int64_t ref_n, std::int64_t ref_k,
                            std::int64_t ref_h_bar);

std::string table_csv(const Table& t);
std::string table_json(const Table& t);

}  // namespace waringlab
