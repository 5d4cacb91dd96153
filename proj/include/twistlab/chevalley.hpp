#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twistlab/twist.hpp"
#include "twistlab/weyl.hpp"

/// Finite groups SL_m(F_p), m even, with the diagram involution of type A_{m-1}.
namespace twistlab::chevalley {

using twist::TwistedSetting;
using weyl::WeylElement;

inline constexpr int kMaxSize = 8;
inline constexpr std::size_t kDefaultOrbitBudget = 6'000'000;

/// Odd prime small enough for byte-sized matrix entries.
class FieldPrime {
 public:
  explicit FieldPrime(int p);

  int p() const { return p_; }
  int add(int a, int b) const { return (a + b) % p_; }
  int sub(int a, int b) const { return (a - b + p_) % p_; }
  int mul(int a, int b) const { return reduce(a * b); }
  /// s mod p for 0 <= s < 2^24, without a division.
  int reduce(int s) const {
    const auto q = static_cast<int>((static_cast<std::uint64_t>(s) * magic_) >> 32);
    return s - q * p_;
  }
  int neg(int a) const { return (p_ - a) % p_; }
  int inv(int a) const;
  /// Smallest generator of the multiplicative group.
  int primitive_root() const { return primitive_root_; }

 private:
  int p_;
  int primitive_root_ = 1;
  std::uint64_t magic_;
};

/// Square matrix over F_p, at most kMaxSize x kMaxSize, entries in [0, p).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int m) : m_(m) {}
  static Matrix identity(int m);
  /// Reduces each entry mod p.
  static Matrix from_rows(const std::vector<std::vector<int>>& rows, const FieldPrime& f);

  int size() const { return m_; }
  int operator()(int r, int c) const { return a_[r * kMaxSize + c]; }
  void set(int r, int c, int v) { a_[r * kMaxSize + c] = static_cast<std::uint8_t>(v); }

  std::vector<std::vector<int>> rows() const;

  bool operator==(const Matrix& o) const = default;

 private:
  int m_ = 0;
  std::array<std::uint8_t, kMaxSize * kMaxSize> a_{};
};

Matrix mul(const Matrix& a, const Matrix& b, const FieldPrime& f);
Matrix transpose(const Matrix& a);
int det(const Matrix& a, const FieldPrime& f);
/// Throws DomainError for singular input.
Matrix inverse(const Matrix& a, const FieldPrime& f);
bool is_upper_triangular(const Matrix& a);

/// Row-major base-p digits packed into two machine words.
struct Code {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  auto operator<=>(const Code&) const = default;
};

class Encoder {
 public:
  /// Throws DomainError when m*m digits do not fit in two words.
  Encoder(int m, int p);

  Code encode(const Matrix& a) const;
  Matrix decode(const Code& c) const;

 private:
  int m_;
  int p_;
  int digits_per_word_;
};

/// theta(g) = J (g^T)^{-1} J^{-1} on SL_m(F_p).
class Involution {
 public:
  Involution(Matrix j, const FieldPrime& f);

  const Matrix& j() const { return j_; }
  Matrix apply(const Matrix& g) const;
  /// theta(g)^{-1} = J g^T J^{-1}, no inversion needed.
  Matrix apply_inverse(const Matrix& g) const;
  /// Differential on gl_m: X -> -J X^T J^{-1}.
  Matrix differential(const Matrix& x) const;

 private:
  FieldPrime f_;
  Matrix j_;
  Matrix j_inv_;
};

/// x_{alpha_i}(t) = 1 + t E_{i,i+1}; i 1-based.
Matrix root_element(int m, int i, int t, const FieldPrime& f);
/// x_{-alpha_i}(t) = 1 + t E_{i+1,i}.
Matrix negative_root_element(int m, int i, int t, const FieldPrime& f);
/// h_{alpha_i}(c) = diag(.., c, c^{-1}, ..).
Matrix torus_element(int m, int i, int c, const FieldPrime& f);
Matrix diagonal(const std::vector<int>& entries, const FieldPrime& f);

/// Searches antidiagonal sign matrices for one satisfying the pinning
/// theta(x_{alpha_i}(t)) = x_{alpha_{m-i}}(t), theta^2 = 1 and Borel
/// stability. Throws ConstructionError if none does.
Involution make_involution(int m, const FieldPrime& f);

/// Everything needed to run experiments in SL_m(F_p).
class Lab {
 public:
  /// m even, p an odd prime.
  Lab(int m, int p);

  int m() const { return m_; }
  const FieldPrime& field() const { return field_; }
  const Involution& theta() const { return theta_; }
  const TwistedSetting& setting() const { return setting_; }
  const Encoder& encoder() const { return encoder_; }
  /// p does not divide m.
  bool separable() const { return separable_; }

  /// Generators of SL_m(F_p): x_{+-alpha_i}(1) and h_{alpha_i}(c), c primitive.
  const std::vector<Matrix>& generators() const { return generators_; }
  /// Upper triangular part of the generators.
  const std::vector<Matrix>& borel_generators() const { return borel_generators_; }

  /// Product of the standard lifts x_i(1) x_{-i}(-1) x_i(1) along a reduced word.
  Matrix lift(const WeylElement& w) const;
  /// Random element of SL_m(F_p).
  Matrix random_element(std::mt19937_64& rng) const;

 private:
  int m_;
  FieldPrime field_;
  Involution theta_;
  TwistedSetting setting_;
  Encoder encoder_;
  bool separable_;
  std::vector<Matrix> generators_;
  std::vector<Matrix> borel_generators_;
};

/// Permutation w (w[j-1] = i, 1-based) with g in BwB, B upper triangular.
/// Gaussian elimination by B-row and B-column operations.
std::vector<int> bruhat_cell(const Matrix& g, const FieldPrime& f);
/// Same, from the ranks of the lower-left submatrices.
std::vector<int> bruhat_cell_by_ranks(const Matrix& g, const FieldPrime& f);

/// The permutation as an element of W(A_{m-1}).
WeylElement permutation_to_weyl(const rootsys::RootSystemPtr& rs, const std::vector<int>& perm);

struct Orbit {
  /// Sorted by code.
  std::vector<Code> elements;
  std::size_t size() const { return elements.size(); }
};

/// Closure of {x} under g * x = g x theta(g)^{-1} for the lab generators.
/// Throws BudgetExceeded (with the partial count) past `budget` elements.
Orbit twisted_orbit(const Lab& lab, const Matrix& x, std::size_t budget = kDefaultOrbitBudget);

struct CellSummary {
  /// Shortlex by reduced word.
  std::vector<WeylElement> cells;
  std::vector<std::size_t> counts;
};

CellSummary cells_hit(const Lab& lab, const Orbit& orbit);

struct InvolutiveVerdict {
  bool involutive = false;
  std::vector<WeylElement> non_involution_cells;
  /// Set only when the cells have a Bruhat maximum.
  std::optional<WeylElement> w_max;
};

InvolutiveVerdict involutive_check(const TwistedSetting& s, const CellSummary& cells);

struct StabilizerDim {
  int stabilizer_dim = 0;
  int class_dim = 0;
  /// p divides m: the tangent-space count may not be the orbit dimension.
  bool advisory = false;
};

/// Null-space dimension of X -> X x - x dtheta(X) on trace-zero matrices.
StabilizerDim stabilizer_dim(const Lab& lab, const Matrix& x);

/// Sizes of the orbits of the Borel subgroup inside a twisted orbit, ascending.
std::vector<std::size_t> borel_orbit_sizes(const Lab& lab, const Orbit& orbit);

/// Order of the upper-triangular subgroup of SL_m(F_p).
std::uint64_t borel_order(int m, int p);

}  // namespace twistlab::chevalley
