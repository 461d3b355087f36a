#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "corrcert/spaces.hpp"
#include "corrcert/util.hpp"

namespace corrcert {

inline constexpr double kDefaultDropTol = 1e-12;

/// Fourier degree with a distinguished bottom element, the degree of the
/// zero function. Bottom orders below every integer and is absorbing under
/// addition, so deg_{-2} arithmetic treats it as -infinity.
class Degree {
 public:
  static Degree bottom() { return Degree(); }
  explicit Degree(int v) : value_(v) {}

  bool is_bottom() const { return !value_.has_value(); }
  int value() const;  // throws on bottom

  friend bool operator==(const Degree& a, const Degree& b) { return a.value_ == b.value_; }
  friend bool operator<(const Degree& a, const Degree& b);
  friend Degree operator+(const Degree& a, const Degree& b);

  std::string to_string() const;  // "-inf" for bottom

 private:
  Degree() = default;
  std::optional<int> value_;
};

/// q orthonormal functions on a finite measured space with chi_0 == 1.
struct OrthonormalBasis {
  FiniteSpace space;
  Distribution measure;
  std::vector<std::vector<Complex>> functions;  // functions[a][atom]
  bool standard = false;  // true iff built by standard_fourier_basis

  int size() const { return static_cast<int>(functions.size()); }
  Complex value(int a, int atom) const { return functions[a][atom]; }
  void validate(double tol = 1e-10) const;
};

/// Deterministic Gram-Schmidt basis for L2(Omega, nu): start from the
/// all-ones function, orthonormalize atom indicators in atom order, and fix
/// each function's phase so its last nonzero value is real positive.
/// Zero-mass atoms are stripped from the space first.
OrthonormalBasis gram_schmidt_basis(const Distribution& nu);

/// chi_y(x) = exp(2*pi*i*x*y/q) under the uniform measure on Z_q.
OrthonormalBasis standard_fourier_basis(int q);

/// Standard complex basis for uniform measures (unless force_real), else
/// Gram-Schmidt.
OrthonormalBasis basis_for(const Distribution& nu, bool force_real = false);

std::vector<OrthonormalBasis> replicate(const OrthonormalBasis& basis, int n);
std::vector<Distribution> measures_of(std::span<const OrthonormalBasis> bases);

/// A multi-index sigma: one basis-function index per coordinate.
using MultiIndex = std::vector<int>;

/// |S(sigma)| = number of nonzero digits.
int weight(const MultiIndex& sigma);
/// S(sigma) as a sorted coordinate list.
std::vector<int> support_coords(const MultiIndex& sigma);

/// A function on a product of finite alphabets, tabulated in lexicographic
/// point order (first coordinate most significant).
class DenseFunction {
 public:
  DenseFunction(std::vector<int> alphabet_sizes, std::vector<Complex> values);
  static DenseFunction zeros(std::vector<int> alphabet_sizes);
  static DenseFunction constant(std::vector<int> alphabet_sizes, Complex c);

  int dimension() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& alphabet_sizes() const { return sizes_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  Complex operator[](std::int64_t flat) const { return values_[flat]; }
  Complex& operator[](std::int64_t flat) { return values_[flat]; }
  Complex at(std::span<const int> point) const;
  const std::vector<Complex>& values() const { return values_; }

 private:
  std::vector<int> sizes_;
  std::vector<Complex> values_;
};

/// Sparse Fourier coefficients of a function on a product space.
class FourierRepresentation {
 public:
  explicit FourierRepresentation(std::vector<int> alphabet_sizes);

  int dimension() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& alphabet_sizes() const { return sizes_; }
  const std::map<MultiIndex, Complex>& coefficients() const { return coeffs_; }

  /// 0 for indices not stored.
  Complex coefficient(const MultiIndex& sigma) const;
  /// Stores the coefficient, dropping it when |c| <= drop_tol.
  void set_coefficient(const MultiIndex& sigma, Complex c, double drop_tol = kDefaultDropTol);

  Degree degree() const;
  /// max |f^(sigma)| over all sigma or over sigma != 0; 0 if the range is empty.
  double sup_coefficient(bool include_zero) const;
  /// sqrt(sum |f^(sigma)|^2); equals ||f||_2 by Parseval.
  double l2_norm() const;
  /// E[f] = f^(0...0).
  Complex mean() const;
  FourierRepresentation scaled(Complex factor) const;
  /// Copy without the 0...0 coefficient (f - E[f]).
  FourierRepresentation mean_zero_part() const;

 private:
  std::vector<int> sizes_;
  std::map<MultiIndex, Complex> coeffs_;
};

enum class TruncateMode { le, lt, eq, gt, ge };

/// Keeps exactly the coefficients whose weight satisfies the relation with d.
FourierRepresentation truncate(const FourierRepresentation& f, TruncateMode mode, int d);

/// f^(sigma) = E[f * conj(chi_sigma)] under the product of the basis
/// measures. Coefficients with |c| <= drop_tol are discarded.
FourierRepresentation transform(const DenseFunction& f,
                                std::span<const OrthonormalBasis> bases,
                                double drop_tol = kDefaultDropTol);

/// f(x) = sum_sigma f^(sigma) chi_sigma(x).
DenseFunction inverse_transform(const FourierRepresentation& f,
                                std::span<const OrthonormalBasis> bases);

/// The tensor character chi_sigma as a dense table.
DenseFunction character_function(std::span<const OrthonormalBasis> bases, const MultiIndex& sigma);

/// (E |f|^p)^{1/p} by exact enumeration; p may be infinity (max |f|).
double lp_norm(const DenseFunction& f, double p, std::span<const Distribution> measures);

/// A single-coefficient representation: the character chi_sigma.
FourierRepresentation unit_character(std::vector<int> alphabet_sizes, const MultiIndex& sigma);

/// All multi-indices of weight <= d for the given alphabets, in
/// lexicographic order.
std::vector<MultiIndex> multi_indices_up_to_weight(std::span<const int> sizes, int d);

}  // namespace corrcert
