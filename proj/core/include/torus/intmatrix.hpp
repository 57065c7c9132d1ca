#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "torus/exactpoly.hpp"

namespace torus {

/// Square matrix of arbitrary-precision integers, row-major.
class SqIntMatrix {
 public:
  explicit SqIntMatrix(std::size_t dim);
  SqIntMatrix(std::size_t dim, std::vector<BigInt> entries);

  static SqIntMatrix identity(std::size_t dim);
  static SqIntMatrix scalar(std::size_t dim, const BigInt& c);
  static SqIntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);
  static SqIntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  /// Companion matrix of a monic polynomial (multiplication by x on the power basis).
  static SqIntMatrix companion(const IntPoly& monic);

  std::size_t dim() const noexcept { return dim_; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  BigInt& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const std::vector<BigInt>& entries() const noexcept { return entries_; }
  std::vector<std::vector<BigInt>> rows() const;

  BigInt trace() const;
  std::string to_string() const;

  friend bool operator==(const SqIntMatrix&, const SqIntMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<BigInt> entries_;
};

/// Throws DimMismatch.
SqIntMatrix mat_mul(const SqIntMatrix& a, const SqIntMatrix& b);
SqIntMatrix operator*(const SqIntMatrix& a, const SqIntMatrix& b);
SqIntMatrix operator+(const SqIntMatrix& a, const SqIntMatrix& b);

/// Fraction-free (Bareiss) elimination.
BigInt det(const SqIntMatrix& m);

/// det(xI - m), via Faddeev-LeVerrier with exact integer division.
IntPoly charpoly(const SqIntMatrix& m);

/// ab == ba exactly; throws DimMismatch.
bool commute_check(const SqIntMatrix& a, const SqIntMatrix& b);

/// Direct sum; throws InvalidArgument on an empty list.
SqIntMatrix block_diag(std::span<const SqIntMatrix> blocks);

/// Integer inverse of a matrix with det +-1 (Cayley-Hamilton). Throws NotAUnit otherwise.
SqIntMatrix inverse_unimodular(const SqIntMatrix& m);

/// True iff every eigenvalue of m (hence of its characteristic polynomial) is real.
bool is_totally_real_split(const SqIntMatrix& m);

/// Number of negative eigenvalues counted with multiplicity; throws
/// NotTotallyRealSplit when complex eigenvalues are present.
std::size_t negative_eigenvalue_count(const SqIntMatrix& m);

/// For matrices whose eigenvalues are all real: true iff none equals +-1.
/// Throws NotTotallyRealSplit otherwise.
bool is_hyperbolic_matrix(const SqIntMatrix& m);

}  // namespace torus
