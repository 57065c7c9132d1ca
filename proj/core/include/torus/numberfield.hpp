#pragma once

// Arithmetic in the order Z[alpha] of a totally real number field
// Q[x]/(xi), with alpha a root of the monic defining polynomial xi.
//
// Embeddings are indexed by the real roots of xi in ascending order:
// sigma_j sends alpha to the j-th smallest root. Every sign pattern and
// log vector in this module uses that order.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torus/error.hpp"
#include "torus/exactpoly.hpp"
#include "torus/intmatrix.hpp"
#include "torus/sign_pattern.hpp"

namespace torus {

class FieldElement;

namespace detail {
struct FieldData {
  IntPoly xi;
  std::size_t degree = 0;
  RootIsolation roots;
  BigInt disc;
};
}  // namespace detail

class ReducibleError : public Error {
 public:
  ReducibleError(const IntPoly& poly, IntPoly factor)
      : Error(Errc::Reducible, poly.to_string() + " has the factor " + factor.to_string()), factor_(std::move(factor)) {}
  const IntPoly& factor() const noexcept { return factor_; }

 private:
  IntPoly factor_;
};

class NotTotallyRealError : public Error {
 public:
  NotTotallyRealError(const IntPoly& poly, std::size_t real_roots)
      : Error(Errc::NotTotallyReal, poly.to_string() + " has only " + std::to_string(real_roots) + " real roots"),
        real_roots_(real_roots) {}
  std::size_t real_roots() const noexcept { return real_roots_; }

 private:
  std::size_t real_roots_;
};

/// Immutable, cheaply copyable handle to a validated field.
class TotallyRealField {
 public:
  /// Validates xi: monic, degree >= 2, squarefree, totally real and
  /// irreducible over Q. Throws NotMonic, NotSquarefree, NotTotallyReal
  /// (NotTotallyRealError) or Reducible (ReducibleError).
  static TotallyRealField create(const IntPoly& xi);

  const IntPoly& poly() const noexcept { return data_->xi; }
  std::size_t degree() const noexcept { return data_->degree; }
  const BigInt& discriminant() const noexcept { return data_->disc; }
  const RootIsolation& roots() const noexcept { return data_->roots; }

  FieldElement element(std::vector<BigInt> coeffs) const;
  FieldElement element(std::initializer_list<long> coeffs) const;
  FieldElement integer(const BigInt& c) const;
  FieldElement one() const;
  /// The class of x, i.e. alpha.
  FieldElement generator() const;

  friend bool operator==(const TotallyRealField& a, const TotallyRealField& b) {
    return a.data_ == b.data_ || a.data_->xi == b.data_->xi;
  }

 private:
  explicit TotallyRealField(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

/// Same as TotallyRealField::create.
TotallyRealField new_field(const IntPoly& xi);

/// c_0 + c_1 alpha + ... + c_{n-1} alpha^{n-1}.
class FieldElement {
 public:
  /// Shorter coefficient vectors are zero-padded; longer ones are reduced mod xi.
  FieldElement(TotallyRealField field, std::vector<BigInt> coeffs);

  const TotallyRealField& field() const noexcept { return field_; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  IntPoly as_poly() const { return IntPoly(coeffs_); }
  bool is_zero() const;
  std::string to_string() const;

  FieldElement operator-() const;
  FieldElement pow(unsigned k) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  TotallyRealField field_;
  std::vector<BigInt> coeffs_;
};

/// Throws FieldMismatch.
FieldElement elem_mul(const FieldElement& a, const FieldElement& b);

/// Column j holds the coordinates of u * alpha^j.
SqIntMatrix mult_matrix(const FieldElement& u);

/// Enclosure of sigma_j(u), with the j-th root refined to width <= 2^-bits.
DyadicInterval conjugate_enclosure(const FieldElement& u, std::size_t j, long bits);

/// Signs of sigma_j(u), j ascending. Starts from root intervals of width
/// 2^-min_bits and refines until every enclosure excludes zero.
SignPattern conjugate_signs(const FieldElement& u, long min_bits = 0);

struct UnitCertificate {
  FieldElement element;
  /// The field norm: +1 or -1.
  int det_of_mult_matrix = 0;
  SignPattern conjugate_signs;
  bool hyperbolic = false;
};

/// Empty when u is not a unit of Z[alpha]. Throws ZeroElement.
std::optional<UnitCertificate> is_unit(const FieldElement& u);

/// No Galois conjugate equals +-1. Throws NotAUnit.
bool is_hyperbolic_unit(const FieldElement& u);

struct IndependenceBudget {
  long start_bits = 32;
  /// Precision doubles every round.
  int max_rounds = 8;
};

struct IndependenceWitness {
  std::size_t j = 0;
  std::size_t k = 0;
  /// Outward-rounded enclosure of log|s_j(u1)| log|s_k(u2)| - log|s_k(u1)| log|s_j(u2)|.
  double minor_lo = 0;
  double minor_hi = 0;
  long precision_bits = 0;
};

struct IndependenceResult {
  enum class Status { Independent, Inconclusive };
  Status status = Status::Inconclusive;
  std::optional<IndependenceWitness> witness;
  int rounds_used = 0;

  bool independent() const noexcept { return status == Status::Independent; }
};

/// Certifies that u1, u2 generate a free abelian group of rank 2 modulo
/// torsion by finding a 2x2 minor of the log-embedding matrix whose interval
/// enclosure excludes zero. Never reports a dependent pair as Independent.
/// Throws NotAUnit, FieldMismatch.
IndependenceResult independence_certify(const FieldElement& u1, const FieldElement& u2,
                                        const IndependenceBudget& budget = {});

}  // namespace torus
