#pragma once

// Exact integer polynomial arithmetic, resultants, Sturm sequences and
// certified real-root isolation with dyadic interval endpoints.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace torus {

using BigInt = mpz_class;

/// Polynomial with arbitrary-precision integer coefficients, stored in
/// ascending degree order with no trailing zeros (zero polynomial is empty).
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(const BigInt& c, std::size_t k);
  static IntPoly x() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^k; zero past the degree.
  BigInt coeff(std::size_t k) const;
  const BigInt& leading() const;

  BigInt eval(const BigInt& x) const;
  IntPoly derivative() const;
  /// Non-negative gcd of the coefficients (0 for the zero polynomial).
  BigInt content() const;
  /// p / content, with positive leading coefficient.
  IntPoly primitive_part() const;
  /// p(-x).
  IntPoly reflect() const;

  std::string to_string() const;

  IntPoly operator-() const;
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const BigInt& c, const IntPoly& p);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

enum class PolyOp { add, sub, mul };

IntPoly poly_arith(const IntPoly& a, const IntPoly& b, PolyOp op);

/// Remainder of a modulo a monic polynomial; throws NonMonicModulus.
IntPoly poly_mod_reduce(const IntPoly& a, const IntPoly& modulus);

struct PseudoDivision {
  IntPoly quotient;
  IntPoly remainder;
  /// lc(b)^multiplier_power * a = quotient * b + remainder.
  std::size_t multiplier_power = 0;
};

PseudoDivision pseudo_divide(const IntPoly& a, const IntPoly& b);

/// a / b when b divides a in Z[x]; empty polynomial flagged by `ok == false`.
struct ExactQuotient {
  bool ok = false;
  IntPoly quotient;
};
ExactQuotient exact_divide(const IntPoly& a, const IntPoly& b);

/// Primitive gcd over Z[x], normalized to a positive leading coefficient.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);
bool is_squarefree(const IntPoly& p);
/// p / gcd(p, p'), primitive.
IntPoly squarefree_part(const IntPoly& p);

/// Number of sign variations in the coefficient sequence (zeros skipped).
std::size_t coefficient_sign_variations(const IntPoly& p);

/// Fraction-free determinant of an n x n row-major matrix.
BigInt bareiss_determinant(std::vector<BigInt> entries, std::size_t n);

BigInt resultant(const IntPoly& a, const IntPoly& b);
/// (-1)^{n(n-1)/2} Res(p, p') / lc(p); requires deg p >= 1.
BigInt discriminant(const IntPoly& p);

/// mantissa * 2^exponent, normalized so the mantissa is odd (or zero with
/// exponent 0). Sums and products of dyadics stay dyadic, so evaluation of
/// integer polynomials on dyadic points is exact.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : mantissa_(v) { normalize(); }  // NOLINT(google-explicit-constructor)
  Dyadic(const BigInt& v) : mantissa_(v) { normalize(); }  // NOLINT(google-explicit-constructor)
  Dyadic(BigInt mantissa, long exponent);

  /// 2^k for any signed k.
  static Dyadic pow2(long k);

  const BigInt& mantissa() const noexcept { return mantissa_; }
  long exponent() const noexcept { return exponent_; }
  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return mantissa_ == 0; }

  Dyadic half() const { return Dyadic(mantissa_, exponent_ - 1); }
  double to_double() const;
  /// Exact decimal expansion when short, otherwise "m*2^e".
  std::string to_string() const;

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();
  BigInt mantissa_ = 0;
  long exponent_ = 0;
};

Dyadic midpoint(const Dyadic& a, const Dyadic& b);
int sign_at(const IntPoly& p, const Dyadic& x);
Dyadic eval_dyadic(const IntPoly& p, const Dyadic& x);

struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  static DyadicInterval point(const Dyadic& v) { return {v, v}; }
  Dyadic width() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  bool contains(const Dyadic& v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
  bool subset_of(const DyadicInterval& other) const { return other.lo <= lo && hi <= other.hi; }
  std::string to_string() const;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b);
DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b);
DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b);

/// Horner evaluation in interval arithmetic; encloses {p(x) : x in I}.
DyadicInterval interval_eval(const IntPoly& p, const DyadicInterval& interval);

/// Isolating intervals for the real roots of a squarefree polynomial,
/// sorted ascending. Each interval is either a degenerate point [r, r] with
/// p(r) = 0, or has non-root endpoints with exactly one root strictly inside.
struct RootIsolation {
  IntPoly poly;
  std::vector<DyadicInterval> intervals;

  std::size_t size() const noexcept { return intervals.size(); }
};

/// Primitive Sturm chain p, p', -prem(...), ... with contents removed.
std::vector<IntPoly> sturm_chain(const IntPoly& p);

/// Number of real roots in the open interval (lo, hi).
/// Throws NotSquarefree, EndpointIsRoot.
std::size_t sturm_count(const IntPoly& p, const Dyadic& lo, const Dyadic& hi);

/// Power of two strictly exceeding every root magnitude (Cauchy bound).
Dyadic root_bound(const IntPoly& p);

/// Throws NotSquarefree. Intervals are refined to width <= 1/2.
RootIsolation isolate_real_roots(const IntPoly& p);

/// Bisect an isolating interval until its width is <= width_bound.
DyadicInterval refine_interval(const IntPoly& p, DyadicInterval interval, const Dyadic& width_bound);

/// Throws IndexOutOfRange, InvalidArgument (non-positive bound).
DyadicInterval refine_root(const RootIsolation& iso, std::size_t idx, const Dyadic& width_bound);

}  // namespace torus
