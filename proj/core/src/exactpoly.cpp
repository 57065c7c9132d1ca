#include "torus/exactpoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

#include "torus/error.hpp"

namespace torus {

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, std::size_t k) {
  std::vector<BigInt> v(k + 1, BigInt(0));
  v[k] = c;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }

const BigInt& IntPoly::leading() const {
  if (coeffs_.empty()) throw Error(Errc::InvalidArgument, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return IntPoly(std::move(d));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  BigInt g = content();
  if (leading() < 0) g = -g;
  std::vector<BigInt> v(coeffs_.size());
  for (std::size_t k = 0; k < v.size(); ++k) mpz_divexact(v[k].get_mpz_t(), coeffs_[k].get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::reflect() const {
  std::vector<BigInt> v = coeffs_;
  for (std::size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
  return IntPoly(std::move(v));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPoly IntPoly::operator-() const {
  std::vector<BigInt> v = coeffs_;
  for (auto& c : v) c = -c;
  return IntPoly(std::move(v));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(v));
}

IntPoly operator*(const BigInt& c, const IntPoly& p) {
  std::vector<BigInt> v = p.coeffs_;
  for (auto& x : v) x *= c;
  return IntPoly(std::move(v));
}

IntPoly poly_arith(const IntPoly& a, const IntPoly& b, PolyOp op) {
  switch (op) {
    case PolyOp::add: return a + b;
    case PolyOp::sub: return a - b;
    case PolyOp::mul: return a * b;
  }
  return {};
}

IntPoly poly_mod_reduce(const IntPoly& a, const IntPoly& modulus) {
  if (!modulus.is_monic() || modulus.degree() < 1) {
    throw Error(Errc::NonMonicModulus, "modulus " + modulus.to_string() + " is not monic of degree >= 1");
  }
  const auto n = static_cast<std::size_t>(modulus.degree());
  std::vector<BigInt> r = a.coeffs();
  const auto& m = modulus.coeffs();
  for (std::size_t k = r.size(); k-- > n;) {
    if (r[k] == 0) continue;
    const BigInt c = r[k];
    const std::size_t shift = k - n;
    for (std::size_t i = 0; i <= n; ++i) r[shift + i] -= c * m[i];
  }
  if (r.size() > n) r.resize(n);
  return IntPoly(std::move(r));
}

PseudoDivision pseudo_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error(Errc::InvalidArgument, "pseudo-division by zero polynomial");
  PseudoDivision out;
  IntPoly r = a;
  const BigInt& lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
    IntPoly term = IntPoly::monomial(r.leading(), shift);
    r = lb * r - term * b;
    out.quotient = lb * out.quotient + term;
    ++out.multiplier_power;
  }
  out.remainder = std::move(r);
  return out;
}

ExactQuotient exact_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error(Errc::InvalidArgument, "division by zero polynomial");
  if (a.is_zero()) return {true, {}};
  if (a.degree() < b.degree()) return {false, {}};
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<BigInt> q(r.size() - db, BigInt(0));
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), bc[db].get_mpz_t())) return {false, {}};
    BigInt c;
    mpz_divexact(c.get_mpz_t(), r[k].get_mpz_t(), bc[db].get_mpz_t());
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= c * bc[i];
  }
  for (std::size_t k = 0; k < db; ++k)
    if (r[k] != 0) return {false, {}};
  return {true, IntPoly(std::move(q))};
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  BigInt g;
  BigInt ca = a.content(), cb = b.content();
  mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntPoly x = a.primitive_part();
  IntPoly y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = pseudo_divide(x, y).remainder;
    x = std::move(y);
    y = r.is_zero() ? IntPoly{} : r.primitive_part();
  }
  return g * x.primitive_part();
}

bool is_squarefree(const IntPoly& p) {
  if (p.degree() <= 0) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 0) return p.primitive_part();
  IntPoly g = poly_gcd(p, p.derivative());
  auto q = exact_divide(p.primitive_part(), g.primitive_part());
  if (!q.ok) internal_error("gcd does not divide polynomial");
  return q.quotient.primitive_part();
}

std::size_t coefficient_sign_variations(const IntPoly& p) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& c : p.coeffs()) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

BigInt bareiss_determinant(std::vector<BigInt> m, std::size_t n) {
  if (m.size() != n * n) throw Error(Errc::DimMismatch, "matrix storage does not match dimension");
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return m[i * n + j]; };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = at(k, k);
  }
  BigInt d = at(n - 1, n - 1);
  return sign > 0 ? d : BigInt(-d);
}

BigInt resultant(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const auto m = static_cast<std::size_t>(a.degree());
  const auto n = static_cast<std::size_t>(b.degree());
  const std::size_t size = m + n;
  if (size == 0) return 1;
  std::vector<BigInt> syl(size * size, BigInt(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) syl[r * size + r + k] = a.coeff(m - k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) syl[(n + r) * size + r + k] = b.coeff(n - k);
  return bareiss_determinant(std::move(syl), size);
}

BigInt discriminant(const IntPoly& p) {
  if (p.degree() < 1) throw Error(Errc::InvalidArgument, "discriminant needs degree >= 1");
  const auto n = static_cast<unsigned long>(p.degree());
  BigInt res = resultant(p, p.derivative());
  BigInt d;
  mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), p.leading().get_mpz_t());
  if ((n * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

// ---------------------------------------------------------------------------
// Dyadic numbers and intervals

Dyadic::Dyadic(BigInt mantissa, long exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) { normalize(); }

Dyadic Dyadic::pow2(long k) { return Dyadic(BigInt(1), k); }

void Dyadic::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto tz = static_cast<long>(mpz_scan1(mantissa_.get_mpz_t(), 0));
  if (tz > 0) {
    mpz_tdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(tz));
    exponent_ += tz;
  }
}

namespace {

BigInt shifted(const BigInt& m, long by) {
  BigInt r;
  mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(by));
  return r;
}

}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long e = std::min(a.exponent_, b.exponent_);
  return Dyadic(shifted(a.mantissa_, a.exponent_ - e) + shifted(b.mantissa_, b.exponent_ - e), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  signed long ex = 0;
  const double d = mpz_get_d_2exp(&ex, mantissa_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(ex + exponent_));
}

std::string Dyadic::to_string() const {
  if (exponent_ >= 0 && exponent_ <= 64) return shifted(mantissa_, exponent_).get_str();
  if (exponent_ < 0 && exponent_ >= -64) {
    // m / 2^k = m * 5^k / 10^k
    const auto k = static_cast<unsigned long>(-exponent_);
    BigInt five;
    mpz_ui_pow_ui(five.get_mpz_t(), 5, k);
    BigInt scaled = abs(mantissa_) * five;
    std::string digits = scaled.get_str();
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    digits.insert(digits.size() - k, ".");
    return (mantissa_ < 0 ? "-" : "") + digits;
  }
  return mantissa_.get_str() + "*2^" + std::to_string(exponent_);
}

Dyadic midpoint(const Dyadic& a, const Dyadic& b) { return (a + b).half(); }

Dyadic eval_dyadic(const IntPoly& p, const Dyadic& x) {
  Dyadic acc;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Dyadic(*it);
  return acc;
}

int sign_at(const IntPoly& p, const Dyadic& x) { return eval_dyadic(p, x).sign(); }

std::string DyadicInterval::to_string() const { return "[" + lo.to_string() + ", " + hi.to_string() + "]"; }

DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
  const Dyadic p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return {*mn, *mx};
}

DyadicInterval interval_eval(const IntPoly& p, const DyadicInterval& interval) {
  const auto& c = p.coeffs();
  if (c.empty()) return DyadicInterval::point(Dyadic());
  DyadicInterval acc = DyadicInterval::point(Dyadic(c.back()));
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * interval + DyadicInterval::point(Dyadic(c[k]));
  return acc;
}

// ---------------------------------------------------------------------------
// Sturm sequences and root isolation

namespace {

IntPoly divide_by_content(const IntPoly& p) {
  if (p.is_zero()) return p;
  const BigInt g = p.content();
  std::vector<BigInt> v(p.coeffs().size());
  for (std::size_t k = 0; k < v.size(); ++k) mpz_divexact(v[k].get_mpz_t(), p.coeffs()[k].get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

std::size_t sign_variations(const std::vector<IntPoly>& chain, const Dyadic& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

void require_squarefree(const IntPoly& p) {
  if (!is_squarefree(p)) throw Error(Errc::NotSquarefree, p.to_string() + " has a repeated factor");
}

}  // namespace

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(divide_by_content(p));
  IntPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(divide_by_content(d));
  while (true) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    PseudoDivision pd = pseudo_divide(a, b);
    if (pd.remainder.is_zero()) break;
    // lc(b)^k a = q b + r, so -rem(a, b) has the sign of -sgn(lc(b))^k * r.
    const bool flip = sgn(b.leading()) < 0 && pd.multiplier_power % 2 == 1;
    IntPoly next = divide_by_content(pd.remainder);
    chain.push_back(flip ? next : -next);
  }
  return chain;
}

std::size_t sturm_count(const IntPoly& p, const Dyadic& lo, const Dyadic& hi) {
  require_squarefree(p);
  if (sign_at(p, lo) == 0 || sign_at(p, hi) == 0) {
    throw Error(Errc::EndpointIsRoot, "Sturm interval endpoint is a root of " + p.to_string());
  }
  if (hi < lo) throw Error(Errc::InvalidArgument, "Sturm interval has lo > hi");
  const auto chain = sturm_chain(p);
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

Dyadic root_bound(const IntPoly& p) {
  if (p.degree() < 1) return Dyadic(1);
  BigInt mx = 0;
  for (int k = 0; k < p.degree(); ++k) mx = std::max(mx, BigInt(abs(p.coeffs()[static_cast<std::size_t>(k)])));
  BigInt q;
  BigInt lead = abs(p.leading());
  mpz_fdiv_q(q.get_mpz_t(), mx.get_mpz_t(), lead.get_mpz_t());
  q += 2;  // strictly above 1 + max|c_k / c_n|
  const auto bits = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
  return Dyadic::pow2(bits);
}

RootIsolation isolate_real_roots(const IntPoly& p) {
  RootIsolation iso;
  iso.poly = p;
  if (p.degree() < 1) return iso;
  require_squarefree(p);
  const auto chain = sturm_chain(p);
  const Dyadic bound = root_bound(p);

  // Roots strictly inside (lo, hi). Sign variations with zeros skipped count
  // roots in the half-open (lo, hi], even when lo itself is a root.
  auto open_count = [&](const Dyadic& lo, const Dyadic& hi) {
    std::size_t c = sign_variations(chain, lo) - sign_variations(chain, hi);
    if (sign_at(p, hi) == 0) --c;
    return c;
  };

  std::function<void(const Dyadic&, const Dyadic&, std::size_t)> split =
      [&](const Dyadic& lo, const Dyadic& hi, std::size_t count) {
        if (count == 0) return;
        if (count == 1 && sign_at(p, lo) != 0 && sign_at(p, hi) != 0) {
          iso.intervals.push_back({lo, hi});
          return;
        }
        const Dyadic mid = midpoint(lo, hi);
        const std::size_t left = open_count(lo, mid);
        const bool mid_root = sign_at(p, mid) == 0;
        split(lo, mid, left);
        if (mid_root) iso.intervals.push_back(DyadicInterval::point(mid));
        split(mid, hi, count - left - (mid_root ? 1 : 0));
      };
  split(-bound, bound, open_count(-bound, bound));

  const Dyadic half = Dyadic::pow2(-1);
  for (auto& interval : iso.intervals) interval = refine_interval(p, interval, half);
  return iso;
}

DyadicInterval refine_interval(const IntPoly& p, DyadicInterval interval, const Dyadic& width_bound) {
  if (interval.is_point()) return interval;
  if (width_bound.sign() <= 0) throw Error(Errc::InvalidArgument, "refinement width bound must be positive");
  const int s_lo = sign_at(p, interval.lo);
  while (interval.width() > width_bound) {
    const Dyadic mid = midpoint(interval.lo, interval.hi);
    const int s = sign_at(p, mid);
    if (s == 0) return DyadicInterval::point(mid);
    if (s == s_lo) {
      interval.lo = mid;
    } else {
      interval.hi = mid;
    }
  }
  return interval;
}

DyadicInterval refine_root(const RootIsolation& iso, std::size_t idx, const Dyadic& width_bound) {
  if (idx >= iso.intervals.size()) {
    throw Error(Errc::IndexOutOfRange,
                "root index " + std::to_string(idx) + " out of range (" + std::to_string(iso.size()) + " roots)");
  }
  if (width_bound.sign() <= 0) throw Error(Errc::InvalidArgument, "refinement width bound must be positive");
  return refine_interval(iso.poly, iso.intervals[idx], width_bound);
}

}  // namespace torus
