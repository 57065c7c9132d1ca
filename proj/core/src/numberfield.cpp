#include "torus/numberfield.hpp"

#include <algorithm>
#include <bit>

#include <mpfr.h>

namespace torus {

namespace {

BigInt dyadic_floor(const Dyadic& x) {
  if (x.exponent() >= 0) {
    BigInt r;
    mpz_mul_2exp(r.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(x.exponent()));
    return r;
  }
  BigInt r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(-x.exponent()));
  return r;
}

BigInt dyadic_ceil(const Dyadic& x) { return -dyadic_floor(-x); }

// Search for a monic factor of degree <= n/2 among products of root subsets.
// A monic integer factor's coefficients are the signed elementary symmetric
// functions of the roots it carries, so enclosing those and testing every
// integer candidate by exact division decides reducibility.
std::optional<IntPoly> find_factor(const IntPoly& xi, const RootIsolation& roots) {
  const std::size_t n = roots.size();
  for (long bits = 16;; bits *= 2) {
    std::vector<DyadicInterval> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = refine_root(roots, j, Dyadic::pow2(-bits));
    bool undecided = false;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      const auto k = static_cast<std::size_t>(std::popcount(mask));
      if (k > n / 2) continue;
      std::vector<DyadicInterval> e(k + 1, DyadicInterval::point(Dyadic()));
      e[0] = DyadicInterval::point(Dyadic(1));
      std::size_t used = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(mask & (1u << j))) continue;
        ++used;
        for (std::size_t i = used; i >= 1; --i) e[i] = e[i] + r[j] * e[i - 1];
      }
      std::vector<BigInt> cand(k + 1);
      bool possible = true;
      bool decided = true;
      for (std::size_t i = 0; i <= k && possible; ++i) {
        const BigInt lo = dyadic_ceil(e[i].lo);
        const BigInt hi = dyadic_floor(e[i].hi);
        if (lo > hi) {
          possible = false;
        } else if (lo != hi) {
          decided = false;
        } else {
          cand[k - i] = (i % 2 == 0) ? lo : BigInt(-lo);
        }
      }
      if (!possible) continue;
      if (!decided) {
        undecided = true;
        continue;
      }
      IntPoly factor(cand);
      if (exact_divide(xi, factor).ok) return factor;
    }
    if (!undecided) return std::nullopt;
    if (bits > (1L << 20)) internal_error("factor search failed to converge");
  }
}

std::vector<BigInt> padded(std::vector<BigInt> c, std::size_t n) {
  c.resize(n, BigInt(0));
  return c;
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "elements belong to different fields");
}

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

struct LogInterval {
  LogInterval(mpfr_prec_t prec) : lo(prec), hi(prec) {}
  Mpfr lo;
  Mpfr hi;
};

void set_dyadic(mpfr_ptr out, const Dyadic& x, mpfr_rnd_t rnd) {
  mpfr_set_z_2exp(out, x.mantissa().get_mpz_t(), x.exponent(), rnd);
}

// Enclosure of log|x| for x in an interval that excludes zero.
void log_abs(const DyadicInterval& x, LogInterval& out) {
  Dyadic a = x.lo, b = x.hi;
  if (b.sign() < 0) {
    a = -x.hi;
    b = -x.lo;
  }
  set_dyadic(out.lo.get(), a, MPFR_RNDD);
  set_dyadic(out.hi.get(), b, MPFR_RNDU);
  mpfr_log(out.lo.get(), out.lo.get(), MPFR_RNDD);
  mpfr_log(out.hi.get(), out.hi.get(), MPFR_RNDU);
}

// [lo, hi] enclosing the product of two intervals.
void interval_product(const LogInterval& x, const LogInterval& y, mpfr_prec_t prec, Mpfr& lo, Mpfr& hi) {
  const mpfr_srcptr xs[2] = {x.lo.get(), x.hi.get()};
  const mpfr_srcptr ys[2] = {y.lo.get(), y.hi.get()};
  Mpfr t(prec);
  bool first = true;
  for (auto xv : xs)
    for (auto yv : ys) {
      mpfr_mul(t.get(), xv, yv, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), xv, yv, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
}

}  // namespace

// ---------------------------------------------------------------------------

TotallyRealField TotallyRealField::create(const IntPoly& xi) {
  if (!xi.is_monic()) throw Error(Errc::NotMonic, xi.to_string() + " is not monic");
  if (xi.degree() < 2) throw Error(Errc::InvalidArgument, "field degree must be at least 2");
  if (!is_squarefree(xi)) throw Error(Errc::NotSquarefree, xi.to_string() + " has a repeated factor");
  auto data = std::make_shared<detail::FieldData>();
  data->xi = xi;
  data->degree = static_cast<std::size_t>(xi.degree());
  data->roots = isolate_real_roots(xi);
  if (data->roots.size() != data->degree) throw NotTotallyRealError(xi, data->roots.size());
  if (auto factor = find_factor(xi, data->roots)) throw ReducibleError(xi, *factor);
  data->disc = torus::discriminant(xi);
  return TotallyRealField(std::move(data));
}

TotallyRealField new_field(const IntPoly& xi) { return TotallyRealField::create(xi); }

FieldElement TotallyRealField::element(std::vector<BigInt> coeffs) const { return FieldElement(*this, std::move(coeffs)); }

FieldElement TotallyRealField::element(std::initializer_list<long> coeffs) const {
  std::vector<BigInt> v;
  for (long c : coeffs) v.emplace_back(c);
  return element(std::move(v));
}

FieldElement TotallyRealField::integer(const BigInt& c) const { return element(std::vector<BigInt>{c}); }
FieldElement TotallyRealField::one() const { return integer(1); }
FieldElement TotallyRealField::generator() const { return element({0, 1}); }

FieldElement::FieldElement(TotallyRealField field, std::vector<BigInt> coeffs) : field_(std::move(field)) {
  const std::size_t n = field_.degree();
  if (coeffs.size() > n) {
    coeffs_ = padded(poly_mod_reduce(IntPoly(std::move(coeffs)), field_.poly()).coeffs(), n);
  } else {
    coeffs_ = padded(std::move(coeffs), n);
  }
}

bool FieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
}

std::string FieldElement::to_string() const {
  std::string s = as_poly().to_string();
  for (auto& ch : s)
    if (ch == 'x') ch = 'a';
  return s;
}

FieldElement FieldElement::operator-() const {
  std::vector<BigInt> v = coeffs_;
  for (auto& c : v) c = -c;
  return FieldElement(field_, std::move(v));
}

FieldElement FieldElement::pow(unsigned k) const {
  FieldElement acc = field_.one();
  FieldElement base = *this;
  while (k) {
    if (k & 1u) acc = acc * base;
    base = base * base;
    k >>= 1u;
  }
  return acc;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.field_, (a.as_poly() + b.as_poly()).coeffs());
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.field_, poly_mod_reduce(a.as_poly() * b.as_poly(), a.field_.poly()).coeffs());
}

FieldElement elem_mul(const FieldElement& a, const FieldElement& b) { return a * b; }

SqIntMatrix mult_matrix(const FieldElement& u) {
  const std::size_t n = u.field().degree();
  SqIntMatrix m(n);
  FieldElement column = u;
  const FieldElement alpha = u.field().generator();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = column.coeffs()[i];
    column = column * alpha;
  }
  return m;
}

DyadicInterval conjugate_enclosure(const FieldElement& u, std::size_t j, long bits) {
  const DyadicInterval root = refine_root(u.field().roots(), j, Dyadic::pow2(-bits));
  return interval_eval(u.as_poly(), root);
}

SignPattern conjugate_signs(const FieldElement& u, long min_bits) {
  if (u.is_zero()) throw Error(Errc::ZeroElement, "sign of the zero element");
  const auto& roots = u.field().roots();
  const IntPoly p = u.as_poly();
  std::vector<int> signs(roots.size());
  for (std::size_t j = 0; j < roots.size(); ++j) {
    DyadicInterval root = min_bits > 0 ? refine_root(roots, j, Dyadic::pow2(-min_bits)) : roots.intervals[j];
    for (int iter = 0;; ++iter) {
      const DyadicInterval value = interval_eval(p, root);
      if (!value.contains_zero()) {
        signs[j] = value.lo.sign() > 0 ? 1 : -1;
        break;
      }
      // Embeddings are injective, so a nonzero element never vanishes at a root.
      if (root.is_point() || iter > 100000) internal_error("conjugate of a nonzero element encloses zero");
      root = refine_interval(roots.poly, root, root.width().half());
    }
  }
  return SignPattern(std::move(signs));
}

std::optional<UnitCertificate> is_unit(const FieldElement& u) {
  if (u.is_zero()) throw Error(Errc::ZeroElement, "zero is not a unit");
  const SqIntMatrix m = mult_matrix(u);
  const BigInt d = det(m);
  if (abs(d) != 1) return std::nullopt;
  const IntPoly cp = charpoly(m);
  UnitCertificate cert{u, d > 0 ? 1 : -1, conjugate_signs(u), cp.eval(1) != 0 && cp.eval(-1) != 0};
  return cert;
}

bool is_hyperbolic_unit(const FieldElement& u) {
  if (u.is_zero() || abs(det(mult_matrix(u))) != 1) throw Error(Errc::NotAUnit, u.to_string() + " is not a unit");
  const IntPoly cp = charpoly(mult_matrix(u));
  return cp.eval(1) != 0 && cp.eval(-1) != 0;
}

IndependenceResult independence_certify(const FieldElement& u1, const FieldElement& u2,
                                        const IndependenceBudget& budget) {
  require_same_field(u1, u2);
  for (const auto* u : {&u1, &u2})
    if (u->is_zero() || !is_unit(*u)) throw Error(Errc::NotAUnit, u->to_string() + " is not a unit");

  const std::size_t n = u1.field().degree();
  const auto& roots = u1.field().roots();
  std::vector<DyadicInterval> r = roots.intervals;
  IndependenceResult result;
  for (int round = 0; round < budget.max_rounds; ++round) {
    const long bits = budget.start_bits << round;
    const auto prec = static_cast<mpfr_prec_t>(bits + 64);
    for (std::size_t j = 0; j < n; ++j) r[j] = refine_interval(roots.poly, r[j], Dyadic::pow2(-bits));

    // logs[i][j] encloses log|sigma_j(u_i)|, when the value enclosure excludes zero.
    std::vector<std::vector<std::unique_ptr<LogInterval>>> logs(2);
    const FieldElement* units[2] = {&u1, &u2};
    for (std::size_t i = 0; i < 2; ++i) {
      logs[i].resize(n);
      const IntPoly p = units[i]->as_poly();
      for (std::size_t j = 0; j < n; ++j) {
        const DyadicInterval v = interval_eval(p, r[j]);
        if (v.contains_zero()) continue;
        logs[i][j] = std::make_unique<LogInterval>(prec);
        log_abs(v, *logs[i][j]);
      }
    }
    result.rounds_used = round + 1;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!logs[0][j] || !logs[0][k] || !logs[1][j] || !logs[1][k]) continue;
        Mpfr alo(prec), ahi(prec), blo(prec), bhi(prec), mlo(prec), mhi(prec);
        interval_product(*logs[0][j], *logs[1][k], prec, alo, ahi);
        interval_product(*logs[0][k], *logs[1][j], prec, blo, bhi);
        mpfr_sub(mlo.get(), alo.get(), bhi.get(), MPFR_RNDD);
        mpfr_sub(mhi.get(), ahi.get(), blo.get(), MPFR_RNDU);
        if (mpfr_sgn(mlo.get()) > 0 || mpfr_sgn(mhi.get()) < 0) {
          result.status = IndependenceResult::Status::Independent;
          result.witness = IndependenceWitness{j, k, mpfr_get_d(mlo.get(), MPFR_RNDD),
                                               mpfr_get_d(mhi.get(), MPFR_RNDU), bits};
          return result;
        }
      }
  }
  return result;
}

}  // namespace torus
