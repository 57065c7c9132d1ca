#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "torus/error.hpp"
#include "torus/exactpoly.hpp"

using namespace torus;

namespace {

const IntPoly kXi{-1, -2, 1, 1};

bool throws_code(Errc code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("poly_arith basics") {
  CHECK(poly_arith(IntPoly{1, 1}, IntPoly{-1, 1}, PolyOp::mul) == IntPoly{-1, 0, 1});
  CHECK(poly_arith(kXi, IntPoly{}, PolyOp::add) == kXi);
  CHECK(poly_arith(kXi, IntPoly::monomial(1, 3), PolyOp::sub) == IntPoly{-1, -2, 1});
  CHECK(IntPoly{0, 0, 0}.is_zero());
  CHECK(IntPoly{}.degree() == -1);
  CHECK(kXi.to_string() == "x^3 + x^2 - 2*x - 1");
}

TEST_CASE("poly_mod_reduce") {
  CHECK(poly_mod_reduce(IntPoly::monomial(1, 3), kXi) == IntPoly{1, 2, -1});
  CHECK(poly_mod_reduce(IntPoly::x(), kXi) == IntPoly::x());
  CHECK(poly_mod_reduce(IntPoly::monomial(1, 4), kXi) == IntPoly{-1, -1, 3});
  CHECK(throws_code(Errc::NonMonicModulus, [] { poly_mod_reduce(IntPoly{1, 1}, IntPoly{1, 2}); }));
}

TEST_CASE("poly_mod_reduce agrees with schoolbook long division") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int t = 0; t < 200; ++t) {
    std::vector<BigInt> a(3), b(3);
    for (auto& v : a) v = c(rng);
    for (auto& v : b) v = c(rng);
    const auto expect = oracle::mulmod(a, b, kXi);
    CHECK(poly_mod_reduce(IntPoly(a) * IntPoly(b), kXi) == IntPoly(expect));
  }
}

TEST_CASE("discriminant") {
  CHECK(discriminant(kXi) == 49);
  CHECK(discriminant(IntPoly{-1, 0, 1}) == 4);
  CHECK(discriminant(IntPoly{1, 0, 1}) == -4);
  CHECK(discriminant(IntPoly{-2, 0, 1}) == 8);
  CHECK(discriminant(IntPoly{1, 0, -4, 0, 1}) == 2304);
  CHECK(discriminant(IntPoly{1, 1, -3, -1, 1}) == 725);
  CHECK(discriminant(IntPoly{1, 4, -4, -1, 1}) == 1125);
}

TEST_CASE("discriminant agrees with cofactor-expanded Sylvester determinant") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-6, 6);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 3;
    std::vector<BigInt> v(n + 1);
    for (auto& x : v) x = c(rng);
    v.back() = 1 + (t % 2);
    const IntPoly p(v);
    CHECK(discriminant(p) == oracle::laplace_discriminant(p));
  }
}

TEST_CASE("resultant of a product (disc(pq) = disc p disc q Res(p,q)^2)") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-5, 5);
  for (int t = 0; t < 100; ++t) {
    std::vector<BigInt> a(3), b(3);
    for (auto& x : a) x = c(rng);
    for (auto& x : b) x = c(rng);
    a.back() = 1;
    b.back() = 1;
    const IntPoly p(a), q(b);
    const BigInt r = resultant(p, q);
    CHECK(discriminant(p * q) == discriminant(p) * discriminant(q) * r * r);
  }
}

TEST_CASE("sturm_count") {
  CHECK(sturm_count(kXi, -10, 10) == 3);
  CHECK(sturm_count(IntPoly{1, 0, 1}, -10, 10) == 0);
  CHECK(sturm_count(kXi, 0, 10) == 1);
  CHECK(throws_code(Errc::NotSquarefree, [] { sturm_count(IntPoly{1, 2, 1}, -10, 10); }));
}

TEST_CASE("sturm_count matches a grid sign-change count") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> c(-7, 7);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 80; ++t) {
    std::vector<BigInt> v(5);
    for (auto& x : v) x = c(rng);
    v.back() = 1;
    const IntPoly p(v);
    if (!is_squarefree(p) || sign_at(p, -3) == 0 || sign_at(p, 2) == 0) continue;
    // Skip polynomials with nearly coincident roots, which a grid cannot separate.
    if (abs(discriminant(p)) < 50) continue;
    CHECK(sturm_count(p, -3, 2) == oracle::grid_root_count(p, -3, 2));
    ++checked;
  }
  CHECK(checked >= 40);
}

TEST_CASE("isolate_real_roots") {
  const RootIsolation iso = isolate_real_roots(kXi);
  REQUIRE(iso.size() == 3);
  const double expect[3] = {-1.8019377358, -0.4450418679, 1.2469796037};
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(iso.intervals[k].width() <= Dyadic(1, -1));
    CHECK(iso.intervals[k].lo.to_double() <= expect[k]);
    CHECK(iso.intervals[k].hi.to_double() >= expect[k]);
    if (k) CHECK(iso.intervals[k - 1].hi <= iso.intervals[k].lo);
  }
  const RootIsolation sq2 = isolate_real_roots(IntPoly{-2, 0, 1});
  REQUIRE(sq2.size() == 2);
  CHECK(sq2.intervals[0].hi.to_double() < 0);
  CHECK(sq2.intervals[1].lo.to_double() > 0);
  const RootIsolation five = isolate_real_roots(IntPoly{-5, 1});
  REQUIRE(five.size() == 1);
  CHECK(five.intervals[0] == DyadicInterval::point(5));
}

TEST_CASE("refine_root") {
  const RootIsolation iso = isolate_real_roots(kXi);
  const DyadicInterval r0 = refine_root(iso, 0, Dyadic::pow2(-20));
  CHECK(r0.width() <= Dyadic::pow2(-20));
  CHECK(sign_at(kXi, r0.lo) * sign_at(kXi, r0.hi) <= 0);
  CHECK(r0.lo.to_double() == doctest::Approx(-1.8019377358).epsilon(1e-5));

  const RootIsolation five = isolate_real_roots(IntPoly{-5, 1});
  CHECK(refine_root(five, 0, Dyadic::pow2(-30)) == DyadicInterval::point(5));

  const RootIsolation sq2 = isolate_real_roots(IntPoly{-2, 0, 1});
  const DyadicInterval s = refine_root(sq2, 1, Dyadic::pow2(-10));
  CHECK(s.width() <= Dyadic::pow2(-10));
  CHECK(s.lo.to_double() <= 1.41421356237);
  CHECK(s.hi.to_double() >= 1.41421356237);
  CHECK(throws_code(Errc::IndexOutOfRange, [&] { refine_root(sq2, 2, Dyadic::pow2(-10)); }));
}

TEST_CASE("interval_eval") {
  const DyadicInterval unit{-1, 1};
  const DyadicInterval sq = interval_eval(IntPoly{0, 0, 1}, unit);
  CHECK(sq.lo <= Dyadic(0));
  CHECK(sq.hi >= Dyadic(1));
  CHECK(interval_eval(IntPoly{7}, DyadicInterval{-3, 5}) == DyadicInterval::point(7));
  CHECK(interval_eval(kXi, DyadicInterval::point(2)) == DyadicInterval::point(7));
}

TEST_CASE("interval_eval soundness on 1000 random samples") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> coef(-20, 20), mant(-4096, 4096), expo(-12, -2);
  int failures = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<BigInt> v(1 + t % 6);
    for (auto& x : v) x = coef(rng);
    const IntPoly p(v);
    Dyadic a(BigInt(mant(rng)), expo(rng)), b(BigInt(mant(rng)), expo(rng));
    if (b < a) std::swap(a, b);
    const DyadicInterval box = interval_eval(p, DyadicInterval{a, b});
    // Exact values at the endpoints, the midpoint and a quarter point must be enclosed.
    for (const Dyadic& x : {a, b, midpoint(a, b), midpoint(a, midpoint(a, b))}) {
      if (!box.contains(eval_dyadic(p, x))) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("Dyadic arithmetic and printing") {
  CHECK(Dyadic(6) == Dyadic(BigInt(3), 1));
  CHECK(Dyadic(1, -1).to_string() == "0.5");
  CHECK((Dyadic(3, -2) + Dyadic(1, -2)) == Dyadic(1));
  CHECK(Dyadic(-3) < Dyadic(1, -10));
  CHECK(midpoint(Dyadic(1), Dyadic(2)) == Dyadic(3, -1));
}

TEST_CASE("squarefree helpers and sign variations") {
  CHECK(!is_squarefree(IntPoly{1, 2, 1}));
  CHECK(squarefree_part(IntPoly{1, 2, 1}) == IntPoly{1, 1});
  CHECK(is_squarefree(kXi));
  CHECK(coefficient_sign_variations(kXi) == 1);
  CHECK(coefficient_sign_variations(kXi.reflect()) == 2);
  CHECK(poly_gcd(IntPoly{-1, 0, 1}, IntPoly{1, 1}) == IntPoly{1, 1});
  const auto q = exact_divide(IntPoly{-1, 0, 1}, IntPoly{1, 1});
  CHECK(q.ok);
  CHECK(q.quotient == IntPoly{-1, 1});
}
