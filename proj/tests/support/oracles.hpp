#pragma once

// Slow reference implementations used only to cross-check the library.

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "torus/exactpoly.hpp"
#include "torus/intmatrix.hpp"

namespace oracle {

using torus::BigInt;
using torus::IntPoly;
using torus::SqIntMatrix;
using Grid = std::vector<std::vector<BigInt>>;

inline Grid to_grid(const SqIntMatrix& m) {
  Grid g(m.dim(), std::vector<BigInt>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) g[i][j] = m(i, j);
  return g;
}

// Cofactor expansion along the first row.
inline BigInt laplace_det(const Grid& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  BigInt total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    Grid minor(n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) minor[r - 1].push_back(a[r][k]);
    const BigInt term = a[0][c] * laplace_det(minor);
    total += (c % 2) ? BigInt(-term) : term;
  }
  return total;
}

// det(xI - A) sampled at x = 0..n and interpolated exactly.
inline IntPoly interpolated_charpoly(const SqIntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<mpq_class> coeffs(n + 1, 0);
  for (std::size_t k = 0; k <= n; ++k) {
    Grid g = to_grid(m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i][j] = (i == j ? BigInt(k) : BigInt(0)) - g[i][j];
    const mpq_class yk(laplace_det(g));
    // Lagrange basis polynomial for node k, expanded.
    std::vector<mpq_class> basis{1};
    mpq_class denom = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == k) continue;
      std::vector<mpq_class> next(basis.size() + 1, 0);
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= basis[t] * static_cast<long>(j);
      }
      basis = std::move(next);
      denom *= static_cast<long>(k) - static_cast<long>(j);
    }
    for (std::size_t t = 0; t <= n; ++t) coeffs[t] += yk * basis[t] / denom;
  }
  std::vector<BigInt> out;
  for (auto& c : coeffs) {
    c.canonicalize();
    if (c.get_den() != 1) return IntPoly{};
    out.push_back(c.get_num());
  }
  return IntPoly(std::move(out));
}

inline SqIntMatrix sylvester(const IntPoly& a, const IntPoly& b) {
  const std::size_t m = static_cast<std::size_t>(a.degree()), n = static_cast<std::size_t>(b.degree());
  SqIntMatrix s(m + n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s(r, r + k) = a.coeff(m - k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s(n + r, r + k) = b.coeff(n - k);
  return s;
}

// (-1)^{n(n-1)/2} Res(p, p') / lc(p), with the resultant by cofactor expansion.
inline BigInt laplace_discriminant(const IntPoly& p) {
  const long n = p.degree();
  const BigInt res = laplace_det(to_grid(sylvester(p, p.derivative())));
  BigInt d = res / p.leading();
  return ((n * (n - 1) / 2) % 2) ? BigInt(-d) : d;
}

inline double eval_double(const IntPoly& p, double x) {
  double acc = 0;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * x + p.coeffs()[k].get_d();
  return acc;
}

// Real roots by scanning a fine grid for sign changes then bisecting; good
// enough for polynomials with well-separated simple roots.
inline std::vector<double> grid_roots(const IntPoly& p, double lo = -64, double hi = 64, std::size_t cells = 1 << 17) {
  std::vector<double> roots;
  const double h = (hi - lo) / static_cast<double>(cells);
  double x0 = lo, f0 = eval_double(p, x0);
  for (std::size_t c = 1; c <= cells; ++c) {
    const double x1 = lo + h * static_cast<double>(c);
    const double f1 = eval_double(p, x1);
    if (f0 == 0) {
      roots.push_back(x0);
    } else if ((f0 < 0) != (f1 < 0) && f1 != 0) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = eval_double(p, mid);
        if ((fm < 0) == (fa < 0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

inline std::size_t grid_root_count(const IntPoly& p, double lo, double hi) {
  std::size_t c = 0;
  for (double r : grid_roots(p, -64, 64)) c += (r > lo && r <= hi);
  return c;
}

// Schoolbook product followed by long division by a monic modulus.
inline std::vector<BigInt> mulmod(const std::vector<BigInt>& a, const std::vector<BigInt>& b, const IntPoly& xi) {
  const std::size_t n = static_cast<std::size_t>(xi.degree());
  std::vector<BigInt> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  for (std::size_t k = prod.size(); k-- > n;) {
    const BigInt c = prod[k];
    if (c == 0) continue;
    for (std::size_t t = 0; t <= n; ++t) prod[k - n + t] -= c * xi.coeff(t);
  }
  prod.resize(n);
  return prod;
}

// sigma_j(u) in double precision at the given root.
inline double conjugate_double(const std::vector<BigInt>& u, double root) {
  double acc = 0;
  for (std::size_t k = u.size(); k-- > 0;) acc = acc * root + u[k].get_d();
  return acc;
}

inline SqIntMatrix random_unimodular(std::size_t d, std::mt19937_64& rng, int moves = 12) {
  SqIntMatrix p = SqIntMatrix::identity(d);
  std::uniform_int_distribution<std::size_t> idx(0, d - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int k = 0; k < moves; ++k) {
    const std::size_t r = idx(rng), c = idx(rng);
    if (r == c) continue;
    const int f = coef(rng);
    // Row operation: row r += f * row c.
    for (std::size_t j = 0; j < d; ++j) p(r, j) += f * p(c, j);
  }
  return p;
}

}  // namespace oracle
