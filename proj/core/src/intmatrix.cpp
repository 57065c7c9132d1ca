#include "torus/intmatrix.hpp"

#include <sstream>

#include "torus/error.hpp"

namespace torus {

SqIntMatrix::SqIntMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, BigInt(0)) {
  if (dim == 0) throw Error(Errc::InvalidArgument, "matrix dimension must be positive");
}

SqIntMatrix::SqIntMatrix(std::size_t dim, std::vector<BigInt> entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw Error(Errc::InvalidArgument, "matrix dimension must be positive");
  if (entries_.size() != dim * dim) throw Error(Errc::DimMismatch, "entry count is not dim^2");
}

SqIntMatrix SqIntMatrix::identity(std::size_t dim) { return scalar(dim, 1); }

SqIntMatrix SqIntMatrix::scalar(std::size_t dim, const BigInt& c) {
  SqIntMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = c;
  return m;
}

SqIntMatrix SqIntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  SqIntMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(Errc::DimMismatch, "matrix rows are not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

SqIntMatrix SqIntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<BigInt>> v;
  for (const auto& r : rows) {
    auto& row = v.emplace_back();
    for (long x : r) row.emplace_back(x);
  }
  return from_rows(v);
}

SqIntMatrix SqIntMatrix::companion(const IntPoly& monic) {
  if (!monic.is_monic() || monic.degree() < 1) throw Error(Errc::NotMonic, "companion matrix needs a monic polynomial");
  const auto n = static_cast<std::size_t>(monic.degree());
  SqIntMatrix m(n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -monic.coeff(i);
  return m;
}

std::vector<std::vector<BigInt>> SqIntMatrix::rows() const {
  std::vector<std::vector<BigInt>> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i].assign(entries_.begin() + static_cast<long>(i * dim_),
                                                       entries_.begin() + static_cast<long>((i + 1) * dim_));
  return out;
}

BigInt SqIntMatrix::trace() const {
  BigInt t = 0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

std::string SqIntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < dim_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < dim_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

SqIntMatrix mat_mul(const SqIntMatrix& a, const SqIntMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimMismatch, "matrix product of different dimensions");
  const std::size_t n = a.dim();
  SqIntMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

SqIntMatrix operator*(const SqIntMatrix& a, const SqIntMatrix& b) { return mat_mul(a, b); }

SqIntMatrix operator+(const SqIntMatrix& a, const SqIntMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimMismatch, "matrix sum of different dimensions");
  std::vector<BigInt> e = a.entries();
  for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.entries()[k];
  return SqIntMatrix(a.dim(), std::move(e));
}

BigInt det(const SqIntMatrix& m) { return bareiss_determinant(m.entries(), m.dim()); }

IntPoly charpoly(const SqIntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  SqIntMatrix acc(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    acc = m * acc + SqIntMatrix::scalar(n, c[n - k + 1]);
    BigInt t = (m * acc).trace();
    if (!mpz_divisible_ui_p(t.get_mpz_t(), k)) internal_error("Faddeev-LeVerrier coefficient is not integral");
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), k);
    c[n - k] = -t;
  }
  return IntPoly(std::move(c));
}

bool commute_check(const SqIntMatrix& a, const SqIntMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimMismatch, "commutator of different dimensions");
  return a * b == b * a;
}

SqIntMatrix block_diag(std::span<const SqIntMatrix> blocks) {
  if (blocks.empty()) throw Error(Errc::InvalidArgument, "block_diag of an empty list");
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dim();
  SqIntMatrix out(n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) out(off + i, off + j) = b(i, j);
    off += b.dim();
  }
  return out;
}

SqIntMatrix inverse_unimodular(const SqIntMatrix& m) {
  const IntPoly cp = charpoly(m);
  const BigInt c0 = cp.coeff(0);
  if (abs(c0) != 1) throw Error(Errc::NotAUnit, "matrix is not invertible over the integers (det = " +
                                                    det(m).get_str() + ")");
  const std::size_t n = m.dim();
  SqIntMatrix acc = SqIntMatrix::identity(n);
  for (std::size_t k = n - 1; k >= 1; --k) acc = m * acc + SqIntMatrix::scalar(n, cp.coeff(k));
  // m * acc = -c0 * I and c0 = +-1.
  return SqIntMatrix::scalar(n, -c0) * acc;
}

bool is_totally_real_split(const SqIntMatrix& m) {
  const IntPoly sf = squarefree_part(charpoly(m));
  if (sf.degree() < 1) return true;
  const Dyadic b = root_bound(sf);
  return sturm_count(sf, -b, b) == static_cast<std::size_t>(sf.degree());
}

std::size_t negative_eigenvalue_count(const SqIntMatrix& m) {
  if (!is_totally_real_split(m)) throw Error(Errc::NotTotallyRealSplit, "matrix has non-real eigenvalues");
  // Descartes' rule is exact when every root is real.
  return coefficient_sign_variations(charpoly(m).reflect());
}

bool is_hyperbolic_matrix(const SqIntMatrix& m) {
  if (!is_totally_real_split(m)) {
    throw Error(Errc::NotTotallyRealSplit, "hyperbolicity is only decided for matrices with real eigenvalues");
  }
  const IntPoly cp = charpoly(m);
  return cp.eval(1) != 0 && cp.eval(-1) != 0;
}

}  // namespace torus
