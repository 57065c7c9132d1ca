#include "torus/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <tuple>
#include <utility>

#include "torus/clifford.hpp"
#include "torus/error.hpp"

namespace torus {

const std::vector<IntPoly>& builtin_field_polys() {
  static const std::vector<IntPoly> table = {
      IntPoly{-1, -2, 1, 1},                       // 2cos(2pi/7), disc 49
      IntPoly{1, 0, -4, 0, 1},                     // sqrt(2 + sqrt 3) and conjugates
      IntPoly{-1, 4, 0, -5, 0, 1},                 // x(x^2-1)(x^2-4) - 1
      IntPoly{-1, -3, 6, 4, -5, -1, 1},            // 2cos(2pi/13)
      IntPoly{-1, -36, 0, 49, 0, -14, 0, 1},       // x(x^2-1)(x^2-4)(x^2-9) - 1
      IntPoly{1, -4, -10, 10, 15, -6, -7, 1, 1},   // 2cos(2pi/17)
  };
  return table;
}

std::optional<IntPoly> builtin_field_poly(std::size_t degree) {
  for (const auto& p : builtin_field_polys())
    if (static_cast<std::size_t>(p.degree()) == degree) return p;
  return std::nullopt;
}

IntPoly cubic_field_poly() { return IntPoly{-1, -2, 1, 1}; }

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) internal_error("construction check failed: " + what);
}

std::size_t intersection_size(const SignPattern& a, const SignPattern& b) {
  std::size_t c = 0;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] < 0 && b[j] < 0) ++c;
  return c;
}

}  // namespace

CubicBlock disc49_cubic_block() {
  const TotallyRealField field = TotallyRealField::create(cubic_field_poly());
  require(field.discriminant() == 49, "discriminant 49");
  const FieldElement eps1 = field.element({-1, 1, 1});
  const FieldElement eps2 = field.element({2, 0, -1});
  const FieldElement u1 = -eps1;
  const FieldElement u2 = eps1 * eps2;
  const SqIntMatrix b1 = mult_matrix(u1);
  const SqIntMatrix b2 = mult_matrix(u2);
  require(is_unit(eps1).has_value() && is_unit(eps2).has_value(), "eps1, eps2 are units");
  require(det(b1) == 1 && det(b2) == 1, "B1, B2 in SL_3(Z)");
  require(is_hyperbolic_unit(u1) && is_hyperbolic_unit(u2), "B1, B2 hyperbolic");
  require(commute_check(b1, b2), "B1 B2 = B2 B1");
  const SignPattern s1 = conjugate_signs(u1);
  const SignPattern s2 = conjugate_signs(u2);
  require(s1.weight() == 2 && s2.weight() == 2, "two negative conjugates each");
  require(intersection_size(s1, s2) == 1, "|S1 n S2| = 1");
  return CubicBlock{FieldBlock{"cubic", field, u1, u2, std::nullopt, std::nullopt}, eps1, eps2, b1, b2, s1, s2};
}

PositiveBlock positive_block(const TotallyRealField& field, const FieldElement& u1, const FieldElement& u2,
                             const IndependenceBudget& budget) {
  if (field.degree() < 3) throw Error(Errc::InvalidArgument, "positive block needs a field of degree >= 3");
  for (const auto* u : {&u1, &u2}) {
    if (!(u->field() == field)) throw Error(Errc::FieldMismatch, "unit does not belong to the block's field");
    if (u->is_zero() || !is_unit(*u)) throw Error(Errc::NotAUnit, u->to_string() + " is not a unit");
    if (!is_hyperbolic_unit(*u)) throw Error(Errc::NotHyperbolic, u->to_string() + " has a conjugate +-1");
  }
  const FieldElement sq1 = u1 * u1;
  const FieldElement sq2 = u2 * u2;
  IndependenceResult ind = independence_certify(sq1, sq2, budget);
  if (!ind.independent()) {
    throw Error(Errc::Inconclusive, "independence of " + sq1.to_string() + " and " + sq2.to_string() +
                                        " not certified within the refinement budget");
  }
  SqIntMatrix c1 = mult_matrix(sq1);
  SqIntMatrix c2 = mult_matrix(sq2);
  const std::size_t n = field.degree();
  require(conjugate_signs(sq1) == SignPattern::all_positive(n), "C1 eigenvalues positive");
  require(conjugate_signs(sq2) == SignPattern::all_positive(n), "C2 eigenvalues positive");
  require(det(c1) == 1 && det(c2) == 1, "C1, C2 in SL_n(Z)");
  require(is_hyperbolic_matrix(c1) && is_hyperbolic_matrix(c2), "C1, C2 hyperbolic");
  require(commute_check(c1, c2), "C1 C2 = C2 C1");
  return PositiveBlock{FieldBlock{"positive", field, sq1, sq2, u1, u2}, std::move(c1), std::move(c2), ind};
}

std::vector<UnitCertificate> unit_search(const TotallyRealField& field, long bound, unsigned jobs) {
  if (bound < 1) throw Error(Errc::InvalidArgument, "unit search bound must be >= 1");
  const std::size_t n = field.degree();
  const auto base = static_cast<std::uint64_t>(2 * bound + 1);
  if (static_cast<double>(n) * std::log2(static_cast<double>(base)) > 40.0) {
    throw Error(Errc::InvalidArgument, "unit search box too large");
  }
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= base;

  auto scan = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::pair<std::uint64_t, UnitCertificate>>& out) {
    std::vector<BigInt> c(n);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t k = n; k-- > 0;) {
        c[k] = static_cast<long>(rest % base) - bound;
        rest /= base;
      }
      auto first = std::find_if(c.begin(), c.end(), [](const BigInt& v) { return v != 0; });
      if (first == c.end() || *first < 0) continue;
      if (auto cert = is_unit(field.element(c))) out.emplace_back(idx, std::move(*cert));
    }
  };

  jobs = std::max(1u, jobs);
  std::vector<std::vector<std::pair<std::uint64_t, UnitCertificate>>> parts(jobs);
  if (jobs == 1) {
    scan(0, total, parts[0]);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      const std::uint64_t b = total * w / jobs, e = total * (w + 1) / jobs;
      workers.emplace_back([&, b, e, w] { scan(b, e, parts[w]); });
    }
  }
  std::vector<UnitCertificate> out;
  for (auto& part : parts)
    for (auto& [idx, cert] : part) out.push_back(std::move(cert));
  return out;
}

std::pair<FieldElement, FieldElement> find_independent_units(const TotallyRealField& field, long max_bound,
                                                             unsigned jobs) {
  const IndependenceBudget screening{32, 2};
  for (long bound = 1; bound <= max_bound; ++bound) {
    std::vector<FieldElement> candidates;
    for (auto& cert : unit_search(field, bound, jobs))
      if (cert.hyperbolic) candidates.push_back(cert.element);
    for (std::size_t i = 0; i < candidates.size(); ++i)
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (independence_certify(candidates[i], candidates[j], screening).independent())
          return {candidates[i], candidates[j]};
  }
  throw Error(Errc::NoFieldAvailable, "no independent hyperbolic units with coefficients up to " +
                                          std::to_string(max_bound) + " in " + field.poly().to_string());
}

ConstructionCertificate certify_blocks(const std::vector<FieldBlock>& blocks, const CertifyOptions& options) {
  if (blocks.empty()) throw Error(Errc::InvalidArgument, "certificate needs at least one block");
  ConstructionCertificate cert;
  std::vector<SqIntMatrix> m1, m2;
  std::vector<int> signs1, signs2;
  for (const auto& b : blocks) {
    for (const auto* u : {&b.u1, &b.u2}) {
      if (!(u->field() == b.field)) throw Error(Errc::FieldMismatch, "unit does not belong to the block's field");
      if (u->is_zero() || !is_unit(*u)) throw Error(Errc::NotAUnit, u->to_string() + " is not a unit");
    }
    BlockRecord rec;
    rec.role = b.role;
    rec.poly = b.field.poly();
    rec.disc = b.field.discriminant();
    rec.u1 = b.u1.coeffs();
    rec.u2 = b.u2.coeffs();
    if (b.base1) rec.base1 = b.base1->coeffs();
    if (b.base2) rec.base2 = b.base2->coeffs();
    rec.s1 = conjugate_signs(b.u1);
    rec.s2 = conjugate_signs(b.u2);
    const IndependenceResult ind = independence_certify(b.u1, b.u2, options.budget);
    rec.independent = ind.independent();
    rec.witness = ind.witness;
    cert.independent = cert.independent || rec.independent;
    m1.push_back(mult_matrix(b.u1));
    m2.push_back(mult_matrix(b.u2));
    signs1.insert(signs1.end(), rec.s1.signs().begin(), rec.s1.signs().end());
    signs2.insert(signs2.end(), rec.s2.signs().begin(), rec.s2.signs().end());
    cert.blocks.push_back(std::move(rec));
  }
  cert.a1 = block_diag(m1);
  cert.a2 = block_diag(m2);
  cert.d = cert.a1.dim();
  cert.charpoly1 = charpoly(cert.a1);
  cert.charpoly2 = charpoly(cert.a2);
  cert.det1 = det(cert.a1);
  cert.det2 = det(cert.a2);
  cert.hyperbolic1 = is_hyperbolic_matrix(cert.a1);
  cert.hyperbolic2 = is_hyperbolic_matrix(cert.a2);
  cert.commuting = commute_check(cert.a1, cert.a2);
  cert.s1 = SignPattern(std::move(signs1));
  cert.s2 = SignPattern(std::move(signs2));
  cert.intersection = intersection_size(cert.s1, cert.s2);

  if (cert.det1 != 1 || cert.det2 != 1) throw Error(Errc::DetNotOne, "generators must have determinant 1");
  if (!cert.hyperbolic1 || !cert.hyperbolic2) throw Error(Errc::NotHyperbolic, "generators must be hyperbolic");
  cert.obstruction = pairing(cert.s1, cert.s2);
  // Second route: sign patterns recovered from the matrices alone.
  if (obstruction_of_pair(cert.a1, cert.a2) != cert.obstruction) {
    internal_error("embedding sign patterns and eigenvalue counts disagree on the obstruction");
  }
  if (cert.d <= kMaxCliffordDim) {
    cert.oracle_agreement = lift_loop(build_loop_spec(cert.s1, cert.s2), options.oracle_steps) == cert.obstruction;
  }
  cert.theorem_scope = cert.d >= 7 && cert.hyperbolic1 && cert.hyperbolic2 && cert.commuting && cert.det1 == 1 &&
                       cert.det2 == 1 && cert.independent;
  return cert;
}

ConstructionCertificate certify_matrices(const SqIntMatrix& a1, const SqIntMatrix& a2,
                                         const CertifyOptions& options) {
  ConstructionCertificate cert;
  cert.obstruction = obstruction_of_pair(a1, a2);
  std::tie(cert.s1, cert.s2) = joint_sign_patterns(a1, a2);
  cert.a1 = a1;
  cert.a2 = a2;
  cert.d = a1.dim();
  cert.charpoly1 = charpoly(a1);
  cert.charpoly2 = charpoly(a2);
  cert.det1 = det(a1);
  cert.det2 = det(a2);
  cert.hyperbolic1 = true;
  cert.hyperbolic2 = true;
  cert.commuting = true;
  cert.intersection = intersection_size(cert.s1, cert.s2);
  if (cert.d <= kMaxCliffordDim) {
    cert.oracle_agreement = lift_loop(build_loop_spec(cert.s1, cert.s2), options.oracle_steps) == cert.obstruction;
  }
  cert.theorem_scope = false;
  return cert;
}

ConstructionCertificate assemble(std::size_t d, const std::optional<TotallyRealField>& positive_field,
                                 const CertifyOptions& options) {
  if (d < 6) {
    throw Error(Errc::InvalidArgument, "d = " + std::to_string(d) + " leaves a positive block of degree < 3");
  }
  const std::size_t n = d - 3;
  std::optional<TotallyRealField> field = positive_field;
  if (field) {
    if (field->degree() != n) {
      throw Error(Errc::DimMismatch, "supplied field has degree " + std::to_string(field->degree()) + ", need " +
                                         std::to_string(n));
    }
  } else {
    auto poly = builtin_field_poly(n);
    if (!poly) throw Error(Errc::NoFieldAvailable, "no built-in totally real field of degree " + std::to_string(n));
    field = TotallyRealField::create(*poly);
  }
  const CubicBlock cubic = disc49_cubic_block();
  const auto [u1, u2] = find_independent_units(*field, options.unit_bound, options.jobs);
  const PositiveBlock positive = positive_block(*field, u1, u2, options.budget);
  return certify_blocks({cubic.block, positive.block}, options);
}

std::vector<std::string> verify_certificate(const ConstructionCertificate& cert, const CertifyOptions& options) {
  std::vector<std::string> problems;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  };
  check(cert.a1.dim() == cert.d && cert.a2.dim() == cert.d, "matrix dimension differs from d");
  check(charpoly(cert.a1) == cert.charpoly1, "charpoly1 does not match a1");
  check(charpoly(cert.a2) == cert.charpoly2, "charpoly2 does not match a2");
  try {
    check(pairing(cert.s1, cert.s2) == cert.obstruction, "obstruction does not match stored sign patterns");
  } catch (const Error& e) {
    problems.push_back(std::string("stored sign patterns invalid: ") + e.what());
  }
  check(cert.intersection == intersection_size(cert.s1, cert.s2), "intersection size does not match patterns");
  check(!cert.theorem_scope || (cert.d >= 7 && cert.hyperbolic1 && cert.hyperbolic2 && cert.commuting &&
                                cert.det1 == 1 && cert.det2 == 1 && cert.independent),
        "theorem_scope set without its preconditions");

  std::vector<FieldBlock> blocks;
  try {
    if (cert.blocks.empty()) {
      const ConstructionCertificate fresh = certify_matrices(cert.a1, cert.a2, options);
      check(fresh.s1 == cert.s1 && fresh.s2 == cert.s2, "sign pattern mismatch");
      check(fresh.obstruction == cert.obstruction, "obstruction class mismatch");
      check(fresh.oracle_agreement == cert.oracle_agreement, "oracle agreement mismatch");
      check(fresh.det1 == cert.det1 && fresh.det2 == cert.det2, "determinant mismatch");
      check(!cert.independent && !cert.theorem_scope, "bare matrix certificates cannot claim independence");
      return problems;
    }
    for (const auto& rec : cert.blocks) {
      const TotallyRealField field = TotallyRealField::create(rec.poly);
      check(field.discriminant() == rec.disc, "block discriminant mismatch for " + rec.poly.to_string());
      FieldBlock b{rec.role, field, field.element(rec.u1), field.element(rec.u2), std::nullopt, std::nullopt};
      if (rec.base1) b.base1 = field.element(*rec.base1);
      if (rec.base2) b.base2 = field.element(*rec.base2);
      if (b.base1) check(*b.base1 * *b.base1 == b.u1, "positive block u1 is not the square of its base unit");
      if (b.base2) check(*b.base2 * *b.base2 == b.u2, "positive block u2 is not the square of its base unit");
      blocks.push_back(std::move(b));
    }
    const ConstructionCertificate fresh = certify_blocks(blocks, options);
    check(fresh.d == cert.d, "d mismatch");
    check(fresh.a1 == cert.a1 && fresh.a2 == cert.a2, "matrices do not match the stored units");
    check(fresh.charpoly1 == cert.charpoly1 && fresh.charpoly2 == cert.charpoly2, "charpoly mismatch");
    check(fresh.det1 == cert.det1 && fresh.det2 == cert.det2, "determinant mismatch");
    check(fresh.hyperbolic1 == cert.hyperbolic1 && fresh.hyperbolic2 == cert.hyperbolic2, "hyperbolic flag mismatch");
    check(fresh.commuting == cert.commuting, "commuting flag mismatch");
    check(fresh.independent == cert.independent, "independence status mismatch");
    check(fresh.s1 == cert.s1 && fresh.s2 == cert.s2, "sign pattern mismatch");
    check(fresh.obstruction == cert.obstruction, "obstruction class mismatch");
    check(fresh.oracle_agreement == cert.oracle_agreement, "oracle agreement mismatch");
    check(fresh.theorem_scope == cert.theorem_scope, "theorem_scope mismatch");
    for (std::size_t k = 0; k < std::min(fresh.blocks.size(), cert.blocks.size()); ++k) {
      check(fresh.blocks[k].s1 == cert.blocks[k].s1 && fresh.blocks[k].s2 == cert.blocks[k].s2,
            "block " + std::to_string(k) + " sign pattern mismatch");
      check(fresh.blocks[k].independent == cert.blocks[k].independent,
            "block " + std::to_string(k) + " independence mismatch");
    }
  } catch (const Error& e) {
    problems.push_back(std::string("recomputation failed: ") + e.what());
  }
  return problems;
}

namespace {

bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(), b.coeffs().rbegin(),
                                      b.coeffs().rend());
}

}  // namespace

CatalogReport conjugacy_catalog(std::span<const ConstructionCertificate> certs) {
  CatalogReport report;
  if (certs.empty()) return report;
  report.d = certs.front().d;
  for (std::size_t k = 0; k < certs.size(); ++k) {
    const auto& c = certs[k];
    if (c.d != report.d) throw Error(Errc::MixedDimensions, "catalog certificates must share one dimension");
    IntPoly first = c.charpoly1, second = c.charpoly2;
    if (poly_less(second, first)) std::swap(first, second);
    auto it = std::find_if(report.classes.begin(), report.classes.end(),
                           [&](const CatalogClass& cls) { return cls.first == first && cls.second == second; });
    if (it == report.classes.end()) {
      report.classes.push_back({first, second, {k}});
    } else {
      it->members.push_back(k);
    }
  }
  return report;
}

}  // namespace torus
