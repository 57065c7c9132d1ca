#pragma once

// End-to-end constructions of commuting hyperbolic pairs
// A_i = diag(B_i, C_i) in SL_d(Z) and their obstruction certificates.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torus/intmatrix.hpp"
#include "torus/numberfield.hpp"
#include "torus/obstruction.hpp"

namespace torus {

/// Built-in totally real defining polynomials, one per degree 3..8.
const std::vector<IntPoly>& builtin_field_polys();
std::optional<IntPoly> builtin_field_poly(std::size_t degree);

/// The discriminant-49 cubic x^3 + x^2 - 2x - 1.
IntPoly cubic_field_poly();

/// One diagonal block: the multiplication matrices of u1, u2 on Z[alpha].
struct FieldBlock {
  std::string role;  // "cubic", "positive" or "input"
  TotallyRealField field;
  FieldElement u1;
  FieldElement u2;
  /// For positive blocks: the units whose squares are u1, u2.
  std::optional<FieldElement> base1;
  std::optional<FieldElement> base2;
};

struct CubicBlock {
  FieldBlock block;
  FieldElement eps1;
  FieldElement eps2;
  SqIntMatrix b1;
  SqIntMatrix b2;
  SignPattern s1;
  SignPattern s2;
};

/// B1 = M(-eps1), B2 = M(eps1 eps2) with eps1 = a^2 + a - 1, eps2 = -a^2 + 2.
/// Verifies disc 49, unit-ness, det 1, hyperbolicity, commutation and
/// |S1 n S2| = 1; a failed check raises Internal.
CubicBlock disc49_cubic_block();

struct PositiveBlock {
  FieldBlock block;
  SqIntMatrix c1;
  SqIntMatrix c2;
  IndependenceResult independence;
};

/// C_i = M(u_i^2). Throws InvalidArgument (degree < 3), NotAUnit,
/// NotHyperbolic, Inconclusive (independence not certified).
PositiveBlock positive_block(const TotallyRealField& field, const FieldElement& u1, const FieldElement& u2,
                             const IndependenceBudget& budget = {});

/// All units with coefficients in [-bound, bound]^n, one representative per
/// sign (first nonzero coefficient positive), in lexicographic order with the
/// constant coefficient most significant.
std::vector<UnitCertificate> unit_search(const TotallyRealField& field, long bound, unsigned jobs = 1);

/// First certified-independent pair of hyperbolic units found by unit_search
/// with bounds 1..max_bound. Throws NoFieldAvailable when none is found.
std::pair<FieldElement, FieldElement> find_independent_units(const TotallyRealField& field, long max_bound = 2,
                                                             unsigned jobs = 1);

struct BlockRecord {
  std::string role;
  IntPoly poly;
  BigInt disc;
  std::vector<BigInt> u1;
  std::vector<BigInt> u2;
  std::optional<std::vector<BigInt>> base1;
  std::optional<std::vector<BigInt>> base2;
  SignPattern s1;
  SignPattern s2;
  bool independent = false;
  std::optional<IndependenceWitness> witness;
};

struct ConstructionCertificate {
  std::size_t d = 0;
  std::vector<BlockRecord> blocks;
  SqIntMatrix a1{1};
  SqIntMatrix a2{1};
  IntPoly charpoly1;
  IntPoly charpoly2;
  BigInt det1;
  BigInt det2;
  bool hyperbolic1 = false;
  bool hyperbolic2 = false;
  bool commuting = false;
  /// Independent when some block certifies independence: a relation
  /// A1^a A2^b = I restricts to every block.
  bool independent = false;
  SignPattern s1;
  SignPattern s2;
  std::size_t intersection = 0;
  ObstructionClass obstruction = ObstructionClass::Trivial;
  /// Present when the Clifford oracle ran (d <= 12).
  std::optional<bool> oracle_agreement;
  bool theorem_scope = false;
};

struct CertifyOptions {
  std::size_t oracle_steps = 64;
  IndependenceBudget budget{};
  long unit_bound = 2;
  unsigned jobs = 1;
};

/// Certificate for A_i = block_diag over the blocks' multiplication matrices.
ConstructionCertificate certify_blocks(const std::vector<FieldBlock>& blocks, const CertifyOptions& options = {});

/// Certificate for a bare commuting pair (no field data): sign patterns come
/// from joint_sign_patterns and independence is left uncertified.
ConstructionCertificate certify_matrices(const SqIntMatrix& a1, const SqIntMatrix& a2,
                                         const CertifyOptions& options = {});

/// The cubic block followed by a positive block from a degree-(d-3) field
/// (built-in unless supplied). Throws InvalidArgument (d - 3 < 3),
/// NoFieldAvailable, DimMismatch (supplied field of the wrong degree).
ConstructionCertificate assemble(std::size_t d, const std::optional<TotallyRealField>& positive_field = std::nullopt,
                                 const CertifyOptions& options = {});

/// Recomputes everything derivable from the stored fields and units and
/// returns a description of each mismatch (empty when consistent).
std::vector<std::string> verify_certificate(const ConstructionCertificate& cert, const CertifyOptions& options = {});

struct CatalogClass {
  /// Unordered pair {charpoly(A1), charpoly(A2)}, stored in sorted order.
  IntPoly first;
  IntPoly second;
  std::vector<std::size_t> members;
};

struct CatalogReport {
  std::size_t d = 0;
  std::vector<CatalogClass> classes;
};

/// Groups certificates by their charpoly pair; distinct classes are
/// pairwise non-conjugate. Throws MixedDimensions.
CatalogReport conjugacy_catalog(std::span<const ConstructionCertificate> certs);

}  // namespace torus
