#pragma once

// The Z/2 obstruction to lifting a commuting pair in SL_d(R) to the
// universal cover, computed from eigenvalue sign patterns.
//
// Write S_i for the set of coordinates where the common eigenbasis sees a
// negative eigenvalue of A_i. Deforming each A_i inside the diagonal group
// lands on D_i = diag(s_i), and D_i lifts to Spin(d) as the ordered product
// of the generators e_j, j in S_i. Two such products commute up to
// (-1)^{|S_1||S_2| - |S_1 n S_2|}, and for even weights that leaves
// (-1)^{|S_1 n S_2|}. So the commutator of lifts is the nontrivial deck
// transformation exactly when |S_1 n S_2| is odd.

#include <array>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "torus/intmatrix.hpp"
#include "torus/sign_pattern.hpp"

namespace torus {

enum class ObstructionClass { Trivial, Generator };

std::string to_string(ObstructionClass c);

/// Signs of the eigenvalues of m in ascending eigenvalue order (with
/// multiplicity). Throws NotTotallyRealSplit, NotHyperbolic.
SignPattern sign_pattern_of(const SqIntMatrix& m);

/// Sign patterns of a commuting pair in a common eigenbasis, recovered from
/// the negative-eigenvalue counts of a1, a2 and a1*a2. Coordinates are
/// grouped as (-,-), (-,+), (+,-), (+,+). Preconditions as obstruction_of_pair.
std::pair<SignPattern, SignPattern> joint_sign_patterns(const SqIntMatrix& a1, const SqIntMatrix& a2);

/// Generator iff |S_1 n S_2| is odd. Throws DimMismatch, OddWeight, DimTooSmall.
ObstructionClass pairing(const SignPattern& s1, const SignPattern& s2);

/// Throws DimMismatch, DimTooSmall, NotCommuting, DetNotOne,
/// NotTotallyRealSplit, NotHyperbolic.
ObstructionClass obstruction_of_pair(const SqIntMatrix& a1, const SqIntMatrix& a2);

/// Coordinate rotation plane, 0-based with i < j.
struct Plane {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const Plane&, const Plane&) = default;
};

/// Left-translated path t -> multiplier * R(t), where R(t) rotates through
/// the listed planes one after another, each by direction * pi * t.
/// direction -1 is the pointwise inverse of the forward path.
struct PathSegment {
  SignPattern multiplier;
  std::vector<Plane> planes;
  int direction = 1;

  SignPattern start() const { return multiplier; }
  /// A rotation by +-pi in plane (i, j) flips the signs of coordinates i and j.
  SignPattern end() const;
};

/// eta_1 * (D_1 . eta_2) * (D_1 D_2 . eta_1^-1) * (D_2 . eta_2^-1).
struct LoopSpec {
  std::size_t d = 0;
  std::array<PathSegment, 4> segments;

  /// Consecutive segments share endpoints and the loop starts and ends at I.
  bool closes() const;
  std::string to_string() const;
};

using PlanePairing = std::vector<Plane>;

/// Sorted coordinates paired as (s_0, s_1), (s_2, s_3), ...
PlanePairing sorted_adjacent_pairing(const SignPattern& s);
/// Uniformly shuffled coordinates paired consecutively, each pair sorted.
PlanePairing random_pairing(const SignPattern& s, std::mt19937_64& rng);

/// Validates like pairing, then assembles and checks the four segments.
LoopSpec build_loop_spec(const SignPattern& s1, const SignPattern& s2);
LoopSpec build_loop_spec(const SignPattern& s1, const SignPattern& s2, const PlanePairing& planes1,
                         const PlanePairing& planes2);

}  // namespace torus
