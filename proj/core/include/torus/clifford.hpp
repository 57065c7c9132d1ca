#pragma once

// Numerical model of Spin(d) inside the real Clifford algebra Cl(d) with
// e_i^2 = -1. Blades are bitmasks over {e_1..e_d}; blade products get their
// signs combinatorially, so only coefficient magnitudes carry rounding error.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "torus/obstruction.hpp"

namespace torus {

using Blade = std::uint32_t;

inline constexpr std::size_t kMaxCliffordDim = 12;

/// Sign of e_A e_B = sign * e_{A xor B}.
int blade_product_sign(Blade a, Blade b);

class CliffordElement {
 public:
  /// Throws DimTooLarge for d > kMaxCliffordDim.
  explicit CliffordElement(std::size_t d);

  static CliffordElement scalar(std::size_t d, double value);
  /// e_{i+1}, 0-based i.
  static CliffordElement basis_vector(std::size_t d, std::size_t i);
  static CliffordElement blade(std::size_t d, Blade b, double value = 1.0);
  static CliffordElement vector(const std::vector<double>& v);

  std::size_t dim() const noexcept { return d_; }
  const std::map<Blade, double>& terms() const noexcept { return terms_; }
  double coefficient(Blade b) const;
  double scalar_part() const { return coefficient(0); }
  /// Blades with a nonzero coefficient, ascending.
  std::vector<Blade> support() const;
  bool is_even() const;
  bool is_grade1() const;

  /// Reverses the order of generators in every blade.
  CliffordElement reverse() const;
  /// Coordinates of the grade-1 part.
  std::vector<double> grade1() const;
  /// Euclidean norm of the coefficient vector.
  double coefficient_norm() const;
  CliffordElement scaled(double s) const;

  /// "[1,e1e2]" style list of blades.
  std::string support_string() const;

  friend CliffordElement operator+(const CliffordElement& a, const CliffordElement& b);
  friend CliffordElement operator-(const CliffordElement& a, const CliffordElement& b);
  friend CliffordElement geom_product(const CliffordElement& a, const CliffordElement& b);

 private:
  void prune();
  std::size_t d_;
  std::map<Blade, double> terms_;
};

/// Bilinear geometric product; throws DimMismatch. Terms below 1e-14 pruned.
CliffordElement geom_product(const CliffordElement& a, const CliffordElement& b);
CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);

/// Even-grade element with R reverse(R) = 1.
using Rotor = CliffordElement;

/// cos(theta/2) + sin(theta/2) e_i e_j (0-based i < j < d); its conjugation
/// action is the rotation by theta in the (i, j) plane. Throws BadPlane.
Rotor plane_rotor(std::size_t i, std::size_t j, double theta, std::size_t d);

/// v -> R v reverse(R) on a grade-1 vector.
std::vector<double> rotate_vector(const Rotor& r, const std::vector<double>& v);

/// d x d rotation matrix (row-major) of the conjugation action.
std::vector<double> rotor_matrix(const Rotor& r);

/// Rotor renormalized so that R reverse(R) = 1.
Rotor normalized(const Rotor& r);

/// Receives one line per lift step: "t=<param> blade-support=<list> scalar=<value>".
using TraceSink = std::function<void(const std::string&)>;

inline constexpr double kLiftWindow = 1e-6;

/// Lifts the closed loop to Spin(d) by composing plane-rotor increments
/// segment by segment. Constant left multipliers contribute no increment.
/// Throws LoopNotClosed, BadPlane, DimTooLarge, InvalidArgument (steps < 8),
/// IndeterminateLift.
ObstructionClass lift_loop(const LoopSpec& spec, std::size_t steps_per_segment = 64, const TraceSink& trace = {});

/// Same contract with unit quaternions, for loops whose rotation planes all
/// lie inside one 3-element coordinate set. Throws NotRank3Confined.
ObstructionClass so3_quaternion_check(const LoopSpec& spec, std::size_t steps_per_segment = 64);

}  // namespace torus
