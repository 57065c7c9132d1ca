#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace torus {

/// A vector in {+1, -1}^d: the signs of the real eigenvalues of a
/// diagonalizable matrix in a fixed eigenbasis order. Also used as the
/// diagonal sign matrix diag(s_1, ..., s_d).
class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::vector<int> signs);
  SignPattern(std::initializer_list<int> signs) : SignPattern(std::vector<int>(signs)) {}

  static SignPattern all_positive(std::size_t d) { return SignPattern(std::vector<int>(d, 1)); }
  /// `negatives` holds 0-based coordinates.
  static SignPattern from_negative_set(std::size_t d, const std::set<std::size_t>& negatives);
  /// All patterns of length d with an even number of -1 entries, in
  /// lexicographic order of their bitmask (bit j set means coordinate j is -1).
  static std::vector<SignPattern> even_patterns(std::size_t d);

  std::size_t size() const noexcept { return signs_.size(); }
  int operator[](std::size_t j) const { return signs_[j]; }
  const std::vector<int>& signs() const noexcept { return signs_; }

  /// Number of -1 entries.
  std::size_t weight() const;
  std::set<std::size_t> negative_set() const;

  SignPattern concat(const SignPattern& tail) const;
  SignPattern permuted(const std::vector<std::size_t>& perm) const;

  /// "(-,+,-)"
  std::string to_string() const;

  /// Entrywise product (product of the diagonal sign matrices).
  friend SignPattern operator*(const SignPattern& a, const SignPattern& b);
  friend bool operator==(const SignPattern&, const SignPattern&) = default;

 private:
  std::vector<int> signs_;
};

}  // namespace torus
