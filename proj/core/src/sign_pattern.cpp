#include "torus/sign_pattern.hpp"

#include <algorithm>
#include <bit>

#include "torus/error.hpp"

namespace torus {

SignPattern::SignPattern(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_)
    if (s != 1 && s != -1) throw Error(Errc::InvalidArgument, "sign pattern entries must be +1 or -1");
}

SignPattern SignPattern::from_negative_set(std::size_t d, const std::set<std::size_t>& negatives) {
  std::vector<int> v(d, 1);
  for (std::size_t j : negatives) {
    if (j >= d) throw Error(Errc::IndexOutOfRange, "negative coordinate outside pattern length");
    v[j] = -1;
  }
  return SignPattern(std::move(v));
}

std::vector<SignPattern> SignPattern::even_patterns(std::size_t d) {
  if (d > 24) throw Error(Errc::DimTooLarge, "even pattern enumeration limited to d <= 24");
  std::vector<SignPattern> out;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    std::vector<int> v(d, 1);
    for (std::size_t j = 0; j < d; ++j)
      if (mask & (1u << j)) v[j] = -1;
    out.emplace_back(std::move(v));
  }
  return out;
}

std::size_t SignPattern::weight() const {
  return static_cast<std::size_t>(std::count(signs_.begin(), signs_.end(), -1));
}

std::set<std::size_t> SignPattern::negative_set() const {
  std::set<std::size_t> s;
  for (std::size_t j = 0; j < signs_.size(); ++j)
    if (signs_[j] < 0) s.insert(j);
  return s;
}

SignPattern SignPattern::concat(const SignPattern& tail) const {
  std::vector<int> v = signs_;
  v.insert(v.end(), tail.signs_.begin(), tail.signs_.end());
  return SignPattern(std::move(v));
}

SignPattern SignPattern::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != signs_.size()) throw Error(Errc::DimMismatch, "permutation length differs from pattern");
  std::vector<int> v(signs_.size());
  for (std::size_t j = 0; j < perm.size(); ++j) v[j] = signs_.at(perm[j]);
  return SignPattern(std::move(v));
}

std::string SignPattern::to_string() const {
  std::string s = "(";
  for (std::size_t j = 0; j < signs_.size(); ++j) {
    if (j) s += ",";
    s += signs_[j] > 0 ? "+" : "-";
  }
  return s + ")";
}

SignPattern operator*(const SignPattern& a, const SignPattern& b) {
  if (a.size() != b.size()) throw Error(Errc::DimMismatch, "sign patterns of different length");
  std::vector<int> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.signs_[j] * b.signs_[j];
  return SignPattern(std::move(v));
}

}  // namespace torus
