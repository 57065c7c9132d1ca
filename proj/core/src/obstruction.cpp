#include "torus/obstruction.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "torus/error.hpp"

namespace torus {

std::string to_string(ObstructionClass c) { return c == ObstructionClass::Generator ? "Generator" : "Trivial"; }

SignPattern sign_pattern_of(const SqIntMatrix& m) {
  if (!is_hyperbolic_matrix(m)) throw Error(Errc::NotHyperbolic, "matrix has an eigenvalue +-1");
  const std::size_t negatives = negative_eigenvalue_count(m);
  std::vector<int> v(m.dim(), 1);
  std::fill_n(v.begin(), negatives, -1);
  return SignPattern(std::move(v));
}

namespace {

void check_pair_shape(const SignPattern& s1, const SignPattern& s2) {
  if (s1.size() != s2.size()) throw Error(Errc::DimMismatch, "sign patterns of different length");
  if (s1.size() < 3) throw Error(Errc::DimTooSmall, "obstruction needs d >= 3 (pi_1(SO(2)) is Z)");
  if (s1.weight() % 2 || s2.weight() % 2) {
    throw Error(Errc::OddWeight, "sign pattern with an odd number of negative entries is not in SL_d");
  }
}

void check_matrix_pair(const SqIntMatrix& a1, const SqIntMatrix& a2) {
  if (a1.dim() != a2.dim()) throw Error(Errc::DimMismatch, "generators of different dimension");
  if (a1.dim() < 3) throw Error(Errc::DimTooSmall, "obstruction needs d >= 3");
  if (!commute_check(a1, a2)) throw Error(Errc::NotCommuting, "generators do not commute");
  for (const auto* a : {&a1, &a2}) {
    if (det(*a) != 1) throw Error(Errc::DetNotOne, "generator is not in SL_d(Z)");
    if (!is_hyperbolic_matrix(*a)) throw Error(Errc::NotHyperbolic, "generator has an eigenvalue +-1");
  }
}

SignPattern flipped(const SignPattern& s, const std::vector<Plane>& planes) {
  std::vector<int> v = s.signs();
  for (const auto& p : planes) {
    if (p.i >= v.size() || p.j >= v.size()) throw Error(Errc::BadPlane, "rotation plane outside the dimension");
    v[p.i] = -v[p.i];
    v[p.j] = -v[p.j];
  }
  return SignPattern(std::move(v));
}

void check_covers(const SignPattern& s, const PlanePairing& planes) {
  std::multiset<std::size_t> covered;
  for (const auto& p : planes) {
    if (p.i >= p.j || p.j >= s.size()) throw Error(Errc::BadPlane, "plane must satisfy i < j < d");
    covered.insert(p.i);
    covered.insert(p.j);
  }
  const auto neg = s.negative_set();
  if (covered.size() != neg.size() || !std::equal(covered.begin(), covered.end(), neg.begin())) {
    throw Error(Errc::InvalidArgument, "plane pairing must cover the negative coordinates exactly once");
  }
}

}  // namespace

std::pair<SignPattern, SignPattern> joint_sign_patterns(const SqIntMatrix& a1, const SqIntMatrix& a2) {
  check_matrix_pair(a1, a2);
  const std::size_t w1 = negative_eigenvalue_count(a1);
  const std::size_t w2 = negative_eigenvalue_count(a2);
  // a1 and a2 are simultaneously triangularizable, so a1*a2 has real eigenvalues
  // whose signs are the entrywise products; its negatives are S1 xor S2.
  const std::size_t w12 = negative_eigenvalue_count(a1 * a2);
  if ((w1 + w2 < w12) || (w1 + w2 - w12) % 2) internal_error("inconsistent negative-eigenvalue counts");
  const std::size_t both = (w1 + w2 - w12) / 2;
  if (both > std::min(w1, w2)) internal_error("inconsistent negative-eigenvalue counts");
  const std::size_t d = a1.dim();
  std::vector<int> s1(d, 1), s2(d, 1);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < both; ++k, ++pos) s1[pos] = s2[pos] = -1;
  for (std::size_t k = 0; k < w1 - both; ++k, ++pos) s1[pos] = -1;
  for (std::size_t k = 0; k < w2 - both; ++k, ++pos) s2[pos] = -1;
  return {SignPattern(std::move(s1)), SignPattern(std::move(s2))};
}

ObstructionClass pairing(const SignPattern& s1, const SignPattern& s2) {
  check_pair_shape(s1, s2);
  std::size_t common = 0;
  for (std::size_t j = 0; j < s1.size(); ++j)
    if (s1[j] < 0 && s2[j] < 0) ++common;
  return common % 2 ? ObstructionClass::Generator : ObstructionClass::Trivial;
}

ObstructionClass obstruction_of_pair(const SqIntMatrix& a1, const SqIntMatrix& a2) {
  const auto [s1, s2] = joint_sign_patterns(a1, a2);
  return pairing(s1, s2);
}

SignPattern PathSegment::end() const { return flipped(multiplier, planes); }

bool LoopSpec::closes() const {
  const SignPattern id = SignPattern::all_positive(d);
  if (!(segments[0].start() == id)) return false;
  for (std::size_t k = 0; k + 1 < segments.size(); ++k)
    if (!(segments[k].end() == segments[k + 1].start())) return false;
  return segments.back().end() == id;
}

std::string LoopSpec::to_string() const {
  static constexpr const char* names[4] = {"eta1", "D1.eta2", "D1D2.eta1^-1", "D2.eta2^-1"};
  std::ostringstream os;
  os << "loop in SO(" << d << ")\n";
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const auto& s = segments[k];
    os << "  " << names[k] << ": " << s.start().to_string() << " -> " << s.end().to_string() << " planes";
    if (s.planes.empty()) os << " (none)";
    for (const auto& p : s.planes) os << " (" << p.i + 1 << "," << p.j + 1 << ")";
    os << " angle 0->" << (s.direction > 0 ? "pi" : "-pi") << "\n";
  }
  return os.str();
}

PlanePairing sorted_adjacent_pairing(const SignPattern& s) {
  const auto neg = s.negative_set();
  const std::vector<std::size_t> idx(neg.begin(), neg.end());
  PlanePairing out;
  for (std::size_t k = 0; k + 1 < idx.size(); k += 2) out.push_back({idx[k], idx[k + 1]});
  return out;
}

PlanePairing random_pairing(const SignPattern& s, std::mt19937_64& rng) {
  const auto neg = s.negative_set();
  std::vector<std::size_t> idx(neg.begin(), neg.end());
  std::shuffle(idx.begin(), idx.end(), rng);
  PlanePairing out;
  for (std::size_t k = 0; k + 1 < idx.size(); k += 2) {
    out.push_back({std::min(idx[k], idx[k + 1]), std::max(idx[k], idx[k + 1])});
  }
  return out;
}

LoopSpec build_loop_spec(const SignPattern& s1, const SignPattern& s2) {
  return build_loop_spec(s1, s2, sorted_adjacent_pairing(s1), sorted_adjacent_pairing(s2));
}

LoopSpec build_loop_spec(const SignPattern& s1, const SignPattern& s2, const PlanePairing& planes1,
                         const PlanePairing& planes2) {
  check_pair_shape(s1, s2);
  check_covers(s1, planes1);
  check_covers(s2, planes2);
  const std::size_t d = s1.size();
  const SignPattern id = SignPattern::all_positive(d);
  // Diagonal sign matrices are involutions and commute, so D1 D2 D1^-1 = D2.
  const SignPattern d1d2 = s1 * s2;
  const SignPattern fourth = d1d2 * s1;
  if (!(fourth == s2)) internal_error("D1 D2 D1^-1 != D2");
  LoopSpec spec;
  spec.d = d;
  spec.segments = {PathSegment{id, planes1, 1}, PathSegment{s1, planes2, 1}, PathSegment{d1d2, planes1, -1},
                   PathSegment{fourth, planes2, -1}};
  if (!spec.closes()) internal_error("loop segments do not chain");
  return spec;
}

}  // namespace torus
