#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "torus/clifford.hpp"
#include "torus/recipes.hpp"

using namespace torus;

namespace {

int bit(ObstructionClass c) { return c == ObstructionClass::Generator ? 1 : 0; }

SignPattern random_even(std::size_t d, std::mt19937_64& rng) {
  const auto all = SignPattern::even_patterns(d);
  return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

// Commutator of the blade lifts e_A, e_B of two sign matrices, computed in Cl(d).
ObstructionClass blade_commutator(const SignPattern& s1, const SignPattern& s2) {
  const std::size_t d = s1.size();
  Blade a = 0, b = 0;
  for (std::size_t j = 0; j < d; ++j) {
    if (s1[j] < 0) a |= Blade{1} << j;
    if (s2[j] < 0) b |= Blade{1} << j;
  }
  const auto ea = CliffordElement::blade(d, a), eb = CliffordElement::blade(d, b);
  // For even blades the inverse is the reverse.
  const auto c = ea * eb * ea.reverse() * eb.reverse();
  return c.scalar_part() < 0 ? ObstructionClass::Generator : ObstructionClass::Trivial;
}

}  // namespace

TEST_CASE("pairing is symmetric and bilinear over F2 (exhaustive, d <= 5)") {
  std::size_t failures = 0;
  for (std::size_t d = 3; d <= 5; ++d) {
    const auto all = SignPattern::even_patterns(d);
    for (const auto& a : all)
      for (const auto& b : all) {
        if (pairing(a, b) != pairing(b, a)) ++failures;
        for (const auto& c : all) {
          if (bit(pairing(a * c, b)) != (bit(pairing(a, b)) ^ bit(pairing(c, b)))) ++failures;
          if (bit(pairing(a, b * c)) != (bit(pairing(a, b)) ^ bit(pairing(a, c)))) ++failures;
        }
      }
  }
  CHECK(failures == 0);
}

TEST_CASE("pairing matches the blade commutator in Cl(d) (exhaustive, d <= 6)") {
  std::size_t failures = 0;
  for (std::size_t d = 3; d <= 6; ++d) {
    const auto all = SignPattern::even_patterns(d);
    for (const auto& a : all)
      for (const auto& b : all)
        if (pairing(a, b) != blade_commutator(a, b)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("pairing and lift are invariant under coordinate permutations (200 cases, d <= 7)") {
  std::mt19937_64 rng(2024);
  std::size_t failures = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 3 + t % 5;
    const SignPattern s1 = random_even(d, rng), s2 = random_even(d, rng);
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const SignPattern p1 = s1.permuted(perm), p2 = s2.permuted(perm);
    if (pairing(s1, s2) != pairing(p1, p2)) ++failures;
    if (lift_loop(build_loop_spec(p1, p2), 16) != pairing(s1, s2)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("lift is independent of the chosen plane pairing (random pairings)") {
  std::mt19937_64 rng(7);
  std::size_t failures = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 3 + t % 6;
    const SignPattern s1 = random_even(d, rng), s2 = random_even(d, rng);
    const LoopSpec spec = build_loop_spec(s1, s2, random_pairing(s1, rng), random_pairing(s2, rng));
    if (lift_loop(spec, 16) != pairing(s1, s2)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("appending an all-positive block leaves the class unchanged") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 3 + t % 4, n = 3 + t % 3;
    const SignPattern s1 = random_even(d, rng), s2 = random_even(d, rng);
    const SignPattern pad = SignPattern::all_positive(n);
    CHECK(pairing(s1.concat(pad), s2.concat(pad)) == pairing(s1, s2));
  }
  const CubicBlock cubic = disc49_cubic_block();
  const ConstructionCertificate bare = certify_blocks({cubic.block});
  for (std::size_t d : {6u, 7u, 8u, 9u}) CHECK(assemble(d).obstruction == bare.obstruction);
}

TEST_CASE("obstruction is invariant under inversion, swapping and integral conjugation") {
  const ConstructionCertificate c = assemble(7);
  const SqIntMatrix i1 = inverse_unimodular(c.a1), i2 = inverse_unimodular(c.a2);
  CHECK(obstruction_of_pair(i1, c.a2) == c.obstruction);
  CHECK(obstruction_of_pair(c.a1, i2) == c.obstruction);
  CHECK(obstruction_of_pair(i1, i2) == c.obstruction);
  CHECK(obstruction_of_pair(c.a2, c.a1) == c.obstruction);
  std::mt19937_64 rng(55);
  for (int t = 0; t < 10; ++t) {
    const SqIntMatrix p = oracle::random_unimodular(7, rng, 8);
    const SqIntMatrix pinv = inverse_unimodular(p);
    const SqIntMatrix b1 = p * c.a1 * pinv, b2 = p * c.a2 * pinv;
    CHECK(obstruction_of_pair(b1, b2) == c.obstruction);
    CHECK(charpoly(b1) == c.charpoly1);
  }
}

TEST_CASE("products of the generators keep the pairing bilinear") {
  // A1 A2 has sign pattern S1 * S2, so <A1 A2, A2> = <A1, A2> + <A2, A2>.
  const ConstructionCertificate c = assemble(7);
  const SqIntMatrix prod = c.a1 * c.a2;
  CHECK(bit(obstruction_of_pair(prod, c.a2)) == (bit(c.obstruction) ^ bit(obstruction_of_pair(c.a2, c.a2))));
}
