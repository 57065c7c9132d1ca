// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "torus/clifford.hpp"
#include "torus/error.hpp"
#include "torus/recipes.hpp"
#include "torus_cli/cli.hpp"

using namespace torus;
namespace fs = std::filesystem;

namespace {

// Runtime limits, in seconds.
constexpr double kAc1Limit = 0.001;
constexpr double kAc2Limit = 1.0;
constexpr double kAc3Limit = 10.0;
constexpr double kAc4Limit = 1.0;
constexpr double kAc5Limit = 120.0;
constexpr double kAc6Limit = 120.0;
constexpr double kAc7Limit = 30.0;
constexpr double kAc8Limit = 30.0;

// Oracle step counts exercised by AC4.
constexpr std::size_t kAc4Steps[] = {8, 64, 512};

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int run_criterion(const char* id, const char* title, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit;
  const bool pass = o.ok && in_time;
  std::printf("%s %s: %s [%.3f ms, limit %.3f ms]%s%s\n", id, pass ? "PASS" : "FAIL", title, secs * 1e3, limit * 1e3,
              o.detail.empty() ? "" : " ", o.detail.c_str());
  if (!in_time) std::printf("%s runtime limit exceeded\n", id);
  std::fflush(stdout);
  return pass ? 0 : 1;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_tool(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t intersection(const SignPattern& a, const SignPattern& b) {
  std::size_t c = 0;
  for (std::size_t j = 0; j < a.size(); ++j) c += (a[j] < 0 && b[j] < 0);
  return c;
}

SignPattern neg(std::size_t d, std::set<std::size_t> one_based) {
  std::set<std::size_t> zero;
  for (auto k : one_based) zero.insert(k - 1);
  return SignPattern::from_negative_set(d, zero);
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / ("torus_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(work);
  int failures = 0;

  // Pages in the code so AC1 times the computation rather than the first call.
  (void)discriminant(IntPoly{-1, 0, 1});

  failures += run_criterion("AC1", "discriminant(x^3 + x^2 - 2x - 1) = 49", kAc1Limit, [] {
    Outcome o;
    const BigInt disc = discriminant(IntPoly{-1, -2, 1, 1});
    o.require(disc == 49, "got " + disc.get_str());
    return o;
  });

  failures += run_criterion("AC2", "-eps1 and eps1 eps2 give commuting hyperbolic B1, B2 in SL_3(Z), |S1 n S2| = 1",
                            kAc2Limit, [] {
    Outcome o;
    const TotallyRealField k = TotallyRealField::create(IntPoly{-1, -2, 1, 1});
    const FieldElement eps1 = k.element({-1, 1, 1}), eps2 = k.element({2, 0, -1});
    const FieldElement u1 = -eps1, u2 = eps1 * eps2;
    const SqIntMatrix b1 = mult_matrix(u1), b2 = mult_matrix(u2);
    o.require(det(b1) == 1 && det(b2) == 1, "determinants");
    o.require(commute_check(b1, b2), "commutation");
    o.require(is_hyperbolic_matrix(b1) && is_hyperbolic_matrix(b2), "hyperbolicity");
    const SignPattern s1 = conjugate_signs(u1), s2 = conjugate_signs(u2);
    o.require(s1.weight() == 2 && s2.weight() == 2, "weights " + s1.to_string() + " " + s2.to_string());
    o.require(intersection(s1, s2) == 1, "intersection");
    o.require(independence_certify(u1, u2).independent(), "independence");
    return o;
  });

  failures += run_criterion("AC3", "construct --d 7..10: Generator with theorem_scope", kAc3Limit, [&] {
    Outcome o;
    for (int d = 7; d <= 10; ++d) {
      const std::string path = (work / ("construct" + std::to_string(d) + ".json")).string();
      const CliRun r = run_tool({"construct", "--d", std::to_string(d), "--out", path});
      o.require(r.code == 0, "d = " + std::to_string(d) + " exit " + std::to_string(r.code) + " " + r.err);
      if (r.code != 0) continue;
      const cli::json cert = cli::read_json_file(path);
      o.require(cert["d"] == d, "d field");
      o.require(cert["obstruction"] == "Generator", "obstruction at d = " + std::to_string(d));
      o.require(cert["theorem_scope"] == true, "theorem_scope at d = " + std::to_string(d));
      o.require(cert["oracle_agreement"] == true, "oracle agreement at d = " + std::to_string(d));
      o.require(run_tool({"verify", path}).code == 0, "re-verify at d = " + std::to_string(d));
    }
    return o;
  });

  failures += run_criterion("AC4", "S1 = {1,2}, S2 = {2,3}: formula, lift_loop(8/64/512), quaternion all Generator",
                            kAc4Limit, [] {
    Outcome o;
    const SignPattern s1 = neg(3, {1, 2}), s2 = neg(3, {2, 3});
    const LoopSpec spec = build_loop_spec(s1, s2);
    o.require(pairing(s1, s2) == ObstructionClass::Generator, "formula");
    for (std::size_t steps : kAc4Steps) {
      o.require(lift_loop(spec, steps) == ObstructionClass::Generator, "lift at " + std::to_string(steps));
    }
    o.require(so3_quaternion_check(spec) == ObstructionClass::Generator, "quaternion");
    return o;
  });

  failures += run_criterion("AC5", "exhaustive formula == lift_loop for d = 3..6 (16 + 64 + 256 + 1024 pairs)",
                            kAc5Limit, [] {
    Outcome o;
    std::size_t pairs = 0, bad = 0;
    for (std::size_t d = 3; d <= 6; ++d) {
      const auto all = SignPattern::even_patterns(d);
      for (const auto& a : all)
        for (const auto& b : all) {
          ++pairs;
          if (pairing(a, b) != lift_loop(build_loop_spec(a, b), 64)) ++bad;
        }
    }
    o.require(pairs == 16 + 64 + 256 + 1024, "pair count " + std::to_string(pairs));
    o.require(bad == 0, std::to_string(bad) + " discrepancies");
    return o;
  });

  failures += run_criterion("AC6", "property suites (bilinearity, permutations, positive blocks, homomorphisms)",
                            kAc6Limit, [] {
    Outcome o;
    std::mt19937_64 rng(6);
    std::size_t bad = 0;
    // Symmetry and F2-bilinearity, exhaustive d <= 5.
    for (std::size_t d = 3; d <= 5; ++d) {
      const auto all = SignPattern::even_patterns(d);
      for (const auto& a : all)
        for (const auto& b : all) {
          bad += pairing(a, b) != pairing(b, a);
          for (const auto& c : all) {
            const bool lhs = pairing(a * c, b) == ObstructionClass::Generator;
            const bool rhs = (pairing(a, b) == ObstructionClass::Generator) != (pairing(c, b) == ObstructionClass::Generator);
            bad += lhs != rhs;
          }
        }
    }
    o.require(bad == 0, "bilinearity/symmetry");
    // Permutation invariance, 200 random cases with d <= 7.
    bad = 0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t d = 3 + t % 5;
      const auto all = SignPattern::even_patterns(d);
      std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
      const SignPattern a = all[pick(rng)], b = all[pick(rng)];
      std::vector<std::size_t> perm(d);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      bad += pairing(a, b) != pairing(a.permuted(perm), b.permuted(perm));
      bad += lift_loop(build_loop_spec(a.permuted(perm), b.permuted(perm)), 16) != pairing(a, b);
    }
    o.require(bad == 0, "permutation invariance");
    // Positive-block stability.
    const CubicBlock cubic = disc49_cubic_block();
    const ObstructionClass base = pairing(cubic.s1, cubic.s2);
    for (std::size_t n = 3; n <= 8; ++n) {
      const SignPattern pad = SignPattern::all_positive(n);
      o.require(pairing(cubic.s1.concat(pad), cubic.s2.concat(pad)) == base, "positive padding n = " + std::to_string(n));
    }
    // Sign multiplicativity and mult_matrix homomorphism, 200 random pairs.
    const TotallyRealField k = TotallyRealField::create(IntPoly{1, 1, -3, -1, 1});
    std::uniform_int_distribution<long> coef(-6, 6);
    bad = 0;
    for (int t = 0; t < 200; ++t) {
      std::vector<BigInt> a(4), b(4);
      for (auto& x : a) x = coef(rng);
      for (auto& x : b) x = coef(rng);
      const FieldElement u = k.element(a), v = k.element(b);
      bad += !(mult_matrix(u * v) == mult_matrix(u) * mult_matrix(v));
      if (!u.is_zero() && !v.is_zero()) bad += !(conjugate_signs(u * v) == conjugate_signs(u) * conjugate_signs(v));
    }
    o.require(bad == 0, "homomorphism/multiplicativity");
    // interval_eval soundness, 1000 samples.
    bad = 0;
    std::uniform_int_distribution<long> mant(-4096, 4096), pc(-20, 20);
    for (int t = 0; t < 1000; ++t) {
      std::vector<BigInt> c(1 + t % 6);
      for (auto& x : c) x = pc(rng);
      const IntPoly p(c);
      Dyadic lo(BigInt(mant(rng)), -8), hi(BigInt(mant(rng)), -8);
      if (hi < lo) std::swap(lo, hi);
      const DyadicInterval box = interval_eval(p, DyadicInterval{lo, hi});
      for (const Dyadic& x : {lo, hi, midpoint(lo, hi)}) bad += !box.contains(eval_dyadic(p, x));
    }
    o.require(bad == 0, "interval_eval soundness");
    return o;
  });

  failures += run_criterion("AC7", "catalog over 3 quartic fields at d = 7: >= 3 distinct classes", kAc7Limit, [&] {
    Outcome o;
    const char* polys[] = {"[1,0,-4,0,1]", "[1,1,-3,-1,1]", "[1,4,-4,-1,1]"};
    std::vector<std::string> args{"catalog"};
    for (int i = 0; i < 3; ++i) {
      const fs::path field = work / ("quartic" + std::to_string(i) + ".json");
      std::ofstream(field) << R"({"field":{"poly":)" << polys[i] << "}}";
      const std::string cert = (work / ("catalog" + std::to_string(i) + ".json")).string();
      const CliRun r = run_tool({"construct", "--d", "7", "--field", field.string(), "--out", cert});
      o.require(r.code == 0, std::string("construct with ") + polys[i] + ": " + r.err);
      args.push_back(cert);
    }
    const CliRun r = run_tool(args);
    o.require(r.code == 0, "catalog exit " + std::to_string(r.code));
    o.require(r.out.find("3 certificates at d = 7, 3 distinct charpoly classes") != std::string::npos,
              "report: " + r.out.substr(0, r.out.find('\n')));
    return o;
  });

  failures += run_criterion("AC8", "negative controls: (M, M), disjoint planes, d = 5 refused, NotTotallyReal",
                            kAc8Limit, [&] {
    Outcome o;
    const ConstructionCertificate c = assemble(7);
    o.require(obstruction_of_pair(c.a1, c.a1) == ObstructionClass::Trivial, "(A1, A1)");
    o.require(obstruction_of_pair(c.a2, c.a2) == ObstructionClass::Trivial, "(A2, A2)");
    const CubicBlock cubic = disc49_cubic_block();
    o.require(obstruction_of_pair(cubic.b1, cubic.b1) == ObstructionClass::Trivial, "(B1, B1)");
    for (std::size_t d = 4; d <= 8; ++d) {
      const SignPattern s1 = neg(d, {1, 2}), s2 = neg(d, {3, 4});
      o.require(pairing(s1, s2) == ObstructionClass::Trivial, "disjoint formula d = " + std::to_string(d));
      o.require(lift_loop(build_loop_spec(s1, s2)) == ObstructionClass::Trivial, "disjoint lift d = " + std::to_string(d));
    }
    const CliRun r5 = run_tool({"construct", "--d", "5"});
    o.require(r5.code == 2, "construct --d 5 exit " + std::to_string(r5.code));
    bool refused = false;
    try {
      TotallyRealField::create(IntPoly{-1, -1, 0, 1});  // x^3 - x - 1 has one real root
    } catch (const Error& e) {
      refused = e.code() == Errc::NotTotallyReal;
    }
    o.require(refused, "x^3 - x - 1 not refused with NotTotallyReal");
    const fs::path nr = work / "not_totally_real.json";
    std::ofstream(nr) << R"({"field":{"poly":[-1,-1,0,1]},"units":{"u1":[1,0,0],"u2":[1,0,0]}})";
    const CliRun rv = run_tool({"verify", nr.string()});
    o.require(rv.code == 2 && rv.err.find("NotTotallyReal") != std::string::npos, "CLI verify refusal");
    return o;
  });

  fs::remove_all(work);
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
