#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "torus/clifford.hpp"
#include "torus/error.hpp"
#include "torus_cli/cli.hpp"

namespace torus::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUndecided = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Context {
  std::ostream& out;
  std::ostream& err;
  unsigned jobs = 1;
  std::size_t steps = 64;
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Internal: return kExitInternal;
    case Errc::Inconclusive:
    case Errc::IndeterminateLift: return kExitUndecided;
    default: return kExitInput;
  }
}

CertifyOptions options_for(const Context& ctx) {
  CertifyOptions o;
  o.oracle_steps = ctx.steps;
  o.jobs = ctx.jobs;
  return o;
}

TotallyRealField field_from(const InputSpec& spec) {
  if (!spec.field) throw InputError(InputErrorKind::SchemaError, "input needs \"field\"");
  return TotallyRealField::create(*spec.field);
}

std::size_t default_padded_dim(std::size_t n) {
  if (n >= 7) return n;
  return std::max<std::size_t>(7, n + 3);
}

// Cubic or general input block, padded by a positive block from a built-in field.
ConstructionCertificate certify_units(const InputSpec& spec, std::optional<std::size_t> d, const Context& ctx) {
  const TotallyRealField field = field_from(spec);
  const std::size_t n = field.degree();
  const std::size_t target = d.value_or(default_padded_dim(n));
  if (target < n) throw Error(Errc::InvalidArgument, "--d is smaller than the field degree");
  if (target != n && target - n < 3) {
    throw Error(Errc::InvalidArgument, "padding needs a positive block of degree >= 3; choose --d " +
                                           std::to_string(n) + " or >= " + std::to_string(n + 3));
  }
  const CertifyOptions options = options_for(ctx);
  std::vector<FieldBlock> blocks{
      FieldBlock{"input", field, field.element(spec.units->u1), field.element(spec.units->u2), std::nullopt,
                 std::nullopt}};
  if (target > n) {
    auto poly = builtin_field_poly(target - n);
    if (!poly) {
      throw Error(Errc::NoFieldAvailable, "no built-in totally real field of degree " + std::to_string(target - n));
    }
    const TotallyRealField pad = TotallyRealField::create(*poly);
    const auto [v1, v2] = find_independent_units(pad, options.unit_bound, options.jobs);
    blocks.push_back(positive_block(pad, v1, v2, options.budget).block);
  }
  return certify_blocks(blocks, options);
}

// Prints the verdict and returns the exit status for an emitted certificate.
int report_verdict(const ConstructionCertificate& cert, const Context& ctx) {
  ctx.out << verdict_line(cert) << "\n";
  if (cert.oracle_agreement && !*cert.oracle_agreement) {
    ctx.err << "error: Clifford oracle disagrees with the pairing formula\n";
    return kExitInternal;
  }
  return kExitOk;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(InputErrorKind::ParseError, "cannot write " + path);
  f << text;
}

int cmd_verify(const std::string& file, const Context& ctx) {
  const json j = read_json_file(file);
  if (j.is_object() && j.contains("schema")) {
    const ConstructionCertificate cert = certificate_from_json(j);
    const auto problems = verify_certificate(cert, options_for(ctx));
    if (!problems.empty()) {
      for (const auto& p : problems) ctx.err << "mismatch: " << p << "\n";
      ctx.out << "certificate FAILED (" << problems.size() << " mismatches)\n";
      return kExitInput;
    }
    ctx.out << "certificate OK: d = " << cert.d << ", obstruction " << to_string(cert.obstruction)
            << ", theorem_scope " << (cert.theorem_scope ? "true" : "false") << "\n";
    return kExitOk;
  }

  const InputSpec spec = parse_input(j);
  int status = kExitOk;
  if (spec.field) {
    const TotallyRealField field = TotallyRealField::create(*spec.field);
    ctx.out << "field " << field.poly().to_string() << ": irreducible, totally real, discriminant "
            << field.discriminant().get_str() << "\n";
    for (std::size_t k = 0; k < field.roots().size(); ++k) {
      ctx.out << "  root " << k + 1 << " in " << field.roots().intervals[k].to_string() << "\n";
    }
    if (spec.units) {
      const FieldElement u1 = field.element(spec.units->u1);
      const FieldElement u2 = field.element(spec.units->u2);
      for (const auto* u : {&u1, &u2}) {
        const auto cert = is_unit(*u);
        if (!cert) {
          ctx.err << "error: " << u->to_string() << " is not a unit\n";
          return kExitInput;
        }
        ctx.out << "unit " << u->to_string() << ": det M = " << cert->det_of_mult_matrix << ", signs "
                << cert->conjugate_signs.to_string() << (cert->hyperbolic ? ", hyperbolic" : ", not hyperbolic")
                << "\n";
        if (!cert->hyperbolic) status = kExitInput;
      }
      const IndependenceResult ind = independence_certify(u1, u2);
      ctx.out << "independence: " << (ind.independent() ? "certified" : "INCONCLUSIVE") << "\n";
      if (!ind.independent()) status = std::max(status, kExitUndecided);
    }
  }
  if (spec.matrices) {
    const auto& [a1, a2] = *spec.matrices;
    const auto [s1, s2] = joint_sign_patterns(a1, a2);
    ctx.out << "matrices: commuting, det 1, hyperbolic; joint sign patterns " << s1.to_string() << " "
            << s2.to_string() << "\n";
  }
  return status;
}

int cmd_obstruct(const std::string& file, std::optional<std::size_t> d, const Context& ctx) {
  const InputSpec spec = parse_input_file(file);
  if (spec.units.has_value() == spec.matrices.has_value()) {
    throw InputError(InputErrorKind::SchemaError, "obstruct needs exactly one of \"units\" and \"matrices\"");
  }
  ConstructionCertificate cert;
  if (spec.units) {
    cert = certify_units(spec, d, ctx);
  } else {
    const auto& [a1, a2] = *spec.matrices;
    if (d && *d != a1.dim()) throw Error(Errc::InvalidArgument, "matrix inputs cannot be padded");
    cert = certify_matrices(a1, a2, options_for(ctx));
  }
  ctx.out << dump_certificate(cert);
  return report_verdict(cert, ctx);
}

int cmd_construct(std::size_t d, const std::string& field_file, const std::string& out_path, const Context& ctx) {
  std::optional<TotallyRealField> field;
  if (!field_file.empty()) field = field_from(parse_input_file(field_file));
  const ConstructionCertificate cert = assemble(d, field, options_for(ctx));
  const std::string text = dump_certificate(cert);
  if (out_path.empty()) {
    ctx.out << text;
  } else {
    write_text(out_path, text);
    ctx.err << "wrote " << out_path << "\n";
  }
  return report_verdict(cert, ctx);
}

int run_exhaustive(std::size_t d, const Context& ctx) {
  const auto patterns = SignPattern::even_patterns(d);
  const std::size_t total = patterns.size() * patterns.size();
  std::atomic<std::size_t> next{0};
  std::mutex lock;
  std::vector<std::string> failures;
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const auto& s1 = patterns[idx / patterns.size()];
      const auto& s2 = patterns[idx % patterns.size()];
      std::string problem;
      try {
        const ObstructionClass formula = pairing(s1, s2);
        const ObstructionClass oracle = lift_loop(build_loop_spec(s1, s2), ctx.steps);
        if (formula != oracle) problem = "formula " + to_string(formula) + ", oracle " + to_string(oracle);
      } catch (const Error& e) {
        problem = e.what();
      }
      if (!problem.empty()) {
        std::lock_guard g(lock);
        failures.push_back(s1.to_string() + " " + s2.to_string() + ": " + problem);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < ctx.jobs; ++w) pool.emplace_back(worker);
    worker();
  }
  std::sort(failures.begin(), failures.end());
  for (const auto& f : failures) ctx.err << "discrepancy: " << f << "\n";
  const std::size_t agree = total - failures.size();
  ctx.out << agree << "/" << total << " sign-pattern pairs: formula " << (failures.empty() ? "==" : "!=")
          << " oracle\n";
  return failures.empty() ? kExitOk : kExitInternal;
}

PlanePairing decode_planes(const json& j, std::size_t d, const char* where) {
  if (!j.is_array()) throw InputError(InputErrorKind::SchemaError, std::string(where) + " must be an array");
  PlanePairing planes;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
      throw InputError(InputErrorKind::SchemaError, std::string(where) + " entries must be [i, j] with 1-based indices");
    }
    const auto i = p[0].get<std::size_t>(), k = p[1].get<std::size_t>();
    if (i < 1 || k < 1 || i > d || k > d) throw Error(Errc::BadPlane, std::string(where) + " index out of range");
    planes.push_back({std::min(i, k) - 1, std::max(i, k) - 1});
  }
  return planes;
}

SignPattern pattern_from_json(const json& j, const char* where) {
  if (!j.is_array()) throw InputError(InputErrorKind::SchemaError, std::string(where) + " must be an array");
  std::vector<int> v;
  for (const auto& e : j) {
    if (!e.is_number_integer() || std::abs(e.get<long>()) != 1) {
      throw InputError(InputErrorKind::SchemaError, std::string(where) + " entries must be +1 or -1");
    }
    v.push_back(e.get<int>());
  }
  return SignPattern(std::move(v));
}

int run_single_loop(const LoopSpec& spec, const SignPattern& s1, const SignPattern& s2, bool trace,
                    const Context& ctx) {
  ctx.out << spec.to_string();
  const ObstructionClass formula = pairing(s1, s2);
  ctx.out << "S1 = " << s1.to_string() << ", S2 = " << s2.to_string() << "\n";
  ctx.out << "pairing formula: " << to_string(formula) << "\n";
  TraceSink sink;
  if (trace) sink = [&](const std::string& line) { ctx.out << line << "\n"; };
  ObstructionClass lifted;
  try {
    lifted = lift_loop(spec, ctx.steps, sink);
  } catch (const Error& e) {
    if (e.code() != Errc::IndeterminateLift) throw;
    ctx.out << "lift_loop (steps " << ctx.steps << "): INDETERMINATE\n";
    ctx.err << e.what() << "\n";
    return kExitUndecided;
  }
  ctx.out << "lift_loop (steps " << ctx.steps << "): " << to_string(lifted) << "\n";
  bool agree = lifted == formula;
  try {
    const ObstructionClass q = so3_quaternion_check(spec, ctx.steps);
    ctx.out << "quaternion oracle: " << to_string(q) << "\n";
    agree = agree && q == formula;
  } catch (const Error& e) {
    if (e.code() != Errc::NotRank3Confined) throw;
    ctx.out << "quaternion oracle: not applicable (planes span more than three coordinates)\n";
  }
  ctx.out << (agree ? "formula == oracle" : "formula != oracle") << "\n";
  return agree ? kExitOk : kExitInternal;
}

int cmd_oracle(std::size_t d, bool exhaustive, const std::string& spec_file, bool trace, const Context& ctx) {
  if (d > kMaxCliffordDim) throw Error(Errc::DimTooLarge, "oracle runs need d <= " + std::to_string(kMaxCliffordDim));
  if (d < 3) throw Error(Errc::DimTooSmall, "oracle runs need d >= 3");
  if (exhaustive) return run_exhaustive(d, ctx);
  if (spec_file.empty()) {
    // The SO(3) loop with S1 = {1,2}, S2 = {2,3}, padded by +1 entries.
    const SignPattern s1 = SignPattern::from_negative_set(d, {0, 1});
    const SignPattern s2 = SignPattern::from_negative_set(d, {1, 2});
    return run_single_loop(build_loop_spec(s1, s2), s1, s2, trace, ctx);
  }
  const json j = read_json_file(spec_file);
  if (!j.is_object() || !j.contains("s1") || !j.contains("s2")) {
    throw InputError(InputErrorKind::SchemaError, "oracle spec needs \"s1\" and \"s2\"");
  }
  const SignPattern s1 = pattern_from_json(j.at("s1"), "s1");
  const SignPattern s2 = pattern_from_json(j.at("s2"), "s2");
  if (s1.size() != d || s2.size() != d) throw Error(Errc::DimMismatch, "sign patterns must have length --d");
  const PlanePairing p1 = j.contains("planes1") ? decode_planes(j.at("planes1"), d, "planes1") : sorted_adjacent_pairing(s1);
  const PlanePairing p2 = j.contains("planes2") ? decode_planes(j.at("planes2"), d, "planes2") : sorted_adjacent_pairing(s2);
  return run_single_loop(build_loop_spec(s1, s2, p1, p2), s1, s2, trace, ctx);
}

int cmd_search(const std::string& field_file, long bound, const Context& ctx) {
  const TotallyRealField field = field_from(parse_input_file(field_file));
  for (const auto& u : unit_search(field, bound, ctx.jobs)) {
    json line;
    line["coeffs"] = json::array();
    for (const auto& c : u.element.coeffs()) line["coeffs"].push_back(encode_integer(c));
    line["element"] = u.element.to_string();
    line["det"] = u.det_of_mult_matrix;
    line["signs"] = u.conjugate_signs.signs();
    line["hyperbolic"] = u.hyperbolic;
    ctx.out << line.dump() << "\n";
  }
  return kExitOk;
}

int cmd_catalog(const std::vector<std::string>& files, const Context& ctx) {
  std::vector<ConstructionCertificate> certs;
  for (const auto& f : files) {
    certs.push_back(certificate_from_json(read_json_file(f)));
    const auto problems = verify_certificate(certs.back(), options_for(ctx));
    if (!problems.empty()) {
      for (const auto& p : problems) ctx.err << f << ": mismatch: " << p << "\n";
      return kExitInput;
    }
  }
  const CatalogReport report = conjugacy_catalog(certs);
  ctx.out << "catalog: " << certs.size() << " certificates at d = " << report.d << ", " << report.classes.size()
          << " distinct charpoly classes\n";
  for (std::size_t k = 0; k < report.classes.size(); ++k) {
    const auto& c = report.classes[k];
    ctx.out << "class " << k + 1 << ": {" << c.first.to_string() << "; " << c.second.to_string() << "} <-";
    for (auto m : c.members) ctx.out << " " << files[m];
    ctx.out << "\n";
  }
  ctx.out << "certificates in different classes are pairwise non-conjugate\n";
  return kExitOk;
}

unsigned parse_jobs_env(unsigned fallback) {
  const char* env = std::getenv("TORUS_OBSTRUCT_JOBS");
  if (!env || !*env) return fallback;
  try {
    std::size_t used = 0;
    const long v = std::stol(env, &used);
    if (used == std::string_view(env).size() && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw Error(Errc::InvalidArgument, "TORUS_OBSTRUCT_JOBS must be an integer in [1, 1024]");
}

}  // namespace

std::string verdict_line(const ConstructionCertificate& cert) {
  std::string v = cert.obstruction == ObstructionClass::Generator ? "SPLITS-OBSTRUCTED (generator)"
                                                                   : "NO OBSTRUCTION (trivial)";
  if (cert.blocks.empty()) {
    v += " [independence: not certified for bare matrices]";
  } else if (!cert.independent) {
    v += " [independence: INCONCLUSIVE]";
  }
  if (!cert.oracle_agreement) {
    v += " [oracle: skipped, d > " + std::to_string(kMaxCliffordDim) + "]";
  } else if (!*cert.oracle_agreement) {
    v += " [oracle: DISAGREES]";
  }
  return v;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Obstruction certificates for commuting hyperbolic integer matrices", "torus-obstruct"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  std::size_t steps = 64;
  app.add_option("--jobs", jobs, "worker threads for sweeps (TORUS_OBSTRUCT_JOBS overrides)")
      ->check(CLI::Range(1u, 1024u));

  std::string file, field_file, out_path, spec_file;
  std::vector<std::string> files;
  std::optional<std::size_t> obstruct_d;
  std::size_t d = 0;
  long bound = 1;
  bool exhaustive = false, trace = false;

  auto* verify = app.add_subcommand("verify", "certify a field/unit input or re-verify a certificate");
  verify->add_option("file", file)->required();
  verify->add_option("--steps", steps, "oracle steps per segment")->check(CLI::Range(8, 100000));

  auto* obstruct = app.add_subcommand("obstruct", "obstruction certificate for an input job");
  obstruct->add_option("file", file)->required();
  obstruct->add_option("--d", obstruct_d, "target dimension (units jobs are padded by a positive block)");
  obstruct->add_option("--steps", steps, "oracle steps per segment")->check(CLI::Range(8, 100000));

  auto* construct = app.add_subcommand("construct", "assemble a certified pair in SL_d(Z)");
  construct->add_option("--d", d)->required();
  construct->add_option("--field", field_file, "input file with the positive block's field");
  construct->add_option("--out", out_path, "certificate path (stdout when omitted)");
  construct->add_option("--steps", steps, "oracle steps per segment")->check(CLI::Range(8, 100000));

  auto* oracle = app.add_subcommand("oracle", "Clifford lift of the sign-pattern loop");
  oracle->add_option("--d", d)->required();
  auto* ex = oracle->add_flag("--exhaustive", exhaustive, "all ordered pairs of even sign patterns");
  auto* sp = oracle->add_option("--spec", spec_file, "JSON with s1, s2 and optional planes1, planes2");
  ex->excludes(sp);
  oracle->add_option("--steps", steps, "steps per segment")->check(CLI::Range(8, 100000));
  oracle->add_flag("--trace", trace, "print one line per lift step");

  auto* search = app.add_subcommand("search", "units with bounded coefficients, as JSON lines");
  search->add_option("--field", field_file)->required();
  search->add_option("--bound", bound)->required()->check(CLI::Range(1L, 1000L));

  auto* catalog = app.add_subcommand("catalog", "group certificates by charpoly pair");
  catalog->add_option("files", files)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    Context ctx{out, err, parse_jobs_env(jobs), steps};
    if (verify->parsed()) return cmd_verify(file, ctx);
    if (obstruct->parsed()) return cmd_obstruct(file, obstruct_d, ctx);
    if (construct->parsed()) return cmd_construct(d, field_file, out_path, ctx);
    if (oracle->parsed()) return cmd_oracle(d, exhaustive, spec_file, trace, ctx);
    if (search->parsed()) return cmd_search(field_file, bound, ctx);
    if (catalog->parsed()) return cmd_catalog(files, ctx);
    err << "error: no command\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    if (code == kExitUndecided) out << "UNDECIDED: " << e.what() << "\n";
    err << "error: " << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace torus::cli
