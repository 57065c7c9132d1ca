#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "torus_cli/cli.hpp"

namespace torus::cli {

namespace {

const BigInt kMaxPlain = BigInt(1) << 53;

[[noreturn]] void schema_error(const std::string& what) { throw InputError(InputErrorKind::SchemaError, what); }

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where + " is missing \"" + key + "\"");
  return *it;
}

std::vector<BigInt> decode_vector(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where + " must be an array of integers");
  std::vector<BigInt> v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(decode_integer(j[k], where + "[" + std::to_string(k) + "]"));
  return v;
}

json encode_vector(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(encode_integer(c));
  return a;
}

SqIntMatrix decode_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema_error(where + " must be a non-empty array of rows");
  const std::size_t n = j.size();
  std::vector<BigInt> entries;
  for (std::size_t r = 0; r < n; ++r) {
    auto row = decode_vector(j[r], where + "[" + std::to_string(r) + "]");
    if (row.size() != n) schema_error(where + " must be square");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return SqIntMatrix(n, std::move(entries));
}

json encode_matrix(const SqIntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(encode_integer(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntPoly decode_poly(const json& j, const std::string& where) {
  auto c = decode_vector(j, where);
  if (c.empty()) schema_error(where + " must not be empty");
  return IntPoly(std::move(c));
}

json encode_pattern(const SignPattern& s) { return json(s.signs()); }

SignPattern decode_pattern(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where + " must be an array of +1/-1");
  std::vector<int> v;
  for (const auto& e : j) {
    if (!e.is_number_integer() || (e.get<long>() != 1 && e.get<long>() != -1)) {
      schema_error(where + " entries must be +1 or -1");
    }
    v.push_back(e.get<int>());
  }
  return SignPattern(std::move(v));
}

bool decode_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) schema_error(where + " must be a boolean");
  return j.get<bool>();
}

std::size_t decode_size(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) schema_error(where + " must be a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

std::string_view input_error_name(InputErrorKind kind) noexcept {
  switch (kind) {
    case InputErrorKind::ParseError: return "ParseError";
    case InputErrorKind::SchemaError: return "SchemaError";
    case InputErrorKind::IntegerOverflowEncoding: return "IntegerOverflowEncoding";
  }
  return "InputError";
}

BigInt decode_integer(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) {
    const BigInt v(std::to_string(j.get<std::uint64_t>()));
    if (v > kMaxPlain) {
      throw InputError(InputErrorKind::IntegerOverflowEncoding, where + " exceeds 2^53; encode it as a decimal string");
    }
    return v;
  }
  if (j.is_number_integer()) {
    const BigInt v(std::to_string(j.get<std::int64_t>()));
    if (abs(v) > kMaxPlain) {
      throw InputError(InputErrorKind::IntegerOverflowEncoding, where + " exceeds 2^53; encode it as a decimal string");
    }
    return v;
  }
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::isfinite(x) && std::trunc(x) == x && std::abs(x) > 9007199254740992.0) {
      throw InputError(InputErrorKind::IntegerOverflowEncoding, where + " exceeds 2^53; encode it as a decimal string");
    }
    schema_error(where + " must be an integer");
  }
  if (j.is_string()) {
    static const std::regex digits("-?[0-9]+");
    const auto& s = j.get_ref<const std::string&>();
    if (!std::regex_match(s, digits)) schema_error(where + " is not a decimal integer string");
    return BigInt(s);
  }
  schema_error(where + " must be an integer");
}

json encode_integer(const BigInt& v) {
  if (abs(v) <= kMaxPlain) return json(v.get_si());
  return json(v.get_str());
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(InputErrorKind::ParseError, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(InputErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_json_text(buf.str());
  } catch (const InputError& e) {
    throw InputError(e.kind(), path.string() + ": " + std::string(e.what()).substr(input_error_name(e.kind()).size() + 2));
  }
}

InputSpec parse_input(const json& j) {
  if (!j.is_object()) schema_error("input must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "field" && key != "units" && key != "matrices") schema_error("unknown key \"" + key + "\"");
  }
  InputSpec spec;
  if (j.contains("field")) spec.field = decode_poly(member(j.at("field"), "poly", "field"), "field.poly");
  if (j.contains("units")) {
    if (!spec.field) schema_error("\"units\" requires \"field\"");
    const json& u = j.at("units");
    spec.units = UnitPair{decode_vector(member(u, "u1", "units"), "units.u1"),
                          decode_vector(member(u, "u2", "units"), "units.u2")};
  }
  if (j.contains("matrices")) {
    const json& m = j.at("matrices");
    spec.matrices.emplace(decode_matrix(member(m, "a1", "matrices"), "matrices.a1"),
                          decode_matrix(member(m, "a2", "matrices"), "matrices.a2"));
  }
  if (!spec.field && !spec.matrices) schema_error("input needs \"field\" or \"matrices\"");
  return spec;
}

InputSpec parse_input_file(const std::filesystem::path& path) { return parse_input(read_json_file(path)); }

json certificate_to_json(const ConstructionCertificate& cert) {
  json j;
  j["schema"] = "cert/1";
  j["d"] = cert.d;
  j["a1"] = encode_matrix(cert.a1);
  j["a2"] = encode_matrix(cert.a2);
  j["charpoly1"] = encode_vector(cert.charpoly1.coeffs());
  j["charpoly2"] = encode_vector(cert.charpoly2.coeffs());
  j["det1"] = encode_integer(cert.det1);
  j["det2"] = encode_integer(cert.det2);
  j["hyperbolic1"] = cert.hyperbolic1;
  j["hyperbolic2"] = cert.hyperbolic2;
  j["commuting"] = cert.commuting;
  j["independent"] = cert.independent;
  j["s1"] = encode_pattern(cert.s1);
  j["s2"] = encode_pattern(cert.s2);
  j["intersection"] = cert.intersection;
  j["obstruction"] = to_string(cert.obstruction);
  j["oracle_agreement"] = cert.oracle_agreement ? json(*cert.oracle_agreement) : json(nullptr);
  j["theorem_scope"] = cert.theorem_scope;
  j["fundamentality"] = "not verified";
  json blocks = json::array();
  for (const auto& b : cert.blocks) {
    json o;
    o["role"] = b.role;
    o["poly"] = encode_vector(b.poly.coeffs());
    o["disc"] = encode_integer(b.disc);
    o["u1"] = encode_vector(b.u1);
    o["u2"] = encode_vector(b.u2);
    o["base1"] = b.base1 ? encode_vector(*b.base1) : json(nullptr);
    o["base2"] = b.base2 ? encode_vector(*b.base2) : json(nullptr);
    o["s1"] = encode_pattern(b.s1);
    o["s2"] = encode_pattern(b.s2);
    o["independent"] = b.independent;
    if (b.witness) {
      o["witness"] = {{"embeddings", {b.witness->j + 1, b.witness->k + 1}},
                      {"minor_lo", b.witness->minor_lo},
                      {"minor_hi", b.witness->minor_hi},
                      {"precision_bits", b.witness->precision_bits}};
    } else {
      o["witness"] = nullptr;
    }
    blocks.push_back(std::move(o));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

ConstructionCertificate certificate_from_json(const json& j) {
  if (!j.is_object()) schema_error("certificate must be a JSON object");
  const json& schema = member(j, "schema", "certificate");
  if (!schema.is_string() || schema.get<std::string>() != "cert/1") schema_error("unsupported certificate schema");
  ConstructionCertificate c;
  const std::string w = "certificate";
  c.d = decode_size(member(j, "d", w), "d");
  c.a1 = decode_matrix(member(j, "a1", w), "a1");
  c.a2 = decode_matrix(member(j, "a2", w), "a2");
  c.charpoly1 = decode_poly(member(j, "charpoly1", w), "charpoly1");
  c.charpoly2 = decode_poly(member(j, "charpoly2", w), "charpoly2");
  c.det1 = decode_integer(member(j, "det1", w), "det1");
  c.det2 = decode_integer(member(j, "det2", w), "det2");
  c.hyperbolic1 = decode_bool(member(j, "hyperbolic1", w), "hyperbolic1");
  c.hyperbolic2 = decode_bool(member(j, "hyperbolic2", w), "hyperbolic2");
  c.commuting = decode_bool(member(j, "commuting", w), "commuting");
  c.independent = decode_bool(member(j, "independent", w), "independent");
  c.s1 = decode_pattern(member(j, "s1", w), "s1");
  c.s2 = decode_pattern(member(j, "s2", w), "s2");
  c.intersection = decode_size(member(j, "intersection", w), "intersection");
  const json& ob = member(j, "obstruction", w);
  if (ob == "Generator") {
    c.obstruction = ObstructionClass::Generator;
  } else if (ob == "Trivial") {
    c.obstruction = ObstructionClass::Trivial;
  } else {
    schema_error("obstruction must be \"Generator\" or \"Trivial\"");
  }
  const json& oracle = member(j, "oracle_agreement", w);
  if (!oracle.is_null()) c.oracle_agreement = decode_bool(oracle, "oracle_agreement");
  c.theorem_scope = decode_bool(member(j, "theorem_scope", w), "theorem_scope");
  const json& blocks = member(j, "blocks", w);
  if (!blocks.is_array()) schema_error("blocks must be an array");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const json& o = blocks[k];
    const std::string bw = "blocks[" + std::to_string(k) + "]";
    BlockRecord b;
    const json& role = member(o, "role", bw);
    if (!role.is_string()) schema_error(bw + ".role must be a string");
    b.role = role.get<std::string>();
    b.poly = decode_poly(member(o, "poly", bw), bw + ".poly");
    b.disc = decode_integer(member(o, "disc", bw), bw + ".disc");
    b.u1 = decode_vector(member(o, "u1", bw), bw + ".u1");
    b.u2 = decode_vector(member(o, "u2", bw), bw + ".u2");
    if (const json& x = member(o, "base1", bw); !x.is_null()) b.base1 = decode_vector(x, bw + ".base1");
    if (const json& x = member(o, "base2", bw); !x.is_null()) b.base2 = decode_vector(x, bw + ".base2");
    b.s1 = decode_pattern(member(o, "s1", bw), bw + ".s1");
    b.s2 = decode_pattern(member(o, "s2", bw), bw + ".s2");
    b.independent = decode_bool(member(o, "independent", bw), bw + ".independent");
    if (const json& x = member(o, "witness", bw); !x.is_null()) {
      const json& emb = member(x, "embeddings", bw + ".witness");
      if (!emb.is_array() || emb.size() != 2) schema_error(bw + ".witness.embeddings must have two entries");
      IndependenceWitness wit;
      wit.j = decode_size(emb[0], bw + ".witness.embeddings[0]") - 1;
      wit.k = decode_size(emb[1], bw + ".witness.embeddings[1]") - 1;
      const json& lo = member(x, "minor_lo", bw + ".witness");
      const json& hi = member(x, "minor_hi", bw + ".witness");
      if (!lo.is_number() || !hi.is_number()) schema_error(bw + ".witness bounds must be numbers");
      wit.minor_lo = lo.get<double>();
      wit.minor_hi = hi.get<double>();
      const json& bits = member(x, "precision_bits", bw + ".witness");
      if (!bits.is_number_integer()) schema_error(bw + ".witness.precision_bits must be an integer");
      wit.precision_bits = bits.get<long>();
      b.witness = wit;
    }
    c.blocks.push_back(std::move(b));
  }
  return c;
}

std::string dump_certificate(const ConstructionCertificate& cert) { return certificate_to_json(cert).dump(2) + "\n"; }

}  // namespace torus::cli
