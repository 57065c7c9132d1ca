#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "torus/recipes.hpp"

namespace torus::cli {

using nlohmann::json;

enum class InputErrorKind { ParseError, SchemaError, IntegerOverflowEncoding };

std::string_view input_error_name(InputErrorKind kind) noexcept;

class InputError : public std::runtime_error {
 public:
  InputError(InputErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(input_error_name(kind)) + ": " + what), kind_(kind) {}
  InputErrorKind kind() const noexcept { return kind_; }

 private:
  InputErrorKind kind_;
};

struct UnitPair {
  std::vector<BigInt> u1;
  std::vector<BigInt> u2;
};

struct InputSpec {
  std::optional<IntPoly> field;
  std::optional<UnitPair> units;
  std::optional<std::pair<SqIntMatrix, SqIntMatrix>> matrices;
};

/// JSON number within 2^53 in magnitude, or a decimal string.
BigInt decode_integer(const json& j, const std::string& where);
json encode_integer(const BigInt& v);

json parse_json_text(std::string_view text);
json read_json_file(const std::filesystem::path& path);

InputSpec parse_input(const json& j);
InputSpec parse_input_file(const std::filesystem::path& path);

/// Canonical cert/1 object; keys sorted, no timestamps.
json certificate_to_json(const ConstructionCertificate& cert);
/// Throws InputError(SchemaError) on any missing or malformed key.
ConstructionCertificate certificate_from_json(const json& j);
/// certificate_to_json(cert).dump(2) plus a trailing newline.
std::string dump_certificate(const ConstructionCertificate& cert);

std::string verdict_line(const ConstructionCertificate& cert);

/// Whole command line without the program name. Returns the exit status:
/// 0 answered, 1 undecided (inconclusive independence or lift), 2 input
/// error, 3 internal invariant violation.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace torus::cli
