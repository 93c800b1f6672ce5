#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mahler/factorization.hpp"
#include "mahler/galois.hpp"

namespace mahler {

using Json = nlohmann::json;  // std::map keys: output is sorted

using ParsedInput = std::variant<MahlerEquation, MahlerSystem>;

/// {"p": int, "kind": "equation", "coeffs": [...]} or
/// {"p": int, "kind": "system", "matrix": [[...]]} with ratfun literals.
/// Throws ParseError (message carries the JSON location) and the
/// validation errors of the constructors.
ParsedInput parse_input(std::string_view text);
ParsedInput parse_input_json(const Json& j);
Json serialize_input(const ParsedInput& in);
/// Equations go through their companion system.
MahlerSystem as_system(const ParsedInput& in);

Json to_json(Complex z);
Json to_json(const CMatrix& m);
Json to_json(const QMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const CoverPoint& z);
Json to_json(const Character& c);
Json to_json(const FibreTag& t);
Json to_json(const Provenance& p);
Json to_json(const GroupoidElement& g);
Json to_json(const Factorization& f);

Complex complex_from_json(const Json& j);
CoverPoint cover_point_from_json(const Json& j);
/// "gamma1" | "gamma2" | "id" | {"map": [[[re, im], [re, im]], ...]}.
Character character_from_json(const Json& j);

struct Samples {
  std::vector<CoverPoint> at0;
  std::vector<CoverPoint> at_inf;
};
/// {"samples0": [{"r":..,"b":..}, ...], "samplesInf": [...]}.
Samples parse_samples(std::string_view text);
/// [{"character": ..., "lambda": [re, im]}, ...].
std::vector<Twist> parse_twists(std::string_view text);

Samples default_samples();
std::vector<Twist> default_twists();

struct JobConfig {
  std::string command;
  std::string input;  // JSON text
  int order = 32;
  int depth_cap = 64;
  std::optional<Place> place;
  Samples samples = default_samples();
  std::vector<Twist> twists = default_twists();
  double tol_res = 1e-9;
};

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct RunResult {
  int exit_code = kExitOk;
  Json report;
};

/// Never throws for MahlerError or malformed JSON: failures are reported in
/// the "error" field with exit code 2 (validation) or 3 (numeric).
RunResult run(const JobConfig& job);

/// Deterministic text form of a report (sorted keys, two-space indent).
std::string dump_report(const Json& report);

}  // namespace mahler
