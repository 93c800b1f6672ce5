// Command-line front end: JSON system in, JSON report out.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "mahler/io.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw mahler::MahlerError(mahler::ErrorKind::ValidationError, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mahler systems: local reduction, connection matrices and Galois groupoid generators"};
  std::string command, input_path = "-", place, samples_path, twists_path, out_path;
  mahler::JobConfig job;

  app.add_option("command", command, "classify | reduce | connect | generators | factor | check-morphism")
      ->required()
      ->check(CLI::IsMember({"classify", "reduce", "connect", "generators", "factor", "check-morphism"}));
  app.add_option("input", input_path, "input JSON file, - for stdin");
  app.add_option("--place", place, "0, 1 or inf")->check(CLI::IsMember({"0", "1", "inf"}));
  app.add_option("--order", job.order, "series order N")->capture_default_str();
  app.add_option("--depth-cap", job.depth_cap, "continuation depth cap")->capture_default_str();
  app.add_option("--samples", samples_path, "JSON {\"samples0\": [...], \"samplesInf\": [...]}");
  app.add_option("--twists", twists_path, "JSON [{\"character\": ..., \"lambda\": [re, im]}]");
  app.add_option("--tol-res", job.tol_res, "resonance tolerance")->capture_default_str();
  app.add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : mahler::kExitValidation;
  }

  job.command = command;
  mahler::RunResult result;
  try {
    job.input = slurp(input_path);
    if (!place.empty()) job.place = mahler::parse_place(place);
    if (!samples_path.empty()) job.samples = mahler::parse_samples(slurp(samples_path));
    if (!twists_path.empty()) job.twists = mahler::parse_twists(slurp(twists_path));
    result = mahler::run(job);
  } catch (const mahler::MahlerError& e) {
    result.report = {{"command", command}, {"error", std::string(mahler::error_name(e.kind()))}, {"message", e.what()}};
    result.exit_code = mahler::is_validation_error(e.kind()) ? mahler::kExitValidation : mahler::kExitNumeric;
  } catch (const mahler::Json::exception& e) {
    result.report = {{"command", command}, {"error", "ParseError"}, {"message", e.what()}};
    result.exit_code = mahler::kExitValidation;
  }

  const std::string text = mahler::dump_report(result.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << text;
  }
  if (result.exit_code != 0) std::cerr << "mahler: " << result.report.value("message", "error") << "\n";
  return result.exit_code;
}
