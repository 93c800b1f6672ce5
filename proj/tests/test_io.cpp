#include "doctest.h"
#include "mahler/io.hpp"
#include "support.hpp"

using namespace mt;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MahlerError& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ValidationError;
}
}  // namespace

TEST_SUITE("io") {

TEST_CASE("parse examples") {
  ParsedInput eq = parse_input(R"j({"p":2,"kind":"equation","coeffs":["-z","-1","1"]})j");
  REQUIRE(std::holds_alternative<MahlerEquation>(eq));
  CHECK(as_system(eq) == companion_system(MahlerEquation(2, {rf("-z"), rf("-1"), rf("1")})));
  ParsedInput sys = parse_input(R"j({"p":2,"kind":"system","matrix":[["(2*z+1)/(z+2)"]]})j");
  CHECK(as_system(sys) == MahlerSystem(2, rm({{"(2*z+1)/(z+2)"}})));
  CHECK(kind_of([] { parse_input(R"j({"p":1,"kind":"equation","coeffs":["-z","-1","1"]})j"); }) ==
        ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_input(R"j({"p":2,"kind":"equation","coeffs":["0","1"]})j"); }) ==
        ErrorKind::DegenerateEquation);
  CHECK(kind_of([] { parse_input(R"j({"p":2,"kind":"system","matrix":[["1","z"],["1","z"]]})j"); }) ==
        ErrorKind::SingularMatrix);
  CHECK(kind_of([] { parse_input(R"j({"p":2,"kind":"system","matrix":[["1","z"],["1"]]})j"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_input(R"j({"p":2.5,"kind":"system","matrix":[["1"]]})j"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_input(R"j({"p":2,"kind":"system","matrix":[["1"]])j"); }) == ErrorKind::ParseError);
  try {
    parse_input(R"j({"p":2,"kind":"system","matrix":[["1","z"],["2","z^^2"]]})j");
    FAIL("expected ParseError");
  } catch (const MahlerError& e) {
    CHECK(std::string(e.what()).find("$.matrix[1][1]") != std::string::npos);
  }
}

TEST_CASE("parse and serialize round trip") {
  Rng rng(31);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    RatMatrix m = rng.ratmatrix(n, 2, 5);
    if (determinant(m).is_zero()) continue;
    ParsedInput in = MahlerSystem(static_cast<int>(rng.integer(2, 5)), m);
    ParsedInput back = parse_input(serialize_input(in).dump());
    CHECK(std::get<MahlerSystem>(back) == std::get<MahlerSystem>(in));
  }
  for (int t = 0; t < 40; ++t) {
    std::vector<RatFun> c;
    int order = static_cast<int>(rng.integer(1, 3));
    for (int k = 0; k <= order; ++k) {
      RatFun f = rng.ratfun(2, 5);
      while (f.is_zero()) f = rng.ratfun(2, 5);
      c.push_back(f);
    }
    MahlerEquation eq(2, c);
    ParsedInput back = parse_input(serialize_input(eq).dump());
    const auto& got = std::get<MahlerEquation>(back);
    CHECK(got.p() == eq.p());
    CHECK(got.coeffs() == eq.coeffs());
  }
}

TEST_CASE("samples, twists and characters") {
  Samples s = parse_samples(R"j({"samples0":[{"r":0.5,"b":1}],"samplesInf":[{"r":2,"b":-1},{"r":3,"b":0}]})j");
  CHECK(s.at0.size() == 1);
  CHECK(s.at_inf.size() == 2);
  CHECK(s.at_inf[0].b() == -1.0);
  CHECK(kind_of([] { parse_samples(R"j({"samples0":[{"r":-1,"b":0}]})j"); }) == ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_samples(R"j({"samples0":[{"r":1}]})j"); }) == ErrorKind::ParseError);
  auto tw = parse_twists(R"j([{"character":"gamma1","lambda":[0,0]},{"character":{"map":[[[2,0],[1,0]]]},"lambda":1}])j");
  REQUIRE(tw.size() == 2);
  CHECK(tw[0].character.kind == Character::Kind::Gamma1);
  CHECK(apply_character(tw[1].character, 2.0, 2) == Complex(1.0));
  CHECK(tw[1].lambda == Complex(1.0));
  CHECK(kind_of([] { parse_twists(R"j([{"character":"gamma3"}])j"); }) == ErrorKind::ParseError);
  Character prod = Character::gamma1() * Character::gamma2();
  Character back = character_from_json(to_json(prod));
  CHECK(apply_character(back, {0, 3}, 2) == apply_character(prod, {0, 3}, 2));
}

TEST_CASE("run reports") {
  JobConfig job;
  job.command = "reduce";
  job.input = R"j({"p":2,"kind":"system","matrix":[["1/(1-z)"]]})j";
  job.place = Place::Zero;
  job.order = 7;
  RunResult r = run(job);
  CHECK(r.exit_code == kExitOk);
  const Json& red = r.report["reductions"][0];
  CHECK(red["residual"] == "exact-zero");
  std::vector<std::string> want{"1", "-1", "-1", "1", "-1", "1", "1", "-1"};
  for (std::size_t k = 0; k < want.size(); ++k) CHECK(red["coefficients"][k][0][0] == want[k]);
  CHECK(dump_report(run(job).report) == dump_report(r.report));

  job.command = "classify";
  job.input = R"j({"p":2,"kind":"system","matrix":[["(2*z+1)/(z+2)"]]})j";
  r = run(job);
  for (const char* pl : {"0", "1", "inf"}) CHECK(r.report["verdicts"][pl]["fuchsian"] == true);

  job.command = "connect";
  job.samples = {{CoverPoint(0.25, 0.0)}, {}};
  r = run(job);
  CHECK(r.exit_code == kExitNumeric);
  CHECK(r.report["error"] == "SampleInSingularLocus");
  job.samples = {{CoverPoint(2.0, 0.0)}, {}};
  CHECK(run(job).exit_code == kExitValidation);

  job.command = "explode";
  CHECK(run(job).exit_code == kExitValidation);
  job.command = "classify";
  job.input = "{";
  CHECK(run(job).report["error"] == "ParseError");
  job.order = 0;
  CHECK(run(job).exit_code == kExitValidation);
}

}  // TEST_SUITE
