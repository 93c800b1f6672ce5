#include "mahler/io.hpp"

#include <cmath>
#include <limits>

#include "mahler/parse.hpp"

namespace mahler {
namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw MahlerError(ErrorKind::ParseError, where + ": " + what);
}

RatFun ratfun_at(const Json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where, "expected a rational-function literal");
  try {
    return parse_ratfun(j.get<std::string>());
  } catch (const MahlerError& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    std::string msg = e.what();
    parse_fail(where, msg.substr(msg.find(": ") + 2));
  }
}

RatMatrix ratmatrix_at(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_fail(where, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].empty()) parse_fail(w, "expected a non-empty row");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) parse_fail(w, "rows have different lengths");
  }
  RatMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      m(i, k) = ratfun_at(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  return m;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail("byte " + std::to_string(e.byte), "malformed JSON");
  }
}

double number_at(const Json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  return j.get<double>();
}

Json place_json(Place p) { return std::string(place_name(p)); }

Json radius_json(const std::optional<double>& r) {
  if (!r) return nullptr;
  if (std::isinf(*r)) return "inf";
  return *r;
}

Json verdict_json(const FuchsianVerdict& v) {
  Json poles = Json::array();
  for (auto [i, j] : v.pole_entries) poles.push_back({i, j});
  return {{"fuchsian", v.fuchsian},
          {"reason", v.reason},
          {"pole_entries", poles},
          {"value", v.value ? to_json(*v.value) : Json(nullptr)}};
}

Json reduction_json(const MahlerSystem& s, const LocalReduction& l) {
  Json coeffs = Json::array();
  if (l.f_hat.is_exact()) {
    for (const auto& c : l.f_hat.exact_coeffs()) coeffs.push_back(to_json(c));
  } else {
    for (const auto& c : l.f_hat.numeric_coeffs()) coeffs.push_back(to_json(c));
  }
  Residual r = residual(s, l);
  return {{"place", place_json(l.place)},
          {"a_const", to_json(l.a_const)},
          {"coefficients", coeffs},
          {"residual", r.exact_zero ? Json("exact-zero") : Json(r.value)},
          {"radius", radius_json(l.radius_estimate)}};
}

ConnectionBundle bundle_for(const MahlerSystem& s, const JobConfig& job) {
  BundleOptions opt;
  opt.order = job.order;
  opt.eval.depth_cap = job.depth_cap;
  opt.reduction.tol_res = job.tol_res;
  return make_bundle(s, opt);
}

void check_samples(const ConnectionBundle& b, const Samples& s) {
  for (std::size_t i = 0; i < s.at0.size(); ++i) {
    if (!s.at0[i].in_sigma0()) {
      throw MahlerError(ErrorKind::ValidationError, "samples0 entry is not in Sigma_0", static_cast<long>(i));
    }
    if (orbit_membership(b.e0, s.at0[i])) {
      throw MahlerError(ErrorKind::SampleInSingularLocus, "samples0 entry lies on a singular orbit",
                        static_cast<long>(i));
    }
  }
  for (std::size_t i = 0; i < s.at_inf.size(); ++i) {
    const long idx = static_cast<long>(s.at0.size() + i);
    if (!s.at_inf[i].in_sigma_inf()) {
      throw MahlerError(ErrorKind::ValidationError, "samplesInf entry is not in Sigma_inf", idx);
    }
    if (orbit_membership(b.einf, s.at_inf[i])) {
      throw MahlerError(ErrorKind::SampleInSingularLocus, "samplesInf entry lies on a singular orbit", idx);
    }
  }
}

Json bundle_json(const ConnectionBundle& b) {
  return {{"A0", to_json(b.a0)},
          {"A1", to_json(b.a1)},
          {"Ainf", to_json(b.ainf)},
          {"E0", [&] {
             Json a = Json::array();
             for (Complex e : b.e0.base()) a.push_back(to_json(e));
             return a;
           }()},
          {"Einf", [&] {
             Json a = Json::array();
             for (Complex e : b.einf.base()) a.push_back(to_json(e));
             return a;
           }()}};
}

Json run_classify(const MahlerSystem& s) {
  Json v;
  for (Place pl : {Place::Zero, Place::One, Place::Infinity}) v[std::string(place_name(pl))] = verdict_json(classify_fuchsian(s, pl));
  return {{"dim", s.dim()}, {"p", s.p()}, {"verdicts", v}};
}

Json run_reduce(const MahlerSystem& s, const JobConfig& job) {
  std::vector<Place> places{Place::Zero, Place::One, Place::Infinity};
  if (job.place) places = {*job.place};
  ReductionOptions opt;
  opt.tol_res = job.tol_res;
  Json out = Json::array();
  for (Place pl : places) out.push_back(reduction_json(s, reduce_at(s, pl, job.order, opt)));
  return {{"order", job.order}, {"reductions", out}};
}

Json run_connect(const MahlerSystem& s, const JobConfig& job) {
  ConnectionBundle b = bundle_for(s, job);
  check_samples(b, job.samples);
  auto rows = [&](const std::vector<CoverPoint>& pts, Place side) {
    Json a = Json::array();
    for (const auto& z : pts) {
      EvalResult r = side == Place::Zero ? connection_M0(b, z) : connection_Minf(b, z);
      a.push_back({{"point", to_json(z)},
                   {"matrix", to_json(r.value)},
                   {"error_estimate", r.error_estimate},
                   {"depth", r.depth},
                   {"cocycle_residual", verify_connection_equation(b, z, side)}});
    }
    return a;
  };
  return {{"bundle", bundle_json(b)},
          {"order", job.order},
          {"M0", rows(job.samples.at0, Place::Zero)},
          {"Minf", rows(job.samples.at_inf, Place::Infinity)}};
}

Json run_generators(const MahlerSystem& s, const JobConfig& job) {
  ConnectionBundle b = bundle_for(s, job);
  check_samples(b, job.samples);
  auto gens = density_generators(b, job.samples.at0, job.samples.at_inf, job.twists);
  MorphismTriple id = identity_morphism(b.dim());
  Json out = Json::array();
  for (const auto& g : gens) {
    Json e = to_json(g);
    e["naturality_residual"] = verify_naturality(g, b, b, id);
    if (g.provenance.kind == Provenance::Kind::Gamma0 || g.provenance.kind == Provenance::Kind::GammaInf) {
      Place side = g.provenance.kind == Provenance::Kind::Gamma0 ? Place::Zero : Place::Infinity;
      e["cocycle_residual"] = verify_connection_equation(b, *g.provenance.point, side);
    }
    out.push_back(std::move(e));
  }
  return {{"bundle", bundle_json(b)}, {"count", gens.size()}, {"generators", out}};
}

Json run_factor(const MahlerSystem& s, const JobConfig& job) {
  std::vector<Place> places{Place::Zero, Place::One};
  if (job.place) {
    if (*job.place == Place::Infinity) {
      throw MahlerError(ErrorKind::ValidationError, "factor supports --place 0 and --place 1");
    }
    places = {*job.place};
  }
  Json out = Json::array();
  for (Place pl : places) {
    out.push_back(to_json(pl == Place::Zero ? factor_regular_at_0(s.matrix()) : factor_regular_at_1(s.matrix())));
  }
  return {{"factorizations", out}};
}

Json run_check_morphism(const Json& in, const JobConfig& job) {
  if (!in.is_object() || !in.contains("source") || !in.contains("target") || !in.contains("morphism")) {
    parse_fail("$", "expected {\"source\", \"target\", \"morphism\"}");
  }
  MahlerSystem x = as_system(parse_input_json(in["source"]));
  MahlerSystem y = as_system(parse_input_json(in["target"]));
  RatMatrix r = ratmatrix_at(in["morphism"], "$.morphism");
  ConnectionBundle bx = bundle_for(x, job), by = bundle_for(y, job);
  check_samples(bx, job.samples);
  check_samples(by, job.samples);
  MorphismTriple m = morphism_from_rational(bx, by, r);
  Json table = Json::array();
  double worst = 0.0;
  for (const auto& g : density_generators(bx, job.samples.at0, job.samples.at_inf, job.twists)) {
    double res = verify_naturality(g, bx, by, m);
    worst = std::max(worst, res);
    table.push_back({{"provenance", to_json(g.provenance)}, {"residual", res}});
  }
  return {{"S0", to_json(m.s0)}, {"Sinf", to_json(m.sinf)}, {"residuals", table}, {"max_residual", worst}};
}

Json error_json(const MahlerError& e) {
  Json j{{"error", std::string(error_name(e.kind()))}, {"message", e.what()}};
  if (e.index()) j["index"] = *e.index();
  if (const auto* r = dynamic_cast<const ResonantError*>(&e)) {
    j["k"] = r->k();
    j["lambda"] = to_json(r->lambda());
    j["mu"] = to_json(r->mu());
  }
  return j;
}

}  // namespace

ParsedInput parse_input_json(const Json& j) {
  if (!j.is_object()) parse_fail("$", "expected an object");
  if (!j.contains("p") || !j["p"].is_number_integer()) parse_fail("$.p", "expected an integer");
  if (!j.contains("kind") || !j["kind"].is_string()) parse_fail("$.kind", "expected \"equation\" or \"system\"");
  const long p_raw = j["p"].get<long>();
  if (p_raw < 2 || p_raw > std::numeric_limits<int>::max()) {
    throw MahlerError(ErrorKind::ValidationError, "p must be an integer >= 2");
  }
  const int p = static_cast<int>(p_raw);
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "equation") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) parse_fail("$.coeffs", "expected an array");
    std::vector<RatFun> coeffs;
    for (std::size_t k = 0; k < j["coeffs"].size(); ++k) {
      coeffs.push_back(ratfun_at(j["coeffs"][k], "$.coeffs[" + std::to_string(k) + "]"));
    }
    return MahlerEquation(p, std::move(coeffs));
  }
  if (kind == "system") {
    if (!j.contains("matrix")) parse_fail("$.matrix", "missing");
    return MahlerSystem(p, ratmatrix_at(j["matrix"], "$.matrix"));
  }
  parse_fail("$.kind", "expected \"equation\" or \"system\"");
}

ParsedInput parse_input(std::string_view text) { return parse_input_json(parse_json(text)); }

Json serialize_input(const ParsedInput& in) {
  if (const auto* eq = std::get_if<MahlerEquation>(&in)) {
    Json c = Json::array();
    for (const auto& a : eq->coeffs()) c.push_back(a.to_string());
    return {{"p", eq->p()}, {"kind", "equation"}, {"coeffs", c}};
  }
  const auto& s = std::get<MahlerSystem>(in);
  return {{"p", s.p()}, {"kind", "system"}, {"matrix", to_json(s.matrix())}};
}

MahlerSystem as_system(const ParsedInput& in) {
  if (const auto* eq = std::get_if<MahlerEquation>(&in)) return companion_system(*eq);
  return std::get<MahlerSystem>(in);
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const CoverPoint& z) { return {{"r", z.r()}, {"b", z.b()}}; }

Json to_json(const Character& c) {
  switch (c.kind) {
    case Character::Kind::Identity: return "id";
    case Character::Kind::Gamma1: return "gamma1";
    case Character::Kind::Gamma2: return "gamma2";
    case Character::Kind::EigenvalueMap: {
      Json m = Json::array();
      for (const auto& [k, v] : c.table) m.push_back({to_json(k), to_json(v)});
      return {{"map", m}};
    }
    case Character::Kind::Product: {
      Json f = Json::array();
      for (const auto& x : c.factors) f.push_back(to_json(x));
      return {{"product", f}};
    }
  }
  return nullptr;
}

Json to_json(const FibreTag& t) {
  switch (t.kind) {
    case FibreTag::Kind::Omega0: return {{"kind", "omega0"}};
    case FibreTag::Kind::OmegaInf: return {{"kind", "omegaInf"}};
    case FibreTag::Kind::Omega1: return {{"kind", "omega1"}, {"point", to_json(*t.point)}};
  }
  return nullptr;
}

Json to_json(const Provenance& p) {
  switch (p.kind) {
    case Provenance::Kind::LocalTwist:
      return {{"kind", "LocalTwist"}, {"character", to_json(p.character)}, {"lambda", to_json(p.lambda)},
              {"side", place_json(p.side)}};
    case Provenance::Kind::Gamma0: return {{"kind", "Gamma0"}, {"point", to_json(*p.point)}};
    case Provenance::Kind::GammaInf: return {{"kind", "GammaInf"}, {"point", to_json(*p.point)}};
    case Provenance::Kind::UnipotentGen: return {{"kind", "UnipotentGen"}};
    case Provenance::Kind::CharGen: return {{"kind", "CharGen"}, {"character", to_json(p.character)}};
    case Provenance::Kind::Shift: return {{"kind", "Shift"}};
  }
  return nullptr;
}

Json to_json(const GroupoidElement& g) {
  return {{"source", to_json(g.source)},
          {"target", to_json(g.target)},
          {"matrix", to_json(g.matrix)},
          {"provenance", to_json(g.provenance)}};
}

Json to_json(const Factorization& f) {
  Json steps = Json::array();
  for (const auto& s : f.steps) {
    Json row = Json::array();
    for (const auto& x : s.t.row) row.push_back(x.to_string());
    steps.push_back({{"T", {{"i", s.t.i}, {"row", row}}}, {"D", {{"i", s.d.i}, {"u", s.d.u.to_string()}}}});
  }
  return {{"place", place_json(f.place)},
          {"uniformizer", f.uniformizer.to_string()},
          {"k", f.k},
          {"steps", steps},
          {"regular_part", to_json(f.regular_part)},
          {"det_valuation", f.det_valuation}};
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) parse_fail("complex", "expected [re, im]");
  return {number_at(j[0], "re"), number_at(j[1], "im")};
}

CoverPoint cover_point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("b")) parse_fail("point", "expected {\"r\", \"b\"}");
  return CoverPoint(number_at(j["r"], "r"), number_at(j["b"], "b"));
}

Character character_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "gamma1") return Character::gamma1();
    if (s == "gamma2") return Character::gamma2();
    if (s == "id") return Character::identity();
    parse_fail("character", "unknown character \"" + s + "\"");
  }
  if (j.is_object() && j.contains("map") && j["map"].is_array()) {
    std::vector<std::pair<Complex, Complex>> t;
    for (const auto& e : j["map"]) {
      if (!e.is_array() || e.size() != 2) parse_fail("character.map", "expected [eigenvalue, value] pairs");
      t.emplace_back(complex_from_json(e[0]), complex_from_json(e[1]));
    }
    return Character::eigenvalue_map(std::move(t));
  }
  if (j.is_object() && j.contains("product") && j["product"].is_array()) {
    Character c{Character::Kind::Product, {}, {}};
    for (const auto& f : j["product"]) c.factors.push_back(character_from_json(f));
    return c;
  }
  parse_fail("character", "expected \"gamma1\", \"gamma2\", \"id\", {\"map\"} or {\"product\"}");
}

Samples parse_samples(std::string_view text) {
  Json j = parse_json(text);
  if (!j.is_object()) parse_fail("$", "expected an object");
  Samples s;
  auto read = [&](const char* key, std::vector<CoverPoint>& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_array()) parse_fail(std::string("$.") + key, "expected an array");
    for (const auto& p : j[key]) out.push_back(cover_point_from_json(p));
  };
  read("samples0", s.at0);
  read("samplesInf", s.at_inf);
  return s;
}

std::vector<Twist> parse_twists(std::string_view text) {
  Json j = parse_json(text);
  if (!j.is_array()) parse_fail("$", "expected an array");
  std::vector<Twist> out;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("character")) parse_fail("twist", "expected {\"character\", \"lambda\"}");
    out.push_back({character_from_json(t["character"]), t.contains("lambda") ? complex_from_json(t["lambda"]) : 0.0});
  }
  return out;
}

Samples default_samples() { return {{CoverPoint(0.5, 0.0)}, {CoverPoint(2.0, 0.0)}}; }

std::vector<Twist> default_twists() {
  return {{Character::gamma1(), 0.0}, {Character::gamma2(), 0.0}, {Character::identity(), 1.0}};
}

RunResult run(const JobConfig& job) {
  RunResult out;
  out.report["command"] = job.command;
  try {
    if (job.order < 1) throw MahlerError(ErrorKind::ValidationError, "order must be >= 1");
    if (job.depth_cap < 0) throw MahlerError(ErrorKind::ValidationError, "depth cap must be >= 0");
    if (!(job.tol_res > 0.0)) throw MahlerError(ErrorKind::ValidationError, "tolerance must be positive");
    Json in = parse_json(job.input);
    Json body;
    if (job.command == "check-morphism") {
      body = run_check_morphism(in, job);
    } else {
      ParsedInput parsed = parse_input_json(in);
      MahlerSystem s = as_system(parsed);
      out.report["input"] = serialize_input(parsed);
      if (job.command == "classify") {
        body = run_classify(s);
      } else if (job.command == "reduce") {
        body = run_reduce(s, job);
      } else if (job.command == "connect") {
        body = run_connect(s, job);
      } else if (job.command == "generators") {
        body = run_generators(s, job);
      } else if (job.command == "factor") {
        body = run_factor(s, job);
      } else {
        throw MahlerError(ErrorKind::ValidationError, "unknown command \"" + job.command + "\"");
      }
    }
    out.report.update(body);
  } catch (const MahlerError& e) {
    out.report.update(error_json(e));
    out.exit_code = is_validation_error(e.kind()) ? kExitValidation : kExitNumeric;
  } catch (const Json::exception& e) {
    out.report.update({{"error", "ParseError"}, {"message", e.what()}});
    out.exit_code = kExitValidation;
  }
  return out;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace mahler
