#include "monogamy/io.hpp"

#include <cmath>
#include <fstream>

#include "monogamy/errors.hpp"

namespace monogamy {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::vector<double>> parts(const ComplexMatrix& m, bool imag) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r)].push_back(imag ? m(r, c).imag() : m(r, c).real());
  }
  return out;
}

// +inf has no JSON encoding; such values become null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", parts(m, false)}, {"im", parts(m, true)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = field(j, "rows").get<Eigen::Index>();
    const auto cols = field(j, "cols").get<Eigen::Index>();
    const auto re = field(j, "re").get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im;
    if (j.contains("im")) im = j.at("im").get<std::vector<std::vector<double>>>();
    if (rows <= 0 || cols <= 0 || static_cast<Eigen::Index>(re.size()) != rows ||
        (!im.empty() && static_cast<Eigen::Index>(im.size()) != rows)) {
      throw DimensionError("json: matrix rows do not match 'rows'");
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& rr = re[static_cast<std::size_t>(r)];
      if (static_cast<Eigen::Index>(rr.size()) != cols) throw DimensionError("json: matrix row length does not match 'cols'");
      for (Eigen::Index c = 0; c < cols; ++c) {
        double imag = 0.0;
        if (!im.empty()) {
          const auto& ir = im[static_cast<std::size_t>(r)];
          if (static_cast<Eigen::Index>(ir.size()) != cols) throw DimensionError("json: matrix row length does not match 'cols'");
          imag = ir[static_cast<std::size_t>(c)];
        }
        m(r, c) = Complex(rr[static_cast<std::size_t>(c)], imag);
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("json: bad matrix: ") + e.what());
  }
}

Json vector_to_json(const ComplexVector& v) {
  std::vector<double> re, im;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

ComplexVector vector_from_json(const Json& j) {
  try {
    const auto re = field(j, "re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
    if (re.empty() || im.size() != re.size()) throw DimensionError("json: vector parts differ in length");
    ComplexVector v(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("json: bad vector: ") + e.what());
  }
}

Json povm_to_json(const Povm& p) {
  Json out = Json::array();
  for (const auto& m : p) out.push_back(matrix_to_json(m));
  return out;
}

Povm povm_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("json: a POVM is a non-empty array of matrices");
  Povm p;
  for (const auto& m : j) p.push_back(matrix_from_json(m));
  return p;
}

Json family_to_json(const PovmFamily& f, const std::vector<std::string>& labels) {
  if (labels.size() != f.size()) throw DimensionError("json: one label per basis required");
  Json out = Json::object();
  for (std::size_t t = 0; t < f.size(); ++t) out[labels[t]] = povm_to_json(f[t]);
  return out;
}

PovmFamily family_from_json(const Json& j, const std::vector<std::string>& labels) {
  if (!j.is_object()) throw ValidationError("json: a POVM family is an object keyed by basis label");
  if (j.size() != labels.size()) throw ValidationError("json: POVM family labels do not match the bases");
  PovmFamily f;
  for (const auto& l : labels) f.push_back(povm_from_json(field(j, l.c_str())));
  return f;
}

Json game_to_json(const MonogamyGame& g) {
  return {{"dim_a", g.dim_a}, {"thetas", g.thetas}, {"outcomes", g.outcomes}, {"povms", family_to_json(g.povms, g.thetas)}};
}

MonogamyGame game_from_json(const Json& j) {
  MonogamyGame g;
  try {
    g.dim_a = field(j, "dim_a").get<std::size_t>();
    g.thetas = field(j, "thetas").get<std::vector<std::string>>();
    g.outcomes = field(j, "outcomes").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("json: bad game: ") + e.what());
  }
  g.povms = family_from_json(field(j, "povms"), g.thetas);
  g.validate();
  return g;
}

Json strategy_to_json(const Strategy& s, const std::vector<std::string>& labels) {
  return {{"dims", s.dims},
          {"rho", matrix_to_json(s.rho_abc)},
          {"bob", family_to_json(s.bob, labels)},
          {"charlie", family_to_json(s.charlie, labels)}};
}

Strategy strategy_from_json(const Json& j, const std::vector<std::string>& labels) {
  Strategy s;
  try {
    s.dims = field(j, "dims").get<DimensionList>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("json: bad dims: ") + e.what());
  }
  if (j.contains("rho")) {
    s.rho_abc = matrix_from_json(j.at("rho"));
  } else {
    ComplexVector psi = vector_from_json(field(j, "psi"));
    if (psi.norm() == 0.0) throw ValidationError("json: psi is the zero vector");
    s.rho_abc = projector(psi / psi.norm());
  }
  s.bob = family_from_json(field(j, "bob"), labels);
  s.charlie = family_from_json(field(j, "charlie"), labels);
  return s;
}

UrFixture ur_fixture_from_json(const Json& j) {
  UrFixture f;
  try {
    f.dims = field(j, "dims").get<DimensionList>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("json: bad dims: ") + e.what());
  }
  f.rho = matrix_from_json(field(j, "rho"));
  f.f0 = povm_from_json(field(j, "f0"));
  f.f1 = povm_from_json(field(j, "f1"));
  if (f.dims.size() != 3) throw DimensionError("ur fixture: dims must be {d_A, d_B, d_C}");
  if (static_cast<std::size_t>(f.rho.rows()) != dimension_product(f.dims)) {
    throw DimensionError("ur fixture: rho does not match dims");
  }
  require_density(f.rho, "ur fixture rho");
  if (!is_povm(f.f0, f.dims[0]) || !is_povm(f.f1, f.dims[0])) throw ValidationError("ur fixture: f0 or f1 is not a POVM on A");
  return f;
}

TimingScenario scenario_from_json(const Json& j) {
  TimingScenario s;
  try {
    s.v0 = field(j, "v0").get<double>();
    s.v1 = field(j, "v1").get<double>();
    s.pos = field(j, "pos").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("json: bad scenario: ") + e.what());
  }
  s.validate();
  return s;
}

std::string validate_fixture(const Json& j) {
  std::string kind;
  try {
    kind = field(j, "kind").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError("fixture: 'kind' must be a string");
  }
  if (kind == "game") {
    game_from_json(j);
  } else if (kind == "strategy") {
    const auto g = game_from_json(field(j, "game"));
    strategy_from_json(field(j, "strategy"), g.thetas).validate(g);
  } else if (kind == "ur") {
    ur_fixture_from_json(j);
  } else if (kind == "scenario") {
    scenario_from_json(j);
  } else {
    throw ValidationError("fixture: unknown kind '" + kind + "'");
  }
  return kind;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

Json to_json(const BoundReport& r) {
  return {{"value", number(r.value)},
          {"formula", r.formula},
          {"vacuous", r.vacuous},
          {"inputs",
           {{"n", r.inputs.n},
            {"c", r.inputs.c},
            {"theta_count", r.inputs.theta_count},
            {"q_cardinality", r.inputs.q_cardinality},
            {"gamma", r.inputs.gamma},
            {"gamma_prime", r.inputs.gamma_prime}}}};
}

Json to_json(const SeesawResult& r, const std::vector<std::string>& labels) {
  return {{"value", r.value},
          {"iterations", r.iterations},
          {"trajectory", r.trajectory},
          {"strategy", strategy_to_json(r.strategy, labels)}};
}

Json to_json(const QkdSecurityReport& r) {
  return {{"delta", number(r.delta)},
          {"sampling_term", r.sampling_term},
          {"pa_term", number(r.pa_term)},
          {"exponent_budget", r.exponent_budget},
          {"log2_pa_term", r.log2_pa_term},
          {"vacuous", r.vacuous}};
}

Json to_json(const KeyLengthResult& r) {
  return {{"status", to_string(r.status)}, {"ell", r.ell}, {"sampling_term", r.sampling_term}};
}

Json to_json(const AsymptoticRate& r) {
  return {{"n", r.n}, {"t", r.t}, {"epsilon", r.epsilon}, {"s", r.s},
          {"rate", r.rate}, {"limit", r.limit}, {"gap", r.gap}};
}

Json to_json(const EqkdTrialStats& s) {
  return {{"trials", s.trials},
          {"aborts", s.aborts},
          {"completed", s.completed},
          {"decode_failures", s.decode_failures},
          {"key_matches", s.key_matches},
          {"hoeffding_violations", s.hoeffding_violations},
          {"abort_rate", s.abort_rate},
          {"key_match_rate", s.key_match_rate},
          {"hoeffding_rate", s.hoeffding_rate},
          {"hoeffding_bound", s.hoeffding_bound}};
}

Json to_json(const PvStats& s) {
  return {{"trials", s.trials},
          {"accepted", s.accepted},
          {"acceptance_rate", s.acceptance_rate},
          {"standard_error", s.standard_error},
          {"soundness_bound", s.bound}};
}

Json to_json(const UrReport& r) {
  return {{"c", r.c},
          {"pguess_b", r.pguess_b},
          {"pguess_c", r.pguess_c},
          {"sum", r.sum},
          {"bound", r.bound},
          {"hmin_b", r.hmin_b},
          {"hmin_c", r.hmin_c},
          {"entropy_bound", r.entropy_bound},
          {"satisfied", r.satisfied}};
}

}  // namespace monogamy
