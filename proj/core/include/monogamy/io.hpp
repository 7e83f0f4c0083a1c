#pragma once

// JSON encodings. Matrices are {"rows", "cols", "re", "im"} with row-major
// nested arrays; POVM families are objects keyed by basis label.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "monogamy/bounds.hpp"
#include "monogamy/game.hpp"
#include "monogamy/posver.hpp"
#include "monogamy/qkd.hpp"
#include "monogamy/seesaw.hpp"
#include "monogamy/uncertainty.hpp"

namespace monogamy {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

Json povm_to_json(const Povm& p);
Povm povm_from_json(const Json& j);

Json family_to_json(const PovmFamily& f, const std::vector<std::string>& labels);
PovmFamily family_from_json(const Json& j, const std::vector<std::string>& labels);

Json game_to_json(const MonogamyGame& g);
/// Validates the result.
MonogamyGame game_from_json(const Json& j);

/// The strategy may carry "rho" or a pure state "psi".
Json strategy_to_json(const Strategy& s, const std::vector<std::string>& labels);
Strategy strategy_from_json(const Json& j, const std::vector<std::string>& labels);

struct UrFixture {
  ComplexMatrix rho;
  DimensionList dims;
  Povm f0, f1;
};

UrFixture ur_fixture_from_json(const Json& j);
TimingScenario scenario_from_json(const Json& j);

/// Checks a fixture document by its "kind" (game, strategy, ur, scenario).
/// Returns the kind; throws ValidationError or DimensionError otherwise.
std::string validate_fixture(const Json& j);

Json read_json_file(const std::filesystem::path& path);

Json to_json(const BoundReport& r);
Json to_json(const SeesawResult& r, const std::vector<std::string>& labels);
Json to_json(const QkdSecurityReport& r);
Json to_json(const KeyLengthResult& r);
Json to_json(const AsymptoticRate& r);
Json to_json(const EqkdTrialStats& s);
Json to_json(const PvStats& s);
Json to_json(const UrReport& r);

}  // namespace monogamy
