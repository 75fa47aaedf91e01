#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "qbell/experiments.hpp"

using namespace qbell;

namespace {

ExperimentConfig base_config(ScenarioId id, double p) {
  ExperimentConfig c;
  c.scenario = id;
  c.k = 1;
  c.p_values = {p};
  return c;
}

}  // namespace

TEST_CASE("scenario names round trip") {
  for (ScenarioId id :
       {ScenarioId::Unencoded, ScenarioId::QrcSingle, ScenarioId::QrcBipartiteBell,
        ScenarioId::QrcBipartiteProduct, ScenarioId::StabilizerShort,
        ScenarioId::LongDistanceCc, ScenarioId::LongDistanceNoCc})
    CHECK(parse_scenario(scenario_name(id)) == id);
  CHECK_THROWS_AS(parse_scenario("qrc"), std::invalid_argument);
  CHECK(scenario_arity(ScenarioId::Unencoded, 3) == 2);
  CHECK(scenario_arity(ScenarioId::QrcSingle, 2) == 5);
  CHECK(scenario_arity(ScenarioId::LongDistanceCc, 1) == 6);
}

TEST_CASE("exact enumeration reference points") {
  auto row = enumerate_exact(base_config(ScenarioId::QrcBipartiteBell, 0.1)).front();
  CHECK(row.fidelity == doctest::Approx(0.9724032085508564).epsilon(1e-12));
  CHECK(row.stderr_ == 0.0);
  CHECK(row.samples == 0);

  row = enumerate_exact(base_config(ScenarioId::QrcBipartiteProduct, 0.1)).front();
  CHECK(row.fidelity == doctest::Approx(0.972).epsilon(1e-12));

  row = enumerate_exact(base_config(ScenarioId::QrcSingle, 0.1)).front();
  CHECK(row.fidelity == doctest::Approx(0.985900603509299).epsilon(1e-12));

  row = enumerate_exact(base_config(ScenarioId::Unencoded, 0.5)).front();
  CHECK(row.fidelity == doctest::Approx(0.7071067811865476).epsilon(1e-12));

  for (double p : {0.05, 0.3}) {
    row = enumerate_exact(base_config(ScenarioId::StabilizerShort, p)).front();
    CHECK(row.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    row = enumerate_exact(base_config(ScenarioId::LongDistanceCc, p)).front();
    CHECK(row.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }

  row = enumerate_exact(base_config(ScenarioId::LongDistanceNoCc, 0.1)).front();
  CHECK(row.fidelity == doctest::Approx(0.9724032085508564).epsilon(1e-12));
}

TEST_CASE("phase-flip channel reproduces bit-flip figures") {
  for (ScenarioId id : {ScenarioId::QrcSingle, ScenarioId::QrcBipartiteBell,
                        ScenarioId::StabilizerShort}) {
    auto config = base_config(id, 0.2);
    const double bitflip = enumerate_exact(config).front().fidelity;
    config.channel = ChannelKind::PhaseFlip;
    const double phaseflip = enumerate_exact(config).front().fidelity;
    CHECK(bitflip == doctest::Approx(phaseflip).epsilon(1e-12));
  }
}

TEST_CASE("exact mode rejects configurations over the qubit cap") {
  auto config = base_config(ScenarioId::QrcBipartiteBell, 0.1);
  config.k = 4;
  CHECK_THROWS_AS(enumerate_exact(config), std::invalid_argument);
  config.k = 1;
  config.p_values = {1.5};
  CHECK_THROWS_AS(enumerate_exact(config), std::invalid_argument);
}

TEST_CASE("Monte Carlo is deterministic and unbiased at the endpoints") {
  auto config = base_config(ScenarioId::QrcBipartiteBell, 0.0);
  config.method = Method::MonteCarlo;
  config.samples = 500;
  config.seed = 42;
  const auto rows = monte_carlo(config);
  CHECK(rows.front().fidelity == 1.0);
  CHECK(rows.front().stderr_ == 0.0);

  config.p_values = {0.1, 0.3};
  const auto a = monte_carlo(config);
  const auto b = monte_carlo(config);
  CHECK(to_csv(a) == to_csv(b));

  config.samples = 0;
  CHECK_THROWS_AS(monte_carlo(config), std::invalid_argument);
}

TEST_CASE("Monte Carlo brackets the exact value") {
  for (double p : {0.1, 0.3}) {
    auto config = base_config(ScenarioId::QrcBipartiteBell, p);
    const double exact = enumerate_exact(config).front().fidelity;
    config.method = Method::MonteCarlo;
    config.samples = 100000;
    config.seed = 2718;
    const auto row = monte_carlo(config).front();
    CHECK(std::abs(row.fidelity - exact) <= 4.0 * row.stderr_);
    CHECK(row.stderr_ > 0.0);
  }
}

TEST_CASE("different seeds give different estimates") {
  auto config = base_config(ScenarioId::QrcSingle, 0.2);
  config.method = Method::MonteCarlo;
  config.samples = 2000;
  config.seed = 1;
  const double first = monte_carlo(config).front().fidelity;
  config.seed = 2;
  const double second = monte_carlo(config).front().fidelity;
  CHECK(first != second);
}

TEST_CASE("csv output schema") {
  auto config = base_config(ScenarioId::Unencoded, 0.25);
  const auto rows = run_experiment(config);
  const auto csv = to_csv(rows);
  CHECK(csv.rfind("scenario,k,channel,p,method,fidelity,stderr,samples,seed,wall_time\n",
                  0) == 0);
  CHECK(csv.find("unencoded,1,bitflip,0.25,exact,") != std::string::npos);
  CHECK(to_csv({}).find('\n') == to_csv({}).size() - 1);  // header only
}

TEST_CASE("json output parses back with the same fields") {
  auto config = base_config(ScenarioId::QrcSingle, 0.1);
  const auto rows = run_experiment(config);
  const auto parsed = nlohmann::json::parse(to_json(rows));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["scenario"] == "qrc-single");
  CHECK(parsed[0]["method"] == "exact");
  CHECK(parsed[0]["fidelity"].get<double>() ==
        doctest::Approx(0.985900603509299).epsilon(1e-12));
}

TEST_CASE("write_output reports the failing path") {
  try {
    write_output({}, "/nonexistent-dir/out.csv", "csv");
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(write_output({}, "/tmp/out.xml", "xml"), std::invalid_argument);
}

TEST_CASE("p_range grids") {
  const auto grid = p_range(0.0, 1.0, 0.05);
  REQUIRE(grid.size() == 21);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(1.0));
  CHECK(p_range(0.4, 0.1, 0.1).empty());
  CHECK_THROWS_AS(p_range(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("sweep ordering properties on a coarse grid") {
  auto bell = base_config(ScenarioId::QrcBipartiteBell, 0.0);
  bell.p_values = p_range(0.0, 1.0, 0.1);
  auto product = bell;
  product.scenario = ScenarioId::QrcBipartiteProduct;
  const auto bell_rows = enumerate_exact(bell);
  const auto product_rows = enumerate_exact(product);
  REQUIRE(bell_rows.size() == 11);
  for (std::size_t i = 0; i < bell_rows.size(); ++i) {
    CHECK(bell_rows[i].fidelity >= product_rows[i].fidelity - 1e-12);
    const auto& mirror = bell_rows[bell_rows.size() - 1 - i];
    CHECK(bell_rows[i].fidelity == doctest::Approx(mirror.fidelity).epsilon(1e-12));
  }
}
