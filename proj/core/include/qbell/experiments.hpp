#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbell/protocol.hpp"
#include "qbell/repetition.hpp"
#include "qbell/stabilizer_decoder.hpp"

namespace qbell {

enum class ScenarioId {
  Unencoded,
  QrcSingle,
  QrcBipartiteBell,
  QrcBipartiteProduct,
  StabilizerShort,
  LongDistanceCc,
  LongDistanceNoCc,
};

std::string scenario_name(ScenarioId id);
ScenarioId parse_scenario(const std::string& name);

enum class Method { Exact, MonteCarlo };

std::string method_name(Method m);
std::string channel_name(ChannelKind kind);

struct ExperimentConfig {
  ScenarioId scenario = ScenarioId::QrcBipartiteBell;
  int k = 1;
  ChannelKind channel = ChannelKind::BitFlip;
  std::vector<double> p_values = {0.1};
  Method method = Method::Exact;
  long samples = 100000;
  std::uint64_t seed = 1;
  bool record_timing = false;  // wall_time stays 0 so outputs stay byte-stable
};

struct ResultRow {
  std::string scenario;
  int k;
  std::string channel;
  double p;
  std::string method;
  double fidelity;
  double stderr_;  // 0 for exact
  long samples;    // 0 for exact
  std::uint64_t seed;
  double wall_time;
};

/// Number of code qubits the channel acts on for a scenario.
int scenario_arity(ScenarioId id, int k);

/// Squared overlap of the scenario pipeline output with the intended state,
/// for every flip pattern (index = bitmask over the channel qubits). The
/// pattern is applied as X^mask for the bit-flip channel and as a Hadamard
/// sandwich around Z^mask for the phase-flip channel.
std::vector<double> pattern_overlaps(ScenarioId id, int k, ChannelKind channel);

/// One row per p value: F = sqrt(sum_mask p^|m| (1-p)^(n-|m|) overlap^2(m)).
std::vector<ResultRow> enumerate_exact(const ExperimentConfig& config);

/// One row per p value: samples flip patterns from Bernoulli(p)^n, estimates
/// F^2 as the mean squared overlap, reports F and the delta-method standard
/// error. Per-point seeds are derived from config.seed and the point index.
std::vector<ResultRow> monte_carlo(const ExperimentConfig& config);

/// Dispatches on config.method.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

std::string to_csv(const std::vector<ResultRow>& rows);
std::string to_json(const std::vector<ResultRow>& rows);

/// Writes csv or json (by `format`) to `path`; throws std::runtime_error
/// naming the path on I/O failure.
void write_output(const std::vector<ResultRow>& rows, const std::string& path,
                  const std::string& format);

/// Evenly spaced p grid, endpoints included when step lands on them.
std::vector<double> p_range(double start, double stop, double step);

}  // namespace qbell
