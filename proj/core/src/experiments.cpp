#include "qbell/experiments.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace qbell {

namespace {

constexpr int kExactArityCap = 14;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t point) {
  // splitmix64 step over the combined value.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (point + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

StateVector apply_pattern(const StateVector& state, std::uint32_t mask,
                          ChannelKind channel) {
  const int n = state.num_qubits();
  if (channel == ChannelKind::BitFlip)
    return apply_pauli(state, PauliString::bit_flips(n, mask));
  StateVector s = state;
  for (int q = 0; q < n; ++q) s = apply_gate(s, GateSpec::h(q));
  s = apply_pauli(s, PauliString::phase_flips(n, mask));
  for (int q = 0; q < n; ++q) s = apply_gate(s, GateSpec::h(q));
  return s;
}

// Squared overlaps of these pipelines are 0 or 1 up to floating-point dust;
// snapping values this close to the endpoints keeps p=0 and the fully
// corrected scenarios exact without touching genuinely fractional overlaps.
double snap_overlap(double v) {
  if (v > 1.0 - 1e-12) return 1.0;
  if (v < 1e-12) return 0.0;
  return v;
}

// Per-scenario pipeline: flip pattern -> squared overlap with the intended
// output. Captures the prepared input and gate lists once.
std::function<double(std::uint32_t)> make_pipeline_raw(ScenarioId id, int k,
                                                       ChannelKind channel) {
  switch (id) {
    case ScenarioId::Unencoded: {
      const StateVector ref = prepare_bell(0, 0);
      return [=](std::uint32_t mask) {
        return std::norm(inner_product(ref, apply_pattern(ref, mask, channel)));
      };
    }
    case ScenarioId::QrcSingle: {
      const auto layout = CodeLayout::single(k);
      const StateVector input(layout.total_qubits());  // encoded |0>
      const auto decoder = build_decoder(layout);
      const StateVector target(1);
      return [=](std::uint32_t mask) {
        StateVector s = apply_pattern(input, mask, channel);
        s = apply_gates(s, decoder);
        const double f = fidelity(target, partial_trace(s, std::vector<int>{0}));
        return f * f;
      };
    }
    case ScenarioId::QrcBipartiteBell:
    case ScenarioId::QrcBipartiteProduct: {
      const bool bell = id == ScenarioId::QrcBipartiteBell;
      const auto layout = CodeLayout::bipartite(
          k, bell ? CodeScenario::BipartiteBell : CodeScenario::BipartiteProduct);
      const StateVector input =
          bell ? encoded_bell_state(k) : StateVector(layout.total_qubits());
      const auto decoder = build_decoder(layout);
      const StateVector target = bell ? prepare_bell(0, 0) : StateVector(2);
      const std::vector<int> data = {layout.data_qubit(0), layout.data_qubit(1)};
      return [=](std::uint32_t mask) {
        StateVector s = apply_pattern(input, mask, channel);
        s = apply_gates(s, decoder);
        const double f = fidelity(target, partial_trace(s, data));
        return f * f;
      };
    }
    case ScenarioId::StabilizerShort: {
      const StateVector input = encoded_bell_state(k);
      return [=](std::uint32_t mask) {
        const auto result = stabilizer_correct(k, apply_pattern(input, mask, channel));
        return result.fidelity * result.fidelity;
      };
    }
    case ScenarioId::LongDistanceCc:
    case ScenarioId::LongDistanceNoCc: {
      const bool cc = id == ScenarioId::LongDistanceCc;
      const int n = 2 * (2 * k + 1);
      return [=](std::uint32_t mask) {
        // The Hadamard sandwich turns Z^mask into exactly X^mask.
        PauliString error = channel == ChannelKind::BitFlip
                                ? PauliString::bit_flips(n, mask)
                                : conjugate_by_hadamards(PauliString::phase_flips(n, mask));
        const auto result = run_protocol(k, error, cc);
        return result.fidelity * result.fidelity;
      };
    }
  }
  throw std::invalid_argument("unknown scenario");
}

std::function<double(std::uint32_t)> make_pipeline(ScenarioId id, int k,
                                                   ChannelKind channel) {
  return [inner = make_pipeline_raw(id, k, channel)](std::uint32_t mask) {
    return snap_overlap(inner(mask));
  };
}

ResultRow make_row(const ExperimentConfig& config, double p, double fid,
                   double se, long samples, double wall_time) {
  return ResultRow{scenario_name(config.scenario),
                   config.k,
                   channel_name(config.channel),
                   p,
                   method_name(config.method),
                   fid,
                   se,
                   samples,
                   config.seed,
                   wall_time};
}

void validate_p_values(const ExperimentConfig& config) {
  for (double p : config.p_values)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("p values must lie in [0, 1]");
}

}  // namespace

std::string scenario_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::Unencoded: return "unencoded";
    case ScenarioId::QrcSingle: return "qrc-single";
    case ScenarioId::QrcBipartiteBell: return "qrc-bipartite-bell";
    case ScenarioId::QrcBipartiteProduct: return "qrc-bipartite-product";
    case ScenarioId::StabilizerShort: return "stabilizer-short";
    case ScenarioId::LongDistanceCc: return "longdistance-cc";
    case ScenarioId::LongDistanceNoCc: return "longdistance-nocc";
  }
  throw std::invalid_argument("unknown scenario");
}

ScenarioId parse_scenario(const std::string& name) {
  for (ScenarioId id :
       {ScenarioId::Unencoded, ScenarioId::QrcSingle, ScenarioId::QrcBipartiteBell,
        ScenarioId::QrcBipartiteProduct, ScenarioId::StabilizerShort,
        ScenarioId::LongDistanceCc, ScenarioId::LongDistanceNoCc})
    if (scenario_name(id) == name) return id;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::string method_name(Method m) { return m == Method::Exact ? "exact" : "mc"; }

std::string channel_name(ChannelKind kind) {
  return kind == ChannelKind::BitFlip ? "bitflip" : "phaseflip";
}

int scenario_arity(ScenarioId id, int k) {
  if (k < 1) throw std::invalid_argument("code order k must be >= 1");
  switch (id) {
    case ScenarioId::Unencoded: return 2;
    case ScenarioId::QrcSingle: return 2 * k + 1;
    default: return 2 * (2 * k + 1);
  }
}

std::vector<double> pattern_overlaps(ScenarioId id, int k, ChannelKind channel) {
  const int n = scenario_arity(id, k);
  if (n > kExactArityCap)
    throw std::invalid_argument("exact enumeration limited to 14 code qubits");
  const auto pipeline = make_pipeline(id, k, channel);
  std::vector<double> out(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < out.size(); ++mask) out[mask] = pipeline(mask);
  return out;
}

std::vector<ResultRow> enumerate_exact(const ExperimentConfig& config) {
  validate_p_values(config);
  const int n = scenario_arity(config.scenario, config.k);
  const auto start = std::chrono::steady_clock::now();
  const auto overlaps = pattern_overlaps(config.scenario, config.k, config.channel);

  std::vector<ResultRow> rows;
  for (double p : config.p_values) {
    double f2 = 0.0;
    for (std::uint32_t mask = 0; mask < overlaps.size(); ++mask) {
      const int w = std::popcount(mask);
      f2 += std::pow(p, w) * std::pow(1.0 - p, n - w) * overlaps[mask];
    }
    double wall = 0.0;
    if (config.record_timing)
      wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                 .count();
    rows.push_back(make_row(config, p, std::sqrt(f2), 0.0, 0, wall));
  }
  return rows;
}

std::vector<ResultRow> monte_carlo(const ExperimentConfig& config) {
  validate_p_values(config);
  if (config.samples < 1)
    throw std::invalid_argument("montecarlo needs samples >= 1");
  const int n = scenario_arity(config.scenario, config.k);
  if (n > kExactArityCap)
    throw std::invalid_argument("scenario too large for the overlap cache");
  const auto pipeline = make_pipeline(config.scenario, config.k, config.channel);
  std::vector<double> memo(std::size_t{1} << n, -1.0);

  std::vector<ResultRow> rows;
  for (std::size_t point = 0; point < config.p_values.size(); ++point) {
    const auto start = std::chrono::steady_clock::now();
    const double p = config.p_values[point];
    std::mt19937_64 rng(derive_seed(config.seed, point));
    std::vector<long> hits(memo.size(), 0);
    for (long s = 0; s < config.samples; ++s) {
      std::uint32_t mask = 0;
      for (int q = 0; q < n; ++q)
        if (uniform_unit(rng) < p) mask |= 1u << q;
      if (memo[mask] < 0.0) memo[mask] = pipeline(mask);
      ++hits[mask];
    }
    const double count = static_cast<double>(config.samples);
    double sum = 0.0;
    for (std::size_t mask = 0; mask < hits.size(); ++mask)
      if (hits[mask]) sum += static_cast<double>(hits[mask]) * memo[mask];
    const double mean = sum / count;
    double variance = 0.0;
    if (config.samples > 1) {
      // Deviation form: exactly zero when every sample hit the same pattern.
      double ss = 0.0;
      for (std::size_t mask = 0; mask < hits.size(); ++mask)
        if (hits[mask]) {
          const double d = memo[mask] - mean;
          ss += static_cast<double>(hits[mask]) * d * d;
        }
      variance = ss / (count - 1.0);
    }
    const double se_mean = std::sqrt(variance / count);
    const double fid = std::sqrt(std::max(mean, 0.0));
    const double se_fid = fid > 0.0 ? se_mean / (2.0 * fid) : se_mean;
    double wall = 0.0;
    if (config.record_timing)
      wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                 .count();
    rows.push_back(make_row(config, p, fid, se_fid, config.samples, wall));
  }
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  return config.method == Method::Exact ? enumerate_exact(config)
                                        : monte_carlo(config);
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "scenario,k,channel,p,method,fidelity,stderr,samples,seed,wall_time\n";
  for (const auto& r : rows) {
    out += r.scenario + ',' + std::to_string(r.k) + ',' + r.channel + ',' +
           format_double(r.p) + ',' + r.method + ',' + format_double(r.fidelity) +
           ',' + format_double(r.stderr_) + ',' + std::to_string(r.samples) + ',' +
           std::to_string(r.seed) + ',' + format_double(r.wall_time) + '\n';
  }
  return out;
}

std::string to_json(const std::vector<ResultRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"scenario", r.scenario},
                   {"k", r.k},
                   {"channel", r.channel},
                   {"p", r.p},
                   {"method", r.method},
                   {"fidelity", r.fidelity},
                   {"stderr", r.stderr_},
                   {"samples", r.samples},
                   {"seed", r.seed},
                   {"wall_time", r.wall_time}});
  }
  return arr.dump(2) + "\n";
}

void write_output(const std::vector<ResultRow>& rows, const std::string& path,
                  const std::string& format) {
  std::string body;
  if (format == "csv") {
    body = to_csv(rows);
  } else if (format == "json") {
    body = to_json(rows);
  } else {
    throw std::invalid_argument("format must be csv or json");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << body;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::vector<double> p_range(double start, double stop, double step) {
  if (step <= 0.0) throw std::invalid_argument("p-range step must be positive");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > stop + step * 1e-9) break;
    out.push_back(std::min(v, stop));
  }
  return out;
}

}  // namespace qbell
