// qbell: exact and Monte Carlo fidelity experiments for repetition-encoded
// Bell pairs, plus the verification battery and the k=1..3 syndrome tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbell/experiments.hpp"
#include "qbell/protocol.hpp"
#include "qbell/stabilizer_decoder.hpp"
#include "qbell/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidConfig = 2;

struct RunArgs {
  std::string scenario = "qrc-bipartite-bell";
  int k = 1;
  std::string channel = "bitflip";
  std::vector<double> p_list;
  std::string p_range_text;
  std::string method = "exact";
  long samples = 100000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  bool trace = false;
  std::string trace_error;
  bool timing = false;
};

std::vector<double> parse_p_range(const std::string& text) {
  double start = 0, stop = 0, step = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3)
    throw std::invalid_argument("--p-range expects START:STOP:STEP");
  return qbell::p_range(start, stop, step);
}

int do_run(const RunArgs& args) {
  qbell::ExperimentConfig config;
  config.scenario = qbell::parse_scenario(args.scenario);
  config.k = args.k;
  if (args.channel == "bitflip") {
    config.channel = qbell::ChannelKind::BitFlip;
  } else if (args.channel == "phaseflip") {
    config.channel = qbell::ChannelKind::PhaseFlip;
  } else {
    throw std::invalid_argument("--channel must be bitflip or phaseflip");
  }
  if (!args.p_range_text.empty()) {
    config.p_values = parse_p_range(args.p_range_text);
  } else if (!args.p_list.empty()) {
    config.p_values = args.p_list;
  }
  if (args.method == "exact") {
    config.method = qbell::Method::Exact;
  } else if (args.method == "mc") {
    config.method = qbell::Method::MonteCarlo;
  } else {
    throw std::invalid_argument("--method must be exact or mc");
  }
  config.samples = args.samples;
  config.seed = args.seed;
  config.record_timing = args.timing;

  if (args.format != "json" && args.format != "csv")
    throw std::invalid_argument("--format must be csv or json");
  const auto rows = qbell::run_experiment(config);
  if (args.out.empty()) {
    std::cout << (args.format == "json" ? qbell::to_json(rows) : qbell::to_csv(rows));
  } else {
    qbell::write_output(rows, args.out, args.format);
  }

  if (args.trace) {
    if (config.scenario != qbell::ScenarioId::LongDistanceCc)
      throw std::invalid_argument("--trace needs --scenario longdistance-cc");
    const int n = 2 * (2 * config.k + 1);
    qbell::PauliString error = args.trace_error.empty()
                                   ? qbell::PauliString::identity(n)
                                   : qbell::PauliString::from_text(args.trace_error);
    const auto result = qbell::run_protocol(config.k, error, true);
    std::cout << qbell::transcript_jsonl(result.transcript);
  }
  return 0;
}

int do_verify(const std::string& only, bool inject_corruption) {
  qbell::VerifyOptions options;
  options.only = only;
  options.inject_table_corruption = inject_corruption;
  const auto results = qbell::run_verification(options);
  if (results.empty())
    throw std::invalid_argument("--only matched no checks: " + only);
  std::cout << qbell::render_report(results);
  return qbell::all_passed(results) ? 0 : kExitVerifyFailed;
}

int do_table(int k, const std::string& out) {
  const auto table = qbell::build_syndrome_table(k);
  const std::string csv = qbell::syndrome_table_csv(table);
  if (out.empty()) {
    std::cout << csv;
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + out);
  file << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelity experiments for repetition-encoded Bell pairs"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run an experiment or sweep");
  run->add_option("--scenario", run_args.scenario,
                  "unencoded, qrc-single, qrc-bipartite-bell, qrc-bipartite-product, "
                  "stabilizer-short, longdistance-cc, longdistance-nocc");
  run->add_option("--k", run_args.k, "code order (block size 2k+1)");
  run->add_option("--channel", run_args.channel, "bitflip or phaseflip");
  auto* p_opt = run->add_option("--p", run_args.p_list, "flip probabilities");
  run->add_option("--p-range", run_args.p_range_text, "START:STOP:STEP sweep")
      ->excludes(p_opt);
  run->add_option("--method", run_args.method, "exact or mc");
  run->add_option("--samples", run_args.samples, "Monte Carlo sample count");
  run->add_option("--seed", run_args.seed, "RNG seed, recorded in every row");
  run->add_option("--out", run_args.out, "output file (stdout if omitted)");
  run->add_option("--format", run_args.format, "csv or json");
  run->add_flag("--trace", run_args.trace,
                "print the protocol transcript as JSON lines (longdistance-cc)");
  run->add_option("--error", run_args.trace_error,
                  "error pattern for --trace, e.g. XXIXII");
  run->add_flag("--timing", run_args.timing,
                "record wall time per row (off keeps outputs byte-stable)");

  std::string only;
  bool inject_corruption = false;
  auto* verify = app.add_subcommand("verify", "Run the verification battery");
  verify->add_option("--only", only, "substring filter on check names");
  verify->add_flag("--inject-table-corruption", inject_corruption,
                   "negative control: corrupt one golden row")
      ->group("");  // hidden

  int table_k = 1;
  std::string table_out;
  auto* table = app.add_subcommand("table", "Dump the syndrome table as CSV");
  table->add_option("--k", table_k, "code order (1..3)");
  table->add_option("--out", table_out, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return do_run(run_args);
    if (verify->parsed()) return do_verify(only, inject_corruption);
    if (table->parsed()) return do_table(table_k, table_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
  return kExitInvalidConfig;
}
