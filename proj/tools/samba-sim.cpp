#include "samba/bench.hpp"
#include "samba/metrics.hpp"
#include "samba/simulation.hpp"
#include "samba/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace samba;

namespace {

struct CommonArgs
{
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<std::string> strategy;
  std::vector<std::string> overrides;
};

void
addCommon(CLI::App* cmd, CommonArgs& args, bool configRequired)
{
  auto* opt = cmd->add_option("--config", args.config, "scenario file");
  if (configRequired) {
    opt->required();
  }
  cmd->add_option("--seed", args.seed, "random seed");
  cmd->add_option("--strategy", args.strategy, "samba or self-learning")
    ->check(CLI::IsMember({"samba", "self-learning"}));
  cmd->add_option("--set", args.overrides, "override a scenario key, as key=value");
}

sim::ScenarioConfig
loadConfig(const CommonArgs& args)
{
  sim::ScenarioConfig config;
  if (!args.config.empty()) {
    config = sim::ScenarioConfig::load(args.config);
  }
  for (const auto& o : args.overrides) {
    config.applyOverride(o);
  }
  if (args.seed) {
    config.seed = *args.seed;
  }
  if (args.strategy) {
    config.strategy = fw::parseStrategy(*args.strategy);
  }
  config.validate();
  return config;
}

std::ofstream
openOutput(const fs::path& path)
{
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return os;
}

void
writeRunOutputs(const metrics::Report& report, const fs::path& dir)
{
  fs::create_directories(dir);
  openOutput(dir / "report.txt") << metrics::formatReport(report);

  auto fib = openOutput(dir / "fib_size.csv");
  fib << metrics::FIB_SIZE_HEADER << '\n';
  metrics::writeFibSizeRows(fib, report);

  auto overhead = openOutput(dir / "overhead.csv");
  overhead << metrics::OVERHEAD_HEADER << '\n';
  metrics::writeOverheadRow(overhead, report);

  auto app = openOutput(dir / "app.csv");
  app << metrics::APP_HEADER << '\n';
  metrics::writeAppRows(app, report);

  auto throughput = openOutput(dir / "throughput.csv");
  throughput << metrics::THROUGHPUT_HEADER << '\n';
  metrics::writeThroughputRows(throughput, report);

  auto series = openOutput(dir / "consumer_throughput.csv");
  series << metrics::CONSUMER_SERIES_HEADER << '\n';
  metrics::writeConsumerSeries(series, report);
}

std::vector<unsigned>
parseValues(const std::string& text)
{
  std::vector<unsigned> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    values.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  if (values.empty()) {
    throw std::invalid_argument("--values needs at least one value");
  }
  return values;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App cli{"Simulator for approximate forwarding with multipath self-learning"};
  cli.require_subcommand(1);

  auto* bench = cli.add_subcommand("bench-fib", "time character-mode trie lookups and insertions");
  bench::BenchOptions benchOpts;
  std::string benchOut;
  bench->add_option("--sizes", benchOpts.sizes, "trie sizes")->delimiter(',');
  bench->add_option("--prefix-len", benchOpts.maxPrefixLength, "longest prefix in characters");
  bench->add_option("--repetitions", benchOpts.repetitions, "timed repetitions per size");
  bench->add_option("--batch", benchOpts.batch, "operations per repetition");
  bench->add_option("--seed", benchOpts.seed, "random seed");
  bench->add_option("--out", benchOut, "CSV file, stdout when omitted");

  auto* run = cli.add_subcommand("run", "run one scenario");
  CommonArgs runArgs;
  std::string runOut = "out";
  std::string tracePath;
  addCommon(run, runArgs, true);
  run->add_option("--out", runOut, "output directory");
  run->add_option("--trace", tracePath, "write the event trace to this file");

  auto* gen = cli.add_subcommand("gen-topo", "generate a topology as scenario declarations");
  CommonArgs genArgs;
  std::string genOut;
  addCommon(gen, genArgs, false);
  gen->add_option("--out", genOut, "output file, stdout when omitted");

  auto* sweep = cli.add_subcommand("sweep", "run an experiment over seeds and both strategies");
  CommonArgs sweepArgs;
  std::string experiment = "fib-vs-C";
  std::string values;
  std::string sweepOut = "sweep";
  unsigned seeds = 20;
  unsigned workers = 0;
  addCommon(sweep, sweepArgs, true);
  sweep->add_option("--experiment", experiment, "fib-vs-C, fib-vs-P or app-vs-k")
    ->check(CLI::IsMember({"fib-vs-C", "fib-vs-P", "app-vs-k"}));
  sweep->add_option("--values", values, "comma separated parameter values")->required();
  sweep->add_option("--seeds", seeds, "number of seeds, counting up from --seed (default 1)");
  sweep->add_option("--workers", workers, "parallel runs, 0 for one per hardware thread");
  sweep->add_option("--out", sweepOut, "output directory");

  CLI11_PARSE(cli, argc, argv);

  try {
    if (bench->parsed()) {
      auto rows = bench::runFibBench(benchOpts, [] (const bench::BenchRow& r) {
        std::cerr << "size " << r.trieSize << ' ' << r.op << ": " << r.meanNs << " ns\n";
      });
      if (benchOut.empty()) {
        bench::writeBenchCsv(std::cout, rows);
      }
      else {
        auto os = openOutput(benchOut);
        bench::writeBenchCsv(os, rows);
      }
    }
    else if (run->parsed()) {
      auto config = loadConfig(runArgs);
      sim::SimulationOptions opts;
      opts.trace = !tracePath.empty();
      sim::Simulation simulation(config, opts);
      auto report = simulation.run();
      writeRunOutputs(report, runOut);
      if (opts.trace) {
        openOutput(tracePath) << simulation.traceText();
      }
      std::cout << metrics::formatReport(report);
    }
    else if (gen->parsed()) {
      auto config = loadConfig(genArgs);
      auto topo = sim::buildTopology(config);
      std::string text = "seed = " + std::to_string(config.seed) + "\n" + topo.toScenarioText();
      if (genOut.empty()) {
        std::cout << text;
      }
      else {
        openOutput(genOut) << text;
      }
      std::cerr << "nodes " << topo.totalNodes() << ", mean consumer-producer hops "
                << sim::meanConsumerProducerHops(topo) << '\n';
    }
    else if (sweep->parsed()) {
      auto base = loadConfig(sweepArgs);
      sim::SweepOptions opts;
      opts.experiment = sim::parseExperiment(experiment);
      opts.values = parseValues(values);
      opts.firstSeed = sweepArgs.seed.value_or(1);
      opts.seeds = seeds;
      opts.workers = workers;
      if (sweepArgs.strategy) {
        opts.strategies = {fw::parseStrategy(*sweepArgs.strategy)};
      }
      auto points = sim::runSweep(base, opts, [] (const sim::SweepPoint& p) {
        std::cerr << toString(p.strategy) << " value=" << p.value << " seed=" << p.seed
                  << " fib=" << p.report.avgFibAll << '\n';
      });
      sim::writeSweep(points, opts.experiment, sweepOut);
    }
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
