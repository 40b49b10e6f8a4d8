#include "samba/sweep.hpp"
#include "samba/simulation.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace samba::sim {

std::string_view
toString(Experiment e)
{
  switch (e) {
    case Experiment::FibVsConsumers:
      return "fib-vs-C";
    case Experiment::FibVsProducers:
      return "fib-vs-P";
    case Experiment::AppVsParallel:
      return "app-vs-k";
  }
  return "unknown";
}

Experiment
parseExperiment(std::string_view text)
{
  if (text == "fib-vs-C") {
    return Experiment::FibVsConsumers;
  }
  if (text == "fib-vs-P") {
    return Experiment::FibVsProducers;
  }
  if (text == "app-vs-k") {
    return Experiment::AppVsParallel;
  }
  throw ConfigError("unknown experiment '" + std::string(text) + "'");
}

ScenarioConfig
configurePoint(const ScenarioConfig& base, Experiment experiment, unsigned value, uint64_t seed,
               fw::Strategy strategy)
{
  ScenarioConfig config = base;
  config.seed = seed;
  config.strategy = strategy;
  switch (experiment) {
    case Experiment::FibVsConsumers:
      config.consumers = value;
      break;
    case Experiment::FibVsProducers:
      config.producers = value;
      break;
    case Experiment::AppVsParallel:
      config.parallelLinks = value;
      break;
  }
  return config;
}

std::vector<SweepPoint>
runSweep(const ScenarioConfig& base, const SweepOptions& options,
         const std::function<void(const SweepPoint&)>& progress)
{
  std::vector<SweepPoint> points;
  for (unsigned value : options.values) {
    for (unsigned s = 0; s < options.seeds; ++s) {
      for (auto strategy : options.strategies) {
        SweepPoint p;
        p.value = value;
        p.seed = options.firstSeed + s;
        p.strategy = strategy;
        points.push_back(std::move(p));
      }
    }
  }

  unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<size_t>(1, points.size()));

  std::atomic<size_t> next{0};
  std::mutex mutex;
  std::exception_ptr failure;

  auto work = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= points.size()) {
        return;
      }
      SweepPoint& p = points[i];
      try {
        p.report = runScenario(configurePoint(base, options.experiment, p.value, p.seed, p.strategy));
      }
      catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next = points.size();
        return;
      }
      if (progress) {
        std::lock_guard<std::mutex> lock(mutex);
        progress(p);
      }
    }
  };

  if (workers == 1) {
    work();
  }
  else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back(work);
    }
    for (auto& t : threads) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return points;
}

std::vector<Improvement>
improvements(const std::vector<SweepPoint>& points)
{
  std::map<std::pair<unsigned, uint64_t>, const metrics::Report*> baseline;
  std::map<std::pair<unsigned, uint64_t>, const metrics::Report*> samba;
  for (const auto& p : points) {
    auto& table = p.strategy == fw::Strategy::Samba ? samba : baseline;
    table[{p.value, p.seed}] = &p.report;
  }

  std::vector<Improvement> out;
  for (const auto& [key, b] : baseline) {
    auto it = samba.find(key);
    if (it == samba.end()) {
      continue;
    }
    for (auto scope : {metrics::Scope::All, metrics::Scope::Core}) {
      double bv = scope == metrics::Scope::All ? b->avgFibAll : b->avgFibCore;
      double sv = scope == metrics::Scope::All ? it->second->avgFibAll : it->second->avgFibCore;
      out.push_back({key.first, key.second, scope, bv, sv, metrics::improvementRatio(*b, *it->second, scope)});
    }
  }
  return out;
}

void
writeSweep(const std::vector<SweepPoint>& points, Experiment experiment, const std::filesystem::path& dir)
{
  std::filesystem::create_directories(dir);
  auto open = [&] (const char* file, std::string_view header) {
    std::ofstream os(dir / file);
    if (!os) {
      throw std::runtime_error("cannot write " + (dir / file).string());
    }
    os << header << '\n';
    return os;
  };

  auto fib = open("fib_size.csv", metrics::FIB_SIZE_HEADER);
  auto overhead = open("overhead.csv", metrics::OVERHEAD_HEADER);
  auto app = open("app.csv", metrics::APP_HEADER);
  auto throughput = open("throughput.csv", metrics::THROUGHPUT_HEADER);
  for (const auto& p : points) {
    metrics::writeFibSizeRows(fib, p.report);
    metrics::writeOverheadRow(overhead, p.report);
    metrics::writeAppRows(app, p.report);
    metrics::writeThroughputRows(throughput, p.report);
  }

  auto ratios = open("improvement.csv", "experiment,value,seed,scope,baseline,samba,ratio");
  for (const auto& imp : improvements(points)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%u,%llu,%s,%.6f,%.6f,%.6f", imp.value,
                  static_cast<unsigned long long>(imp.seed), std::string(metrics::toString(imp.scope)).c_str(),
                  imp.baseline, imp.samba, imp.ratio);
    ratios << toString(experiment) << ',' << buf << '\n';
  }
}

} // namespace samba::sim
