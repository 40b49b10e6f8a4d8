#ifndef SAMBA_SWEEP_HPP
#define SAMBA_SWEEP_HPP

#include "samba/metrics.hpp"
#include "samba/scenario.hpp"

#include <filesystem>
#include <functional>
#include <vector>

namespace samba::sim {

enum class Experiment {
  FibVsConsumers, ///< vary the number of consumers C
  FibVsProducers, ///< vary the number of producers P
  AppVsParallel,  ///< vary the parallel link degree k
};

std::string_view
toString(Experiment e);

/// Accepts fib-vs-C, fib-vs-P and app-vs-k.
Experiment
parseExperiment(std::string_view text);

struct SweepOptions
{
  Experiment experiment = Experiment::FibVsConsumers;
  std::vector<unsigned> values;
  uint64_t firstSeed = 1;
  unsigned seeds = 20;
  unsigned workers = 0; ///< 0 uses one worker per hardware thread
  std::vector<fw::Strategy> strategies = {fw::Strategy::SelfLearning, fw::Strategy::Samba};
};

struct SweepPoint
{
  unsigned value = 0;
  uint64_t seed = 0;
  fw::Strategy strategy = fw::Strategy::Samba;
  metrics::Report report;
};

/// \p base with the swept parameter, seed and strategy applied.
ScenarioConfig
configurePoint(const ScenarioConfig& base, Experiment experiment, unsigned value, uint64_t seed,
               fw::Strategy strategy);

/**
 * \brief Run every (value, seed, strategy) combination.
 *
 * Runs are independent and may execute concurrently. Results come back in
 * value-major, then seed, then strategy order regardless of scheduling.
 */
std::vector<SweepPoint>
runSweep(const ScenarioConfig& base, const SweepOptions& options,
         const std::function<void(const SweepPoint&)>& progress = {});

/// Baseline over Samba FIB ratio for each (value, seed) pair present in \p points.
struct Improvement
{
  unsigned value;
  uint64_t seed;
  metrics::Scope scope;
  double baseline;
  double samba;
  double ratio;
};

std::vector<Improvement>
improvements(const std::vector<SweepPoint>& points);

/// Write fib_size.csv, overhead.csv, app.csv, throughput.csv and improvement.csv into \p dir.
void
writeSweep(const std::vector<SweepPoint>& points, Experiment experiment, const std::filesystem::path& dir);

} // namespace samba::sim

#endif // SAMBA_SWEEP_HPP
