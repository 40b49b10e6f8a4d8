// End-to-end acceptance run. Prints one PASS or FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion numbers as arguments to run a subset.

#include "af_oracle.hpp"
#include "properties.hpp"

#include "samba/bench.hpp"
#include "samba/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace samba;
using namespace samba::sim;

namespace {

const std::string SCENARIOS = SAMBA_SCENARIO_DIR;

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  /// Record \p condition, keeping \p what in the detail line when it fails.
  void
  require(bool condition, const std::string& what)
  {
    if (!condition) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double
elapsedSeconds(std::chrono::steady_clock::time_point since)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string
num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<SweepPoint>
sweep(const std::string& file, Experiment experiment, std::vector<unsigned> values)
{
  auto base = ScenarioConfig::load(SCENARIOS + "/" + file);
  SweepOptions opts;
  opts.experiment = experiment;
  opts.values = std::move(values);
  opts.seeds = 20;
  size_t total = opts.values.size() * opts.seeds * opts.strategies.size();
  size_t done = 0;
  return runSweep(base, opts, [&] (const SweepPoint&) {
    if (++done % 20 == 0 || done == total) {
      std::cerr << "  " << toString(experiment) << ": " << done << "/" << total << " runs\n";
    }
  });
}

/// Seed-averaged all-router improvement ratio per swept value.
std::map<unsigned, double>
meanRatios(const std::vector<Improvement>& imps)
{
  std::map<unsigned, std::pair<double, unsigned>> acc;
  for (const auto& i : imps) {
    if (i.scope == metrics::Scope::All) {
      acc[i.value].first += i.ratio;
      ++acc[i.value].second;
    }
  }
  std::map<unsigned, double> out;
  for (const auto& [v, p] : acc) {
    out[v] = p.first / p.second;
  }
  return out;
}

void
criterion1(Outcome& o)
{
  auto start = std::chrono::steady_clock::now();
  bench::BenchOptions opts;
  std::map<size_t, double> lookup;
  for (const auto& row : bench::runFibBench(opts)) {
    if (row.op == "lookup") {
      lookup[row.trieSize] = row.meanNs;
      std::cerr << "  lookup at " << row.trieSize << ": " << num(row.meanNs) << " ns\n";
    }
  }
  double seconds = elapsedSeconds(start);
  bool monotone = true;
  double previous = 0;
  for (const auto& [size, ns] : lookup) {
    monotone = monotone && ns >= previous;
    previous = ns;
  }
  double ratio = lookup.at(100000) / lookup.at(1000000);
  o.detail << "lookup ns";
  for (const auto& [size, ns] : lookup) {
    o.detail << " " << size << ":" << num(ns);
  }
  o.detail << ", 100k/1M=" << num(ratio) << ", " << num(seconds) << " s";
  o.require(monotone, "lookup time non-decreasing in size");
  o.require(ratio <= 0.75, "lookup(100k)/lookup(1M) <= 0.75");
  o.require(seconds <= 600, "runtime <= 10 min");
}

void
criterion2(Outcome& o)
{
  auto run = testing::runOracleCases(10'000, 20240601);
  o.detail << run.cases << " cases, " << run.mismatches << " mismatches";
  o.require(run.cases == 10'000 && run.mismatches == 0, "zero mismatches");
}

void
criterion3(Outcome& o)
{
  fib::Trie t;
  t.insert(Name::parse("/A/B/C/D"), 1);
  t.insert(Name::parse("/A/B/F"), 1);
  t.insert(Name::parse("/A/B/G"), 2);
  t.insert(Name::parse("/A/E"), 3);
  t.insert(Name::parse("/K/L"), 4);
  t.insert(Name::parse("/K/M"), 5);
  t.insert(Name::parse("/A/H/I"), 6);
  t.removeFaceFromLeaf(Name::parse("/A/H/I"), 6);

  auto f = t.afLookup(Name::parse("/A/B/F"));
  auto y = t.afLookup(Name::parse("/A/B/Y"));
  auto z = t.afLookup(Name::parse("/A/H/Z"));
  o.detail << "leaves=" << t.leafCount();
  o.require(t.leafCount() == 6, "six leaves");
  o.require(f == fib::LookupResult::forward(1), "/A/B/F -> f1");
  o.require(y == fib::LookupResult::forward(1), "/A/B/Y -> f1");
  o.require(z == fib::LookupResult::noRoute(), "/A/H/Z -> NoRoute");
}

void
criteria4and5(Outcome& o4, Outcome& o5)
{
  auto start = std::chrono::steady_clock::now();
  auto points = sweep("fig5.scn", Experiment::FibVsConsumers, {10, 100, 1000});
  double seconds = elapsedSeconds(start);
  auto imps = improvements(points);

  unsigned below10 = 0;
  unsigned below1000 = 0;
  double min10 = 1e300;
  double min1000 = 1e300;
  for (const auto& i : imps) {
    if (i.scope != metrics::Scope::All) {
      continue;
    }
    if (i.value == 10) {
      below10 += i.ratio < 1.5;
      min10 = std::min(min10, i.ratio);
    }
    if (i.value == 1000) {
      below1000 += i.ratio < 8;
      min1000 = std::min(min1000, i.ratio);
    }
  }
  auto means = meanRatios(imps);
  bool monotone = means[10] <= means[100] && means[100] <= means[1000];
  o4.detail << "mean ratio C=10:" << num(means[10]) << " C=100:" << num(means[100]) << " C=1000:"
            << num(means[1000]) << ", min C=10:" << num(min10) << " min C=1000:" << num(min1000)
            << ", " << num(seconds) << " s";
  o4.require(below10 == 0, std::to_string(below10) + "/20 seeds below 1.5 at C=10");
  o4.require(below1000 == 0, std::to_string(below1000) + "/20 seeds below 8 at C=1000");
  o4.require(monotone, "seed-averaged ratio non-decreasing in C");
  o4.require(seconds <= 1800, "runtime <= 30 min");

  std::map<std::pair<unsigned, uint64_t>, std::map<fw::Strategy, uint64_t>> discovery;
  for (const auto& p : points) {
    discovery[{p.value, p.seed}][p.strategy] = p.report.discoveryInterests;
  }
  unsigned worse = 0;
  std::map<unsigned, std::pair<double, double>> totals;
  for (auto& [key, by] : discovery) {
    uint64_t sl = by[fw::Strategy::SelfLearning];
    uint64_t samba = by[fw::Strategy::Samba];
    if (samba > sl) {
      ++worse;
      o5.detail << " (C=" << key.first << " seed " << key.second << ": " << samba << " > " << sl << ")";
    }
    totals[key.first].first += static_cast<double>(sl);
    totals[key.first].second += static_cast<double>(samba);
  }
  double ratio1000 = totals[1000].first / totals[1000].second;
  o5.detail << " seed-averaged discovery ratio C=10:" << num(totals[10].first / totals[10].second)
            << " C=100:" << num(totals[100].first / totals[100].second) << " C=1000:" << num(ratio1000);
  o5.require(worse == 0, std::to_string(worse) + " (C, seed) runs where Samba sent more discoveries");
  o5.require(ratio1000 >= 10, "seed-averaged ratio >= 10 at C=1000");
}

void
criterion6(Outcome& o)
{
  auto points = sweep("fig6.scn", Experiment::FibVsProducers, {2, 12, 22});
  auto imps = improvements(points);
  unsigned nonPositive = 0;
  for (const auto& i : imps) {
    nonPositive += i.scope == metrics::Scope::All && !(i.ratio > 0);
  }
  auto means = meanRatios(imps);
  o.detail << "mean ratio P=2:" << num(means[2]) << " P=12:" << num(means[12]) << " P=22:" << num(means[22]);
  o.require(nonPositive == 0, "ratio positive for every seed");
  o.require(means[2] >= means[12] && means[12] >= means[22], "seed-averaged ratio non-increasing in P");
}

void
criterion7(Outcome& o)
{
  auto points = sweep("fig8.scn", Experiment::AppVsParallel, {1, 5, 10});
  unsigned multiFace = 0;
  std::map<unsigned, std::pair<double, unsigned>> core;
  for (const auto& p : points) {
    if (p.strategy == fw::Strategy::SelfLearning) {
      multiFace += p.report.maxFacesPerLeaf != 1;
    }
    else {
      core[p.value].first += p.report.appCore;
      ++core[p.value].second;
    }
  }
  auto mean = [&] (unsigned k) { return core[k].first / core[k].second; };
  o.detail << "Samba core APP k=1:" << num(mean(1)) << " k=5:" << num(mean(5)) << " k=10:" << num(mean(10));
  o.require(multiFace == 0, std::to_string(multiFace) + " self-learning runs with a leaf not holding exactly one face");
  o.require(mean(1) < mean(5) && mean(5) < mean(10), "Samba core APP strictly increasing in k");
  o.require(mean(10) > 1, "Samba core APP > 1 at k=10");
}

void
criterion8(Outcome& o)
{
  auto config = ScenarioConfig::load(SCENARIOS + "/fig9.scn");
  SimTime failure = config.failures.at(0).at;
  std::map<fw::Strategy, metrics::RecoveryAnalysis> result;
  for (auto strategy : {fw::Strategy::Samba, fw::Strategy::SelfLearning}) {
    config.strategy = strategy;
    auto report = runScenario(config);
    result[strategy] =
      metrics::analyzeRecovery(report.throughput.at(0), report.bin, failure, report.discoveryTimes.at(0));
  }
  const auto& samba = result[fw::Strategy::Samba];
  const auto& sl = result[fw::Strategy::SelfLearning];
  o.detail << "Samba pre-failure mean " << num(samba.preFailureMean) << "/s, min after " << num(samba.minPostFailureBin)
           << ", discoveries after " << samba.discoveriesAfterFailure << "; baseline last bin "
           << num(sl.lastPreFailureBin) << ", min after " << num(sl.minPostFailureBin) << ", discoveries after "
           << sl.discoveriesAfterFailure << ", recovery " << num(sl.recoverySeconds) << " s";
  o.require(samba.minPostFailureBin >= 0.5 * samba.preFailureMean, "Samba stays above half its pre-failure mean");
  o.require(samba.discoveriesAfterFailure == 0, "Samba issues no discovery after the failure");
  o.require(sl.dipped, "baseline throughput dips");
  o.require(sl.discoveriesAfterFailure >= 1, "baseline rediscovers");
  o.require(sl.recoverySeconds >= 1.0, "baseline recovery >= 1 s");
}

void
criterion9(Outcome& o)
{
  uint64_t altRoutes = 0;
  for (const auto& c : testing::propertyCases(SCENARIOS)) {
    auto r = testing::checkProperties(c.config);
    altRoutes += r.altRouteNacks;
    o.detail << " " << c.label << (r.ok() ? " ok" : " BROKEN");
    o.require(r.repeatedBroadcasts == 0, c.label + " loop freedom");
    o.require(r.discoveryOverlaps == 0, c.label + " one discovery in flight");
    o.require(r.altRouteWindowDecreases == 0, c.label + " AltRoute keeps cwnd");
    o.require(r.pitOverstays == 0, c.label + " PIT lifetime bound");
    o.require(r.identicalTraces && r.identicalReports, c.label + " determinism");
    o.require(r.broadcasts > 0 && r.pitChecks > 0, c.label + " exercised");
  }
  o.require(altRoutes > 0, "AltRoute exercised");
}

} // namespace

int
main(int argc, char** argv)
{
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    wanted.insert(std::atoi(argv[i]));
  }
  auto selected = [&] (int n) { return wanted.empty() || wanted.count(n) > 0; };

  std::map<int, Outcome> outcomes;
  std::map<int, std::function<void()>> steps{
    {1, [&] { criterion1(outcomes[1]); }},
    {2, [&] { criterion2(outcomes[2]); }},
    {3, [&] { criterion3(outcomes[3]); }},
    {4, [&] { criteria4and5(outcomes[4], outcomes[5]); }},
    {6, [&] { criterion6(outcomes[6]); }},
    {7, [&] { criterion7(outcomes[7]); }},
    {8, [&] { criterion8(outcomes[8]); }},
    {9, [&] { criterion9(outcomes[9]); }},
  };

  bool allPass = true;
  for (auto& [n, step] : steps) {
    if (!selected(n) && !(n == 4 && selected(5))) {
      continue;
    }
    std::cerr << "criterion " << n << (n == 4 ? " and 5" : "") << "...\n";
    try {
      step();
    }
    catch (const std::exception& e) {
      outcomes[n].require(false, std::string("exception: ") + e.what());
      if (n == 4) {
        outcomes[5].require(false, std::string("exception: ") + e.what());
      }
    }
    for (int m : n == 4 ? std::vector<int>{4, 5} : std::vector<int>{n}) {
      if (!selected(m)) {
        continue;
      }
      auto& o = outcomes[m];
      std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << m << ": " << o.detail.str() << std::endl;
      allPass = allPass && o.pass;
    }
  }
  return allPass ? 0 : 1;
}
