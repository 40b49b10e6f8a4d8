#ifndef SAMBA_TESTS_PROPERTIES_HPP
#define SAMBA_TESTS_PROPERTIES_HPP

// Protocol invariants checked over a full simulation run. Shared by the property
// tests and the acceptance run.

#include "samba/simulation.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace samba::testing {

struct PropertyCase
{
  std::string label;
  sim::ScenarioConfig config;
};

/// The link-failure square and a failing multipath ISP topology, under both strategies.
inline std::vector<PropertyCase>
propertyCases(const std::string& scenarioDir)
{
  using namespace samba::sim;
  std::vector<PropertyCase> out;
  for (auto strategy : {fw::Strategy::Samba, fw::Strategy::SelfLearning}) {
    auto fig9 = ScenarioConfig::load(scenarioDir + "/fig9.scn");
    fig9.strategy = strategy;
    out.push_back({"fig9/" + std::string(fw::toString(strategy)), fig9});

    ScenarioConfig isp;
    isp.name = "isp";
    isp.strategy = strategy;
    isp.seed = 11;
    isp.consumers = 30;
    isp.parallelLinks = 3;
    isp.duration = 15s;
    isp.consumerStartMax = 8s;
    // Fail the first core link of the generated topology once traffic is flowing.
    auto topo = buildTopology(isp);
    uint32_t a = topo.nodeIndex("core0");
    for (uint32_t n : topo.neighbors(a)) {
      if (topo.nodes()[n].kind == NodeKind::CoreRouter) {
        isp.failures.push_back({"core0", topo.nodes()[n].name, SimTime(10s)});
        break;
      }
    }
    out.push_back({"isp/" + std::string(fw::toString(strategy)), isp});
  }
  return out;
}

struct PropertyReport
{
  size_t broadcasts = 0;
  size_t repeatedBroadcasts = 0;  ///< a node broadcast the same (name, nonce) again
  size_t discoveryOverlaps = 0;   ///< a consumer issued a discovery while one was live
  uint64_t altRouteNacks = 0;
  uint64_t altRouteWindowDecreases = 0;
  size_t pitChecks = 0;
  size_t pitOverstays = 0;        ///< a live entry past its expiry or set beyond the bound
  bool identicalTraces = false;
  bool identicalReports = false;

  bool
  ok() const noexcept
  {
    return repeatedBroadcasts == 0 && discoveryOverlaps == 0 && altRouteWindowDecreases == 0 &&
           pitOverstays == 0 && identicalTraces && identicalReports && broadcasts > 0 && pitChecks > 0;
  }
};

inline PropertyReport
checkProperties(const sim::ScenarioConfig& config)
{
  using namespace samba::sim;
  PropertyReport out;
  SimulationOptions opts;
  opts.trace = true;
  Simulation sim(config, opts);

  std::vector<const fw::Forwarder*> routers;
  for (uint32_t n = 0; n < sim.topology().totalNodes(); ++n) {
    if (const auto* r = sim.router(n)) {
      routers.push_back(r);
    }
  }
  Duration bound = std::max(config.interestLifetime, config.tmp);
  std::vector<size_t> issued(sim.consumerCount(), 0);
  std::vector<uint64_t> expirations(sim.consumerCount(), 0);
  std::vector<bool> wasInFlight(sim.consumerCount(), false);

  sim.setEventHook([&] {
    SimTime now = sim.scheduler().now();
    for (size_t i = 0; i < sim.consumerCount(); ++i) {
      const auto& consumer = sim.consumer(i);
      const auto& stats = consumer.stats();
      size_t count = stats.discoveryTimes.size();
      // An outstanding discovery may only be replaced when its timer has just fired.
      bool timerFired = stats.discoveryTimerExpirations > expirations[i];
      if (count > issued[i] + 1 || (count > issued[i] && wasInFlight[i] && !timerFired)) {
        ++out.discoveryOverlaps;
      }
      issued[i] = count;
      expirations[i] = stats.discoveryTimerExpirations;
      wasInFlight[i] = consumer.discoveryInFlight();
    }
    for (const auto* r : routers) {
      for (const auto* e : r->pit().sortedEntries()) {
        ++out.pitChecks;
        if (now > e->expiry() || e->expiry() - now > bound) {
          ++out.pitOverstays;
        }
      }
    }
  });
  auto report = sim.run();
  out.altRouteNacks = report.altRouteNacks;
  out.altRouteWindowDecreases = report.windowDecreasesOnAltRoute;

  std::map<std::tuple<std::string, std::string, Nonce>, int> seen;
  for (const auto& r : parseTrace(sim.traceText())) {
    if (r.event == "broadcast") {
      ++out.broadcasts;
      if (++seen[{r.node, r.name, r.nonce}] > 1) {
        ++out.repeatedBroadcasts;
      }
    }
  }

  Simulation again(config, opts);
  auto second = again.run();
  out.identicalTraces = again.traceText() == sim.traceText();
  out.identicalReports = metrics::formatReport(second) == metrics::formatReport(report);
  return out;
}

} // namespace samba::testing

#endif // SAMBA_TESTS_PROPERTIES_HPP
