#include "samba/simulation.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace samba;
using namespace samba::sim;

namespace {

ScenarioConfig
parseText(const std::string& text)
{
  std::istringstream in(text);
  return ScenarioConfig::parse(in, "toy");
}

ScenarioConfig
fig9(fw::Strategy strategy)
{
  auto cfg = ScenarioConfig::load(std::string(SAMBA_SCENARIO_DIR) + "/fig9.scn");
  cfg.strategy = strategy;
  return cfg;
}

// C1 -- R1 -- R2 -- R3 -- P1, one consumer of /P1.
const std::string LINE = "topology = explicit\n"
                         "duration = 3s\n"
                         "node = C1 consumer\n"
                         "node = R1 edge\n"
                         "node = R2 core\n"
                         "node = R3 edge\n"
                         "node = P1 producer\n"
                         "link = C1 R1\n"
                         "link = R1 R2\n"
                         "link = R2 R3\n"
                         "link = R3 P1\n"
                         "producer = P1 /P1\n";

size_t
routerEntries(const Simulation& sim, const char* node)
{
  return sim.router(sim.topology().nodeIndex(node))->fib().leafCount();
}

} // namespace

TEST(Simulation, EmptyWorkloadDoesNothing)
{
  auto cfg = parseText(LINE);
  Simulation sim(cfg);
  auto report = sim.run();
  EXPECT_EQ(report.packetsSent, 0);
  EXPECT_EQ(report.delivered, 0);
  EXPECT_DOUBLE_EQ(report.avgFibAll, 0.0);
}

TEST(Simulation, RunOnlyOnce)
{
  Simulation sim(parseText(LINE));
  sim.run();
  EXPECT_THROW(sim.run(), std::logic_error);
}

TEST(Simulation, FirstDataAfterOneDiscoveryRoundTrip)
{
  // Four 10 ms links separate C1 from P1 on either path, so discovery data arrives
  // one round trip (eight link delays) after the discovery interest leaves.
  for (auto strategy : {fw::Strategy::Samba, fw::Strategy::SelfLearning}) {
    Simulation sim(fig9(strategy));
    sim.run();
    const auto& stats = sim.consumer(0).stats();
    ASSERT_FALSE(stats.discoveryTimes.empty());
    ASSERT_FALSE(stats.deliveries.empty());
    EXPECT_EQ(stats.deliveries.front().time - stats.discoveryTimes.front(), 80ms);
    // The first plain interest is refused by R1 one round trip over the access link.
    EXPECT_EQ(stats.discoveryTimes.front(), SimTime(20ms));
  }
}

TEST(Simulation, ReportsAreDeterministic)
{
  SimulationOptions traced;
  traced.trace = true;
  Simulation a(fig9(fw::Strategy::Samba), traced);
  Simulation b(fig9(fw::Strategy::Samba), traced);
  auto ra = a.run();
  auto rb = b.run();
  EXPECT_EQ(metrics::formatReport(ra), metrics::formatReport(rb));
  EXPECT_EQ(a.traceText(), b.traceText());
  EXPECT_FALSE(a.traceText().empty());
}

TEST(Simulation, BfdDetectsFailureAfterDeadInterval)
{
  Simulation sim(fig9(fw::Strategy::Samba));
  sim.run();
  ASSERT_EQ(sim.detections().size(), 2);
  uint32_t r3 = sim.topology().nodeIndex("R3");
  uint32_t r4 = sim.topology().nodeIndex("R4");
  for (const auto& d : sim.detections()) {
    EXPECT_TRUE(d.node == r3 || d.node == r4);
    auto error = d.time - SimTime(8015ms);
    EXPECT_LE(error < Duration::zero() ? -error : error, 5ms);
  }
}

TEST(Simulation, FailuresOnUnknownOrDownLinks)
{
  {
    Simulation sim(fig9(fw::Strategy::Samba));
    uint32_t c1 = sim.topology().nodeIndex("C1");
    uint32_t p1 = sim.topology().nodeIndex("P1");
    EXPECT_THROW(sim.failLink(c1, p1, SimTime(1s)), Topology::Error);
  }
  auto cfg = fig9(fw::Strategy::Samba);
  cfg.failures.push_back(cfg.failures.front());
  cfg.failures.back().at = SimTime(9s);
  Simulation twice(cfg);
  auto report = twice.run();
  EXPECT_EQ(twice.detections().size(), 2);
  EXPECT_GT(report.delivered, 0);

  auto bad = fig9(fw::Strategy::Samba);
  bad.failures.push_back({"C1", "P1", SimTime(1s)});
  EXPECT_THROW(Simulation{bad}, ConfigError);
}

TEST(Simulation, PacketConservation)
{
  for (auto strategy : {fw::Strategy::Samba, fw::Strategy::SelfLearning}) {
    auto report = runScenario(fig9(strategy));
    EXPECT_GT(report.packetsDropped, 0);
    EXPECT_EQ(report.packetsDelivered + report.packetsDropped + report.packetsInFlight, report.packetsSent);
  }
  ScenarioConfig isp;
  isp.consumers = 20;
  isp.duration = 20s;
  isp.consumerStartMax = 10s;
  auto report = runScenario(isp);
  EXPECT_EQ(report.packetsDelivered + report.packetsDropped + report.packetsInFlight, report.packetsSent);
  EXPECT_EQ(report.packetsDropped, 0);
}

TEST(Simulation, SelfLearningLineHoldsOneEntryPerRouter)
{
  auto cfg = parseText(LINE + "consumer = C1 /P1/app 0s\nstrategy = self-learning\n");
  Simulation sim(cfg);
  auto report = sim.run();
  EXPECT_GT(report.delivered, 0);
  EXPECT_EQ(routerEntries(sim, "R1"), 1);
  EXPECT_EQ(routerEntries(sim, "R2"), 1);
  EXPECT_EQ(routerEntries(sim, "R3"), 1);
  EXPECT_EQ(report.consumerDiscoveries, 1);
}

TEST(Simulation, SambaReusesAnEntryForSiblingPrefixes)
{
  auto cfg = parseText(LINE + "consumer = C1 /P1/a 0s\n"
                              "node = C2 consumer\n"
                              "link = C2 R1\n"
                              "consumer = C2 /P1/b 1s\n");
  Simulation sim(cfg);
  auto report = sim.run();
  EXPECT_EQ(routerEntries(sim, "R1"), 1);
  EXPECT_EQ(routerEntries(sim, "R2"), 1);
  EXPECT_EQ(routerEntries(sim, "R3"), 1);
  EXPECT_EQ(report.consumerDiscoveries, 1);
  EXPECT_GT(sim.consumer(1).stats().deliveries.size(), 0);

  cfg.strategy = fw::Strategy::SelfLearning;
  Simulation sl(cfg);
  auto slReport = sl.run();
  EXPECT_EQ(routerEntries(sl, "R2"), 2);
  EXPECT_EQ(slReport.consumerDiscoveries, 2);
}

TEST(Simulation, SambaLearnsBothBranchesOfAFork)
{
  Simulation sim(fig9(fw::Strategy::Samba));
  sim.scheduler().schedule(SimTime(7s), [&] {
    const auto* r1 = sim.router(sim.topology().nodeIndex("R1"));
    auto exact = r1->fib().findExact(Name::parse("/P1"));
    ASSERT_TRUE(exact);
    EXPECT_EQ(exact->size(), 2);
  });
  sim.run();

  Simulation sl(fig9(fw::Strategy::SelfLearning));
  auto slReport = sl.run();
  EXPECT_EQ(slReport.maxFacesPerLeaf, 1);
}

TEST(Simulation, SambaKeepsThroughputThroughFailure)
{
  auto samba = runScenario(fig9(fw::Strategy::Samba));
  auto sl = runScenario(fig9(fw::Strategy::SelfLearning));
  EXPECT_EQ(samba.consumerDiscoveries, 1);
  EXPECT_GT(sl.consumerDiscoveries, 1);
  EXPECT_EQ(samba.windowDecreasesOnAltRoute, 0);
  EXPECT_GT(samba.delivered, sl.delivered);
}
