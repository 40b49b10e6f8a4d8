#ifndef SAMBA_SIMULATION_HPP
#define SAMBA_SIMULATION_HPP

#include "samba/consumer.hpp"
#include "samba/forwarder.hpp"
#include "samba/metrics.hpp"
#include "samba/producer.hpp"
#include "samba/scenario.hpp"
#include "samba/scheduler.hpp"
#include "samba/topology.hpp"
#include "samba/trace.hpp"

#include <memory>
#include <random>
#include <vector>

namespace samba::sim {

struct SimulationOptions
{
  bool trace = false;
};

/**
 * \brief One run of a scenario over a topology.
 *
 * Routers run a Forwarder. Consumer and producer applications live on host nodes,
 * each attached to one router by an access link. Every parallel link between two
 * routers is a separate channel with its own face at both ends.
 */
class Simulation
{
public:
  Simulation(ScenarioConfig config, Topology topology, SimulationOptions options = {});

  explicit
  Simulation(const ScenarioConfig& config, SimulationOptions options = {});

  ~Simulation();

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Run to the configured duration and collect the report. Can only be called once.
  metrics::Report
  run();

  /// Take down every channel between \p a and \p b at time \p at.
  void
  failLink(uint32_t a, uint32_t b, SimTime at);

  /// Called after every executed event while running, for invariant checks.
  void
  setEventHook(std::function<void()> hook)
  {
    m_eventHook = std::move(hook);
  }

  const ScenarioConfig&
  config() const noexcept
  {
    return m_config;
  }

  const Topology&
  topology() const noexcept
  {
    return m_topology;
  }

  Scheduler&
  scheduler() noexcept
  {
    return m_scheduler;
  }

  /// The forwarder on \p node, nullptr for hosts.
  const fw::Forwarder*
  router(uint32_t node) const;

  size_t
  consumerCount() const noexcept
  {
    return m_consumers.size();
  }

  const app::Consumer&
  consumer(size_t i) const
  {
    return *m_consumers.at(i).app;
  }

  uint32_t
  consumerNode(size_t i) const
  {
    return m_consumers.at(i).node;
  }

  /// Empty unless tracing was requested.
  const std::string&
  traceText() const;

  /// The BFD detections so far, as (time, router node, face).
  struct Detection
  {
    SimTime time;
    uint32_t node;
    FaceId face;
  };

  const std::vector<Detection>&
  detections() const noexcept
  {
    return m_detections;
  }

private:
  struct Endpoint
  {
    uint32_t node;
    FaceId face;
    SimTime lastHello{0};
    uint64_t helloGeneration = 0;
    bool declaredDown = false;
  };

  struct Channel
  {
    Endpoint end[2];
    Duration delay;
    bool up = true;
    uint64_t epoch = 0;
  };

  struct FaceRef
  {
    uint32_t channel;
    uint8_t side;
  };

  struct NodeState
  {
    NodeKind kind;
    std::unique_ptr<fw::Forwarder> router;
    std::unique_ptr<app::Producer> producer;
    int consumerIndex = -1;
    std::vector<FaceRef> faces;
  };

  struct ConsumerSlot
  {
    uint32_t node;
    std::unique_ptr<app::Consumer> app;
  };

  void
  build();

  void
  transmit(uint32_t node, FaceId face, Packet packet);

  void
  deliver(uint32_t node, FaceId face, const Packet& packet);

  void
  startBfd();

  void
  sendHello(uint32_t channel, uint8_t fromSide, SimTime at);

  void
  armDetection(uint32_t channel, uint8_t side);

  void
  declareDown(uint32_t channel, uint8_t side);

  void
  record(SimTime time, uint32_t node, std::string_view event, const Name& name, Nonce nonce = 0,
         FaceId face = INVALID_FACE, std::string_view reason = {});

  metrics::Report
  collect() const;

private:
  ScenarioConfig m_config;
  Topology m_topology;
  SimulationOptions m_options;
  Scheduler m_scheduler;
  std::mt19937_64 m_rng;
  std::unique_ptr<Tracer> m_tracer;
  std::vector<NodeState> m_nodes;
  std::vector<Channel> m_channels;
  std::vector<ConsumerSlot> m_consumers;
  std::vector<Detection> m_detections;
  std::function<void()> m_eventHook;
  bool m_ran = false;

  uint64_t m_sent = 0;
  uint64_t m_delivered = 0;
  uint64_t m_dropped = 0;
  uint64_t m_inFlight = 0;
  uint64_t m_interestTx = 0;
  uint64_t m_discoveryInterestTx = 0;
  uint64_t m_dataTx = 0;
  uint64_t m_discoveryDataTx = 0;
  uint64_t m_nackTx = 0;
  size_t m_maxPitSize = 0;
};

/// Build and run \p config once.
metrics::Report
runScenario(const ScenarioConfig& config, SimulationOptions options = {});

} // namespace samba::sim

#endif // SAMBA_SIMULATION_HPP
