#include "samba/simulation.hpp"

#include <algorithm>
#include <map>

namespace samba::sim {

Simulation::Simulation(ScenarioConfig config, Topology topology, SimulationOptions options)
  : m_config(std::move(config))
  , m_topology(std::move(topology))
  , m_options(options)
  , m_rng(m_config.seed ^ 0x5deece66dULL)
{
  if (m_options.trace) {
    m_tracer = std::make_unique<Tracer>();
  }
  build();
}

Simulation::Simulation(const ScenarioConfig& config, SimulationOptions options)
  : Simulation(config, buildTopology(config), options)
{
}

Simulation::~Simulation() = default;

const fw::Forwarder*
Simulation::router(uint32_t node) const
{
  return m_nodes.at(node).router.get();
}

const std::string&
Simulation::traceText() const
{
  static const std::string empty;
  return m_tracer ? m_tracer->text() : empty;
}

void
Simulation::build()
{
  m_config.validate();

  fw::ForwarderOptions fwOptions;
  fwOptions.strategy = m_config.strategy;
  fwOptions.tmp = m_config.tmp;
  fwOptions.interestLifetime = m_config.interestLifetime;
  fwOptions.aggregation = m_config.aggregation;

  std::map<uint32_t, std::vector<Name>> served;
  for (const auto& p : m_topology.producers()) {
    auto& list = served[p.node];
    list.insert(list.end(), p.served.begin(), p.served.end());
  }

  const auto& nodes = m_topology.nodes();
  m_nodes.resize(nodes.size());
  for (uint32_t i = 0; i < nodes.size(); ++i) {
    NodeState& state = m_nodes[i];
    state.kind = nodes[i].kind;
    if (isRouter(state.kind)) {
      state.router = std::make_unique<fw::Forwarder>(
        nodes[i].name, fwOptions, m_scheduler,
        [this, i] (FaceId face, Packet packet) { transmit(i, face, std::move(packet)); });
      state.router->setTracer(m_tracer.get());
    }
    else if (state.kind == NodeKind::Producer) {
      state.producer = std::make_unique<app::Producer>(served[i], m_config.payloadSize);
    }
  }

  auto attach = [&] (uint32_t node, uint32_t peer) -> FaceId {
    NodeState& state = m_nodes[node];
    if (!state.router) {
      return static_cast<FaceId>(state.faces.size());
    }
    switch (nodes[peer].kind) {
      case NodeKind::Consumer:
        return state.router->addConsumerFace();
      case NodeKind::Producer:
        return state.router->addProducerFace(served[peer]);
      default:
        return state.router->addNetworkFace();
    }
  };

  for (const auto& link : m_topology.links()) {
    for (uint32_t k = 0; k < link.parallel; ++k) {
      auto index = static_cast<uint32_t>(m_channels.size());
      Channel ch;
      ch.delay = link.delay;
      ch.end[0].node = link.a;
      ch.end[0].face = attach(link.a, link.b);
      ch.end[1].node = link.b;
      ch.end[1].face = attach(link.b, link.a);
      m_nodes[link.a].faces.push_back({index, 0});
      m_nodes[link.b].faces.push_back({index, 1});
      m_channels.push_back(ch);
    }
  }

  for (const auto& spec : m_topology.consumers()) {
    app::ConsumerOptions opts;
    opts.prefix = spec.prefix;
    opts.rate = m_config.consumerRate;
    opts.start = spec.start;
    opts.stop = m_config.duration;
    opts.discoveryTimer = m_config.discoveryTimer;
    opts.maxAltAttempts = m_config.maxAltAttempts;
    opts.initialSsthresh = m_config.initialSsthresh;
    opts.retxTimeout = m_config.interestLifetime;

    uint32_t node = spec.node;
    auto consumer = std::make_unique<app::Consumer>(
      opts, m_scheduler, [this] { return static_cast<Nonce>(m_rng()); },
      [this, node] (Interest interest) { transmit(node, 0, std::move(interest)); });
    m_nodes[node].consumerIndex = static_cast<int>(m_consumers.size());
    m_consumers.push_back({node, std::move(consumer)});
  }

  for (const auto& failure : m_config.failures) {
    try {
      failLink(m_topology.nodeIndex(failure.a), m_topology.nodeIndex(failure.b), failure.at);
    }
    catch (const Topology::Error& e) {
      throw ConfigError(e.what());
    }
  }
}

void
Simulation::failLink(uint32_t a, uint32_t b, SimTime at)
{
  std::vector<uint32_t> channels;
  for (uint32_t i = 0; i < m_channels.size(); ++i) {
    const Channel& ch = m_channels[i];
    if ((ch.end[0].node == a && ch.end[1].node == b) || (ch.end[0].node == b && ch.end[1].node == a)) {
      channels.push_back(i);
    }
  }
  if (channels.empty()) {
    throw Topology::Error("no link between " + m_topology.nodes().at(a).name + " and " +
                          m_topology.nodes().at(b).name);
  }
  m_scheduler.schedule(at, [this, channels, a, b] {
    for (uint32_t i : channels) {
      m_channels[i].up = false;
      ++m_channels[i].epoch;
    }
    record(m_scheduler.now(), a, "link-down", Name(), 0, INVALID_FACE, m_topology.nodes()[b].name);
  });
}

void
Simulation::record(SimTime time, uint32_t node, std::string_view event, const Name& name, Nonce nonce,
                   FaceId face, std::string_view reason)
{
  if (m_tracer) {
    m_tracer->record(time, m_topology.nodes()[node].name, event, name.toUri(), nonce, face, reason);
  }
}

void
Simulation::transmit(uint32_t node, FaceId face, Packet packet)
{
  FaceRef ref = m_nodes[node].faces.at(face);
  Channel& ch = m_channels[ref.channel];
  ++m_sent;

  std::string_view event;
  Nonce nonce = 0;
  std::string_view reason;
  if (const auto* i = std::get_if<Interest>(&packet)) {
    event = i->isDiscovery ? "tx-disc-interest" : "tx-interest";
    nonce = i->nonce;
  }
  else if (const auto* d = std::get_if<Data>(&packet)) {
    event = d->isDiscovery ? "tx-disc-data" : "tx-data";
  }
  else {
    const auto& n = std::get<Nack>(packet);
    event = "tx-nack";
    nonce = n.nonce;
    reason = toString(n.reason);
  }

  if (!ch.up) {
    ++m_dropped;
    record(m_scheduler.now(), node, "drop-link-down", packetName(packet), nonce, face, reason);
    return;
  }

  if (const auto* i = std::get_if<Interest>(&packet)) {
    ++(i->isDiscovery ? m_discoveryInterestTx : m_interestTx);
  }
  else if (const auto* d = std::get_if<Data>(&packet)) {
    ++(d->isDiscovery ? m_discoveryDataTx : m_dataTx);
  }
  else {
    ++m_nackTx;
  }
  record(m_scheduler.now(), node, event, packetName(packet), nonce, face, reason);

  uint32_t index = ref.channel;
  uint8_t other = 1 - ref.side;
  uint64_t epoch = ch.epoch;
  ++m_inFlight;
  m_scheduler.scheduleAfter(ch.delay, [this, index, other, epoch, packet = std::move(packet)] {
    --m_inFlight;
    Channel& c = m_channels[index];
    if (c.epoch != epoch) {
      ++m_dropped;
      record(m_scheduler.now(), c.end[other].node, "drop-lost", packetName(packet), 0, c.end[other].face);
      return;
    }
    ++m_delivered;
    deliver(c.end[other].node, c.end[other].face, packet);
  });
}

void
Simulation::deliver(uint32_t node, FaceId face, const Packet& packet)
{
  NodeState& state = m_nodes[node];
  if (state.router) {
    state.router->receive(face, packet);
    m_maxPitSize = std::max(m_maxPitSize, state.router->pit().size());
    return;
  }

  if (state.consumerIndex >= 0) {
    app::Consumer& consumer = *m_consumers[state.consumerIndex].app;
    if (const auto* data = std::get_if<Data>(&packet)) {
      size_t before = consumer.stats().deliveries.size();
      consumer.onData(*data);
      if (consumer.stats().deliveries.size() > before) {
        record(m_scheduler.now(), node, "app-data", data->name, 0, face, std::to_string(data->payloadSize));
      }
    }
    else if (const auto* nack = std::get_if<Nack>(&packet)) {
      consumer.onNack(*nack);
    }
    return;
  }

  if (state.producer) {
    const auto* interest = std::get_if<Interest>(&packet);
    if (interest == nullptr) {
      return;
    }
    if (auto reply = state.producer->onInterest(*interest)) {
      transmit(node, face, std::move(*reply));
    }
    else if (!interest->isDiscovery) {
      transmit(node, face, Nack{interest->name, interest->nonce, NackReason::NoRoute});
    }
  }
}

void
Simulation::startBfd()
{
  Duration detect = m_config.bfdInterval * m_config.bfdMultiplier;
  for (uint32_t i = 0; i < m_channels.size(); ++i) {
    for (uint8_t side = 0; side < 2; ++side) {
      // The first hello needs one link delay to arrive.
      m_scheduler.schedule(m_channels[i].delay + detect, [this, i, side] {
        if (m_channels[i].end[side].helloGeneration == 0) {
          declareDown(i, side);
        }
      });
      sendHello(i, side, SimTime(0));
    }
  }
}

void
Simulation::sendHello(uint32_t channel, uint8_t fromSide, SimTime at)
{
  m_scheduler.schedule(at, [this, channel, fromSide] {
    Channel& c = m_channels[channel];
    if (c.up) {
      uint64_t epoch = c.epoch;
      uint8_t to = 1 - fromSide;
      m_scheduler.scheduleAfter(c.delay, [this, channel, to, epoch] {
        Channel& ch = m_channels[channel];
        if (ch.epoch != epoch) {
          return;
        }
        Endpoint& e = ch.end[to];
        e.lastHello = m_scheduler.now();
        ++e.helloGeneration;
        armDetection(channel, to);
      });
    }
    SimTime next = m_scheduler.now() + m_config.bfdInterval;
    if (next <= m_config.duration) {
      sendHello(channel, fromSide, next);
    }
  });
}

void
Simulation::armDetection(uint32_t channel, uint8_t side)
{
  uint64_t gen = m_channels[channel].end[side].helloGeneration;
  Duration detect = m_config.bfdInterval * m_config.bfdMultiplier;
  m_scheduler.scheduleAfter(detect, [this, channel, side, gen] {
    if (m_channels[channel].end[side].helloGeneration == gen) {
      declareDown(channel, side);
    }
  });
}

void
Simulation::declareDown(uint32_t channel, uint8_t side)
{
  Endpoint& e = m_channels[channel].end[side];
  if (e.declaredDown) {
    return;
  }
  e.declaredDown = true;
  m_detections.push_back({m_scheduler.now(), e.node, e.face});
  record(m_scheduler.now(), e.node, "bfd-down", Name(), 0, e.face);
  if (m_nodes[e.node].router) {
    m_nodes[e.node].router->faceDown(e.face);
  }
}

metrics::Report
Simulation::run()
{
  if (m_ran) {
    throw std::logic_error("a simulation can only run once");
  }
  m_ran = true;

  for (auto& slot : m_consumers) {
    slot.app->start();
  }
  if (m_config.bfdEnabled()) {
    startBfd();
  }
  if (m_eventHook) {
    m_scheduler.setPostEventHook(m_eventHook);
  }
  m_scheduler.runUntil(m_config.duration);
  m_scheduler.setPostEventHook(nullptr);
  return collect();
}

metrics::Report
Simulation::collect() const
{
  metrics::Report r;
  r.scenario = m_config.name;
  r.strategy = std::string(fw::toString(m_config.strategy));
  r.seed = m_config.seed;
  r.consumers = static_cast<unsigned>(m_topology.consumers().size());
  r.producers = static_cast<unsigned>(m_topology.producers().size());
  r.parallelLinks = m_config.parallelLinks;

  std::vector<const fib::Trie*> all;
  std::vector<const fib::Trie*> core;
  for (const auto& state : m_nodes) {
    if (!state.router) {
      continue;
    }
    all.push_back(&state.router->fib());
    if (state.kind == NodeKind::CoreRouter) {
      core.push_back(&state.router->fib());
    }
    r.loopDrops += state.router->counters().loopDrops;
  }
  r.avgFibAll = metrics::averageFibEntries(all);
  r.avgFibCore = metrics::averageFibEntries(core);
  r.appAll = metrics::averagePathsPerPrefix(all, all);
  r.appCore = metrics::averagePathsPerPrefix(core, all);
  r.maxFacesPerLeaf = metrics::maxFacesPerLeaf(all);

  r.discoveryInterests = m_discoveryInterestTx;
  r.discoveryData = m_discoveryDataTx;
  r.interestTx = m_interestTx;
  r.dataTx = m_dataTx;
  r.nackTx = m_nackTx;
  r.packetsSent = m_sent;
  r.packetsDelivered = m_delivered;
  r.packetsDropped = m_dropped;
  r.packetsInFlight = m_inFlight;
  r.maxPitSize = m_maxPitSize;

  r.bin = m_config.throughputBin;
  for (const auto& slot : m_consumers) {
    const auto& stats = slot.app->stats();
    r.consumerDiscoveries += stats.discoveryTimes.size();
    r.consumerTimeouts += stats.timeouts;
    r.altRouteNacks += stats.altRouteNacks;
    r.noRouteNacks += stats.noRouteNacks;
    r.windowDecreasesOnAltRoute += stats.windowDecreasesOnAltRoute;
    r.delivered += stats.deliveries.size();
    r.discoveryTimes.push_back(stats.discoveryTimes);
    r.throughput.push_back(metrics::binDeliveries(m_topology.nodes()[slot.node].name, stats.deliveries,
                                                  m_config.throughputBin, m_config.duration));
  }
  return r;
}

metrics::Report
runScenario(const ScenarioConfig& config, SimulationOptions options)
{
  Simulation sim(config, options);
  return sim.run();
}

} // namespace samba::sim
