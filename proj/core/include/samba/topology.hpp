#ifndef SAMBA_TOPOLOGY_HPP
#define SAMBA_TOPOLOGY_HPP

#include "samba/name.hpp"
#include "samba/time.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace samba::sim {

enum class NodeKind {
  CoreRouter,
  EdgeRouter,
  Consumer,
  Producer,
};

std::string_view
toString(NodeKind kind);

/// Accepts core, edge, consumer and producer.
NodeKind
parseNodeKind(std::string_view text);

inline bool
isRouter(NodeKind kind) noexcept
{
  return kind == NodeKind::CoreRouter || kind == NodeKind::EdgeRouter;
}

struct TopoNode
{
  std::string name;
  NodeKind kind;
};

/// A bidirectional adjacency made of \c parallel independent links.
struct TopoLink
{
  uint32_t a;
  uint32_t b;
  Duration delay;
  uint32_t parallel = 1;
};

struct ConsumerSpec
{
  uint32_t node;
  Name prefix;
  SimTime start{0};
};

struct ProducerSpec
{
  uint32_t node;
  std::vector<Name> served;
};

class Topology
{
public:
  class Error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  uint32_t
  addNode(std::string name, NodeKind kind);

  void
  addLink(uint32_t a, uint32_t b, Duration delay, uint32_t parallel = 1);

  void
  addConsumer(uint32_t node, Name prefix, SimTime start);

  void
  addProducer(uint32_t node, std::vector<Name> served);

  std::optional<uint32_t>
  findNode(std::string_view name) const;

  /// \throw Error if there is no such node
  uint32_t
  nodeIndex(std::string_view name) const;

  const std::vector<TopoNode>&
  nodes() const noexcept
  {
    return m_nodes;
  }

  const std::vector<TopoLink>&
  links() const noexcept
  {
    return m_links;
  }

  const std::vector<ConsumerSpec>&
  consumers() const noexcept
  {
    return m_consumers;
  }

  const std::vector<ProducerSpec>&
  producers() const noexcept
  {
    return m_producers;
  }

  size_t
  totalNodes() const noexcept
  {
    return m_nodes.size();
  }

  size_t
  count(NodeKind kind) const;

  /// Distinct neighbours of \p node in link order.
  std::vector<uint32_t>
  neighbors(uint32_t node) const;

  /// Number of links incident to \p node, parallel links counted once.
  size_t
  degree(uint32_t node) const;

  /// The router a consumer or producer host is attached to.
  uint32_t
  attachment(uint32_t host) const;

  /// Router-to-router hop distances from \p router, -1 where unreachable.
  std::vector<int>
  routerHops(uint32_t router) const;

  /// The producer serving \p name, if any.
  std::optional<size_t>
  producerFor(const Name& name) const;

  /// \throw Error on unknown endpoints, duplicate hosts links or a disconnected graph
  void
  validate() const;

  /// Scenario-file declarations describing this exact topology.
  std::string
  toScenarioText() const;

private:
  std::vector<TopoNode> m_nodes;
  std::vector<TopoLink> m_links;
  std::vector<ConsumerSpec> m_consumers;
  std::vector<ProducerSpec> m_producers;
};

struct IspParameters
{
  unsigned coreRouters = 21;
  unsigned edgeRouters = 16;
  unsigned consumers = 10;
  unsigned producers = 4;
  unsigned prefixes = 0; ///< distinct producer domains, 0 means one per producer
  unsigned parallelLinks = 1;
  Duration linkDelay = 10ms;
  Duration consumerStartMax = 50s;
};

/**
 * \brief Random ISP-like topology.
 *
 * Core routers form a connected random graph with every degree 3 (one router gets
 * degree 4 when the degree sum would be odd), drawn with the pairing model. Each edge
 * router attaches to between one and three distinct core routers and every host to one
 * edge router. Each consumer requests names under its own prefix below a domain that
 * exactly one producer serves.
 */
Topology
generateIspTopology(const IspParameters& params, uint64_t seed);

/// \throw Topology::Error when \p topo breaks the structural rules of generateIspTopology
void
checkIspInvariants(const Topology& topo, const IspParameters& params);

/// Mean router hops between each consumer's access router and its producer's.
double
meanConsumerProducerHops(const Topology& topo);

} // namespace samba::sim

#endif // SAMBA_TOPOLOGY_HPP
