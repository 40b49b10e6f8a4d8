#ifndef SAMBA_FORWARDER_HPP
#define SAMBA_FORWARDER_HPP

#include "samba/fib.hpp"
#include "samba/packet.hpp"
#include "samba/pit.hpp"
#include "samba/scheduler.hpp"
#include "samba/trace.hpp"

#include <functional>
#include <string>
#include <vector>

namespace samba::fw {

enum class Strategy {
  Samba,        ///< approximate forwarding with multipath self-learning
  SelfLearning, ///< exact-match forwarding with single-path self-learning
};

std::string_view
toString(Strategy s);

/// \throw std::invalid_argument for an unknown name
Strategy
parseStrategy(std::string_view text);

/// Which duplicate copies of a discovery interest a node remembers as return paths.
enum class DiscoveryAggregation {
  AllDuplicates, ///< every duplicate copy
  ShortestPath,  ///< only duplicates that travelled no more hops than the first copy
};

std::string_view
toString(DiscoveryAggregation a);

DiscoveryAggregation
parseDiscoveryAggregation(std::string_view text);

enum class FaceKind {
  Network,  ///< link to another router
  Consumer, ///< access link to a consumer application host
  Producer, ///< access link to a producer application host
};

struct ForwarderOptions
{
  Strategy strategy = Strategy::Samba;
  Duration tmp = 50ms;
  Duration interestLifetime = 2s;
  DiscoveryAggregation aggregation = DiscoveryAggregation::ShortestPath;
  size_t deadNonceCapacity = 4096;
};

struct ForwarderCounters
{
  uint64_t loopDrops = 0;
  uint64_t duplicateDrops = 0;
  uint64_t aggregated = 0;
  uint64_t noRouteNacks = 0;
  uint64_t altRouteNacks = 0;
  uint64_t unsolicitedNacks = 0;
};

/**
 * \brief Packet processing of one router.
 *
 * Faces are created up front by the network that owns the forwarder. All outgoing
 * packets go through the send callback, so the forwarder can be driven in isolation.
 */
class Forwarder
{
public:
  using SendFn = std::function<void(FaceId, Packet)>;

  Forwarder(std::string nodeName, ForwarderOptions options, sim::Scheduler& scheduler, SendFn send);

  FaceId
  addNetworkFace();

  FaceId
  addConsumerFace();

  /// A face to a producer application that serves names under \p served.
  FaceId
  addProducerFace(std::vector<Name> served);

  void
  receive(FaceId face, const Packet& packet);

  /// The liveness detector declared \p face dead.
  void
  faceDown(FaceId face);

  void
  setTracer(Tracer* tracer) noexcept
  {
    m_tracer = tracer;
  }

  const std::string&
  nodeName() const noexcept
  {
    return m_nodeName;
  }

  const ForwarderOptions&
  options() const noexcept
  {
    return m_options;
  }

  fib::Trie&
  fib() noexcept
  {
    return m_fib;
  }

  const fib::Trie&
  fib() const noexcept
  {
    return m_fib;
  }

  const pit::Pit&
  pit() const noexcept
  {
    return m_pit;
  }

  size_t
  faceCount() const noexcept
  {
    return m_faces.size();
  }

  FaceKind
  faceKind(FaceId face) const
  {
    return m_faces.at(face).kind;
  }

  bool
  isFaceUp(FaceId face) const
  {
    return m_faces.at(face).up;
  }

  const ForwarderCounters&
  counters() const noexcept
  {
    return m_counters;
  }

private:
  struct FaceInfo
  {
    FaceKind kind;
    bool up = true;
    std::vector<Name> served;
  };

  FaceId
  addFace(FaceInfo info);

  bool
  serves(FaceId face, const Name& name) const;

  FaceScope
  scopeOf(FaceId face) const
  {
    return m_faces[face].kind == FaceKind::Network ? FaceScope::Network : FaceScope::Local;
  }

  void
  onInterest(const Interest& interest, FaceId inFace);

  void
  onDiscoveryInterest(const Interest& interest, FaceId inFace);

  void
  onData(const Data& data, FaceId inFace);

  void
  onDiscoveryData(const Data& data, FaceId inFace);

  void
  onNack(const Nack& nack, FaceId inFace);

  fib::LookupResult
  lookup(const Name& prefix, FaceId inFace) const;

  void
  broadcast(const Interest& interest, FaceId inFace);

  /// The upstream on \p failedFace cannot reach the content of the pending entry \p name.
  void
  handleUpstreamNoRoute(const Name& name, FaceId failedFace);

  void
  sendNack(FaceId face, const Name& name, Nonce nonce, NackReason reason);

  void
  scheduleExpiry(const Name& name);

  void
  trace(std::string_view event, const Name& name, Nonce nonce = 0, FaceId face = INVALID_FACE,
        std::string_view reason = {});

  void
  traceUri(std::string_view event, const std::string& uri, FaceId face);

private:
  std::string m_nodeName;
  ForwarderOptions m_options;
  sim::Scheduler& m_scheduler;
  SendFn m_send;
  Tracer* m_tracer = nullptr;
  std::vector<FaceInfo> m_faces;
  fib::Trie m_fib;
  pit::Pit m_pit;
  ForwarderCounters m_counters;
};

} // namespace samba::fw

#endif // SAMBA_FORWARDER_HPP
