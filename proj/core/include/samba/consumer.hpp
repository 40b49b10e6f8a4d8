#ifndef SAMBA_CONSUMER_HPP
#define SAMBA_CONSUMER_HPP

#include "samba/packet.hpp"
#include "samba/scheduler.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace samba::app {

struct ConsumerOptions
{
  Name prefix;
  double rate = 8.0; ///< interests per second, 0 keeps the window full instead
  SimTime start{0};
  SimTime stop = SimTime::max();
  Duration discoveryTimer = 1s;
  unsigned maxAltAttempts = 3;
  double initialCwnd = 1.0;
  double initialSsthresh = 64.0;
  /// Unanswered interests are retransmitted after this long. It matches the interest
  /// lifetime, since routers drop a retransmission while the original is still pending.
  Duration retxTimeout = 2s;
};

struct Delivery
{
  SimTime time{};
  uint64_t seq = 0;
  uint32_t bytes = 0;
};

struct ConsumerStats
{
  uint64_t interestsSent = 0;
  uint64_t retransmissions = 0;
  uint64_t timeouts = 0;
  uint64_t noRouteNacks = 0;
  uint64_t altRouteNacks = 0;
  uint64_t discoveryTimerExpirations = 0;
  uint64_t windowDecreases = 0;
  uint64_t windowDecreasesOnAltRoute = 0;
  std::vector<SimTime> discoveryTimes; ///< when each discovery interest was issued
  std::vector<Delivery> deliveries;
};

/**
 * \brief Content consumer with an AIMD window and stop-and-wait discovery.
 *
 * Interest names are the consumer prefix followed by a sequence number. While a
 * discovery interest is outstanding no other interests are sent; they wait in a
 * queue ordered by sequence number.
 */
class Consumer
{
public:
  using SendFn = std::function<void(Interest)>;
  using NonceFn = std::function<Nonce()>;

  Consumer(ConsumerOptions options, sim::Scheduler& scheduler, NonceFn nonces, SendFn send);

  /// Schedule traffic generation from the configured start time.
  void
  start();

  /// Generate the next sequence number and send it if allowed.
  void
  tick();

  void
  onData(const Data& data);

  void
  onNack(const Nack& nack);

  double
  cwnd() const noexcept
  {
    return m_cwnd;
  }

  double
  ssthresh() const noexcept
  {
    return m_ssthresh;
  }

  size_t
  inFlight() const noexcept
  {
    return m_pending.size();
  }

  size_t
  queueSize() const noexcept
  {
    return m_queue.size();
  }

  bool
  discoveryInFlight() const noexcept
  {
    return m_discovery.has_value();
  }

  const ConsumerOptions&
  options() const noexcept
  {
    return m_options;
  }

  const ConsumerStats&
  stats() const noexcept
  {
    return m_stats;
  }

  Name
  nameOf(uint64_t seq) const;

private:
  struct Pending
  {
    Nonce nonce = 0;
    SimTime sent{};
    sim::EventId timer = 0;
  };

  struct Discovery
  {
    uint64_t seq = 0;
    Nonce nonce = 0;
    sim::EventId timer = 0;
  };

  std::optional<uint64_t>
  seqOf(const Name& name) const;

  bool
  running() const;

  void
  scheduleTick(uint64_t index);

  void
  pump();

  void
  sendInterest(uint64_t seq);

  void
  issueDiscovery(uint64_t seq);

  void
  onDiscoveryTimeout();

  void
  onTimeout(uint64_t seq);

  void
  lossEvent(uint64_t seq);

  void
  requeue(uint64_t seq);

  void
  increaseWindow();

private:
  ConsumerOptions m_options;
  sim::Scheduler& m_scheduler;
  NonceFn m_nonces;
  SendFn m_send;

  double m_cwnd;
  double m_ssthresh;
  uint64_t m_nextSeq = 0;
  uint64_t m_highestSent = 0;
  std::optional<uint64_t> m_recoveryPoint;

  std::map<uint64_t, Pending> m_pending;
  std::set<uint64_t> m_queue;
  std::map<uint64_t, unsigned> m_altAttempts;
  std::optional<Discovery> m_discovery;
  ConsumerStats m_stats;
};

} // namespace samba::app

#endif // SAMBA_CONSUMER_HPP
