#include "samba/consumer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace samba::app {

Consumer::Consumer(ConsumerOptions options, sim::Scheduler& scheduler, NonceFn nonces, SendFn send)
  : m_options(std::move(options))
  , m_scheduler(scheduler)
  , m_nonces(std::move(nonces))
  , m_send(std::move(send))
  , m_cwnd(m_options.initialCwnd)
  , m_ssthresh(m_options.initialSsthresh)
{
}

Name
Consumer::nameOf(uint64_t seq) const
{
  Name name = m_options.prefix;
  name.append(std::to_string(seq));
  return name;
}

std::optional<uint64_t>
Consumer::seqOf(const Name& name) const
{
  if (name.size() != m_options.prefix.size() + 1 || !m_options.prefix.isPrefixOf(name)) {
    return std::nullopt;
  }
  const std::string& last = name[name.size() - 1];
  uint64_t seq = 0;
  auto [ptr, ec] = std::from_chars(last.data(), last.data() + last.size(), seq);
  if (ec != std::errc() || ptr != last.data() + last.size()) {
    return std::nullopt;
  }
  return seq;
}

bool
Consumer::running() const
{
  SimTime now = m_scheduler.now();
  return now >= m_options.start && now < m_options.stop;
}

void
Consumer::start()
{
  if (m_options.rate > 0) {
    scheduleTick(0);
  }
  else if (m_options.start < m_options.stop) {
    m_scheduler.schedule(m_options.start, [this] { pump(); });
  }
}

void
Consumer::scheduleTick(uint64_t index)
{
  SimTime at = m_options.start + fromSeconds(static_cast<double>(index) / m_options.rate);
  if (at >= m_options.stop) {
    return;
  }
  m_scheduler.schedule(at, [this, index] {
    tick();
    scheduleTick(index + 1);
  });
}

void
Consumer::tick()
{
  m_queue.insert(m_nextSeq++);
  pump();
}

void
Consumer::pump()
{
  if (m_discovery) {
    return;
  }
  auto window = static_cast<size_t>(std::max(1.0, std::floor(m_cwnd)));
  while (m_pending.size() < window) {
    if (!m_queue.empty()) {
      uint64_t seq = *m_queue.begin();
      m_queue.erase(m_queue.begin());
      sendInterest(seq);
    }
    else if (m_options.rate <= 0 && running()) {
      sendInterest(m_nextSeq++);
    }
    else {
      break;
    }
  }
}

void
Consumer::sendInterest(uint64_t seq)
{
  Pending p;
  p.nonce = m_nonces();
  p.sent = m_scheduler.now();
  p.timer = m_scheduler.scheduleAfter(m_options.retxTimeout, [this, seq] { onTimeout(seq); });
  m_pending[seq] = p;
  m_highestSent = std::max(m_highestSent, seq);
  ++m_stats.interestsSent;
  m_send(Interest{nameOf(seq), p.nonce, false, 0});
}

void
Consumer::issueDiscovery(uint64_t seq)
{
  Discovery d;
  d.seq = seq;
  d.nonce = m_nonces();
  d.timer = m_scheduler.scheduleAfter(m_options.discoveryTimer, [this] { onDiscoveryTimeout(); });
  m_discovery = d;
  m_stats.discoveryTimes.push_back(m_scheduler.now());
  m_send(Interest{nameOf(seq), d.nonce, true, 0});
}

void
Consumer::onDiscoveryTimeout()
{
  if (!m_discovery) {
    return;
  }
  ++m_stats.discoveryTimerExpirations;
  uint64_t seq = m_discovery->seq;
  m_discovery.reset();
  issueDiscovery(seq);
}

void
Consumer::increaseWindow()
{
  if (m_cwnd < m_ssthresh) {
    m_cwnd += 1.0;
  }
  else {
    m_cwnd += 1.0 / m_cwnd;
  }
}

void
Consumer::lossEvent(uint64_t seq)
{
  // One decrease per window of data, as in fast recovery.
  if (m_recoveryPoint && seq <= *m_recoveryPoint) {
    return;
  }
  m_ssthresh = std::max(m_cwnd / 2.0, 1.0);
  m_cwnd = 1.0;
  m_recoveryPoint = m_highestSent;
  ++m_stats.windowDecreases;
}

void
Consumer::requeue(uint64_t seq)
{
  m_queue.insert(seq);
}

void
Consumer::onData(const Data& data)
{
  auto seq = seqOf(data.name);
  if (!seq) {
    return;
  }

  if (data.isDiscovery) {
    if (!m_discovery || m_discovery->seq != *seq) {
      return;
    }
    m_scheduler.cancel(m_discovery->timer);
    m_discovery.reset();
    m_altAttempts.erase(*seq);
    m_stats.deliveries.push_back({m_scheduler.now(), *seq, data.payloadSize});
    pump();
    return;
  }

  auto it = m_pending.find(*seq);
  if (it == m_pending.end()) {
    return;
  }
  m_scheduler.cancel(it->second.timer);
  m_pending.erase(it);
  m_altAttempts.erase(*seq);
  increaseWindow();
  m_stats.deliveries.push_back({m_scheduler.now(), *seq, data.payloadSize});
  pump();
}

void
Consumer::onNack(const Nack& nack)
{
  auto seq = seqOf(nack.name);
  if (!seq) {
    return;
  }
  auto it = m_pending.find(*seq);
  if (it == m_pending.end() || it->second.nonce != nack.nonce) {
    return;
  }
  m_scheduler.cancel(it->second.timer);
  m_pending.erase(it);

  double before = m_cwnd;
  switch (nack.reason) {
    case NackReason::NoRoute:
      ++m_stats.noRouteNacks;
      lossEvent(*seq);
      m_altAttempts.erase(*seq);
      if (m_discovery) {
        requeue(*seq);
      }
      else {
        issueDiscovery(*seq);
      }
      break;

    case NackReason::AltRoute: {
      ++m_stats.altRouteNacks;
      unsigned& attempts = m_altAttempts[*seq];
      ++attempts;
      if (m_discovery) {
        requeue(*seq);
      }
      else if (attempts >= m_options.maxAltAttempts) {
        m_altAttempts.erase(*seq);
        issueDiscovery(*seq);
      }
      else {
        ++m_stats.retransmissions;
        sendInterest(*seq);
      }
      if (m_cwnd < before) {
        ++m_stats.windowDecreasesOnAltRoute;
      }
      break;
    }

    default:
      requeue(*seq);
      break;
  }
  pump();
}

void
Consumer::onTimeout(uint64_t seq)
{
  auto it = m_pending.find(seq);
  if (it == m_pending.end()) {
    return;
  }
  m_pending.erase(it);
  ++m_stats.timeouts;
  lossEvent(seq);
  if (m_discovery) {
    requeue(seq);
  }
  else {
    ++m_stats.retransmissions;
    sendInterest(seq);
  }
  pump();
}

} // namespace samba::app
