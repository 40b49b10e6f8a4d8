#include "samba/forwarder.hpp"

#include <algorithm>
#include <stdexcept>

namespace samba::fw {

std::string_view
toString(Strategy s)
{
  return s == Strategy::Samba ? "samba" : "self-learning";
}

Strategy
parseStrategy(std::string_view text)
{
  if (text == "samba") {
    return Strategy::Samba;
  }
  if (text == "self-learning" || text == "selflearning") {
    return Strategy::SelfLearning;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
}

std::string_view
toString(DiscoveryAggregation a)
{
  return a == DiscoveryAggregation::AllDuplicates ? "all" : "shortest";
}

DiscoveryAggregation
parseDiscoveryAggregation(std::string_view text)
{
  if (text == "all") {
    return DiscoveryAggregation::AllDuplicates;
  }
  if (text == "shortest") {
    return DiscoveryAggregation::ShortestPath;
  }
  throw std::invalid_argument("unknown discovery aggregation '" + std::string(text) + "'");
}

Forwarder::Forwarder(std::string nodeName, ForwarderOptions options, sim::Scheduler& scheduler,
                     SendFn send)
  : m_nodeName(std::move(nodeName))
  , m_options(options)
  , m_scheduler(scheduler)
  , m_send(std::move(send))
  , m_fib(TokenMode::Component)
  , m_pit(options.deadNonceCapacity)
{
}

FaceId
Forwarder::addFace(FaceInfo info)
{
  m_faces.push_back(std::move(info));
  return static_cast<FaceId>(m_faces.size() - 1);
}

FaceId
Forwarder::addNetworkFace()
{
  return addFace({FaceKind::Network, true, {}});
}

FaceId
Forwarder::addConsumerFace()
{
  return addFace({FaceKind::Consumer, true, {}});
}

FaceId
Forwarder::addProducerFace(std::vector<Name> served)
{
  return addFace({FaceKind::Producer, true, std::move(served)});
}

bool
Forwarder::serves(FaceId face, const Name& name) const
{
  const auto& served = m_faces[face].served;
  return std::any_of(served.begin(), served.end(), [&] (const Name& p) { return p.isPrefixOf(name); });
}

void
Forwarder::receive(FaceId face, const Packet& packet)
{
  if (face >= m_faces.size()) {
    throw std::out_of_range("packet on unknown face " + std::to_string(face));
  }
  if (const auto* interest = std::get_if<Interest>(&packet)) {
    interest->isDiscovery ? onDiscoveryInterest(*interest, face) : onInterest(*interest, face);
  }
  else if (const auto* data = std::get_if<Data>(&packet)) {
    data->isDiscovery ? onDiscoveryData(*data, face) : onData(*data, face);
  }
  else {
    onNack(std::get<Nack>(packet), face);
  }
}

fib::LookupResult
Forwarder::lookup(const Name& prefix, FaceId inFace) const
{
  if (m_options.strategy == Strategy::SelfLearning) {
    auto lpm = m_fib.lpm(prefix);
    if (!lpm.isLeaf()) {
      return fib::LookupResult::noRoute();
    }
    for (const auto& nh : m_fib.faces(lpm.node)) {
      if (nh.face != inFace) {
        return nh.isLocal() ? fib::LookupResult::deliver(nh.face) : fib::LookupResult::forward(nh.face);
      }
    }
    return fib::LookupResult::noRoute();
  }

  auto res = m_fib.resolve(prefix);
  if (!res) {
    return fib::LookupResult::noRoute();
  }
  for (const auto& nh : m_fib.faces(res->node)) {
    if (nh.face == inFace) {
      continue;
    }
    if (!nh.isLocal()) {
      return fib::LookupResult::forward(nh.face);
    }
    // An approximate match may only end at a producer that actually serves the name.
    if (!res->viaDfs || serves(nh.face, prefix)) {
      return fib::LookupResult::deliver(nh.face);
    }
    return fib::LookupResult::noRoute();
  }
  return fib::LookupResult::noRoute();
}

void
Forwarder::onInterest(const Interest& interest, FaceId inFace)
{
  SimTime now = m_scheduler.now();
  auto admit = m_pit.admitInterest(interest.name, interest.nonce, inFace, false, now,
                                   m_options.interestLifetime);
  switch (admit) {
    case pit::AdmitResult::LoopDrop:
      ++m_counters.loopDrops;
      trace("drop-loop", interest.name, interest.nonce, inFace);
      return;
    case pit::AdmitResult::DuplicateDrop:
      ++m_counters.duplicateDrops;
      trace("drop-duplicate", interest.name, interest.nonce, inFace);
      return;
    case pit::AdmitResult::AppendedFace:
      ++m_counters.aggregated;
      trace("aggregate", interest.name, interest.nonce, inFace);
      return;
    case pit::AdmitResult::New:
      break;
  }
  scheduleExpiry(interest.name);

  auto decision = lookup(routingPrefix(interest.name), inFace);
  if (decision.kind == fib::LookupResult::Kind::NoRoute) {
    trace("no-route", interest.name, interest.nonce, inFace);
    sendNack(inFace, interest.name, interest.nonce, NackReason::NoRoute);
    m_pit.erase(interest.name);
    return;
  }

  FaceId out = decision.face;
  m_pit.markSent(interest.name, std::span<const FaceId>(&out, 1));
  Interest copy = interest;
  ++copy.hopCount;
  m_send(out, std::move(copy));
}

void
Forwarder::onDiscoveryInterest(const Interest& interest, FaceId inFace)
{
  SimTime now = m_scheduler.now();
  const pit::Entry* existing = m_pit.find(interest.name);
  bool live = existing != nullptr && existing->expiry() > now;
  bool duplicate = live && existing->isDiscovery && existing->nonce == interest.nonce;

  if (duplicate) {
    // The baseline keeps only the first copy. Otherwise a duplicate marks a return path.
    if (m_options.strategy == Strategy::SelfLearning ||
        (m_options.aggregation == DiscoveryAggregation::ShortestPath &&
         interest.hopCount > existing->hopCount)) {
      ++m_counters.duplicateDrops;
      trace("drop-duplicate", interest.name, interest.nonce, inFace);
      return;
    }
  }

  auto admit = m_pit.admitInterest(interest.name, interest.nonce, inFace, true, now,
                                   m_options.interestLifetime);
  if (admit == pit::AdmitResult::LoopDrop) {
    ++m_counters.loopDrops;
    trace("drop-loop", interest.name, interest.nonce, inFace);
    return;
  }
  if (admit == pit::AdmitResult::AppendedFace) {
    ++m_counters.aggregated;
    trace("aggregate", interest.name, interest.nonce, inFace);
    return;
  }

  m_pit.find(interest.name)->hopCount = interest.hopCount;
  scheduleExpiry(interest.name);
  broadcast(interest, inFace);
}

void
Forwarder::broadcast(const Interest& interest, FaceId inFace)
{
  std::vector<FaceId> out;
  for (FaceId f = 0; f < m_faces.size(); ++f) {
    const FaceInfo& info = m_faces[f];
    if (f == inFace || !info.up || info.kind == FaceKind::Consumer) {
      continue;
    }
    if (info.kind == FaceKind::Producer && !serves(f, interest.name)) {
      continue;
    }
    out.push_back(f);
  }

  trace("broadcast", interest.name, interest.nonce, inFace, std::to_string(out.size()));
  m_pit.markSent(interest.name, out);
  Interest copy = interest;
  ++copy.hopCount;
  for (FaceId f : out) {
    m_send(f, copy);
  }
}

void
Forwarder::onData(const Data& data, FaceId inFace)
{
  auto disposition = m_pit.consumeOnData(data.name, m_scheduler.now());
  auto* first = std::get_if<pit::FirstData>(&disposition);
  if (first == nullptr) {
    trace("drop-unsolicited", data.name, 0, inFace);
    return;
  }
  m_pit.erase(data.name);
  for (FaceId f : first->inFaces) {
    if (f != inFace && m_faces[f].up) {
      m_send(f, data);
    }
  }
}

void
Forwarder::onDiscoveryData(const Data& data, FaceId inFace)
{
  SimTime now = m_scheduler.now();
  auto disposition = m_pit.consumeOnData(data.name, now);
  FaceScope scope = scopeOf(inFace);

  if (auto* first = std::get_if<pit::FirstData>(&disposition)) {
    if (m_options.strategy == Strategy::SelfLearning) {
      m_fib.assign(data.announcedPrefix, inFace, scope);
      trace("fib-set", data.announcedPrefix, 0, inFace);
      m_pit.erase(data.name);
    }
    else {
      m_fib.insert(data.announcedPrefix, inFace, scope);
      trace("fib-add", data.announcedPrefix, 0, inFace);
      m_pit.clearInFaces(data.name);
      m_pit.setTmp(data.name, now + m_options.tmp);
      m_pit.clearOutFace(data.name, inFace, now);
      if (m_pit.find(data.name) != nullptr) {
        scheduleExpiry(data.name);
      }
    }
    for (FaceId f : first->inFaces) {
      if (f != inFace && m_faces[f].up) {
        m_send(f, data);
      }
    }
    return;
  }

  if (std::holds_alternative<pit::AltWindow>(disposition) &&
      m_options.strategy == Strategy::Samba) {
    m_fib.insert(data.announcedPrefix, inFace, scope);
    trace("fib-add", data.announcedPrefix, 0, inFace);
    m_pit.clearOutFace(data.name, inFace, now);
    return;
  }

  ++m_counters.unsolicitedNacks;
  sendNack(inFace, data.name, 0, NackReason::UnsolicitedData);
}

void
Forwarder::onNack(const Nack& nack, FaceId inFace)
{
  const pit::Entry* entry = m_pit.find(nack.name);
  if (entry == nullptr || entry->nonce != nack.nonce || !entry->hasOutFace(inFace) ||
      entry->expiry() <= m_scheduler.now()) {
    trace("drop-nack", nack.name, nack.nonce, inFace, toString(nack.reason));
    return;
  }

  switch (nack.reason) {
    case NackReason::NoRoute:
      handleUpstreamNoRoute(nack.name, inFace);
      return;
    case NackReason::AltRoute: {
      std::vector<FaceId> downstream = entry->inFaces;
      Nonce nonce = entry->nonce;
      m_pit.erase(nack.name);
      for (FaceId f : downstream) {
        sendNack(f, nack.name, nonce, NackReason::AltRoute);
      }
      return;
    }
    default:
      trace("drop-nack", nack.name, nack.nonce, inFace, toString(nack.reason));
      return;
  }
}

void
Forwarder::handleUpstreamNoRoute(const Name& name, FaceId failedFace)
{
  pit::Entry* entry = m_pit.find(name);
  if (entry == nullptr) {
    return;
  }
  if (entry->isDiscovery) {
    m_pit.clearOutFace(name, failedFace, m_scheduler.now());
    return;
  }

  Name prefix = routingPrefix(name);
  auto holdsFailedFace = [&] (fib::NodeId node) {
    const auto& list = m_fib.faces(node);
    return std::any_of(list.begin(), list.end(), [&] (const fib::NextHop& nh) { return nh.face == failedFace; });
  };

  NackReason reason = NackReason::NoRoute;
  if (m_options.strategy == Strategy::Samba) {
    // An approximate match is not a route for this name. Pruning it would discard a
    // working route of some other prefix just because this interest guessed wrong.
    auto res = m_fib.resolve(prefix);
    if (res && res->viaDfs) {
      res.reset();
    }
    bool owned = res && holdsFailedFace(res->node);
    if (owned) {
      if (auto uri = m_fib.removeFaceFromLeaf(prefix, failedFace)) {
        traceUri("fib-del", *uri, failedFace);
      }
    }
    if (res && m_fib.nextAlternativeFace(prefix)) {
      reason = NackReason::AltRoute;
    }
    else if (owned && m_fib.faces(res->node).empty()) {
      if (auto uri = m_fib.removeEntry(prefix)) {
        traceUri("fib-erase", *uri, failedFace);
      }
    }
  }
  else {
    auto lpm = m_fib.lpm(prefix);
    if (lpm.isLeaf() && holdsFailedFace(lpm.node)) {
      if (auto uri = m_fib.removeFaceFromLeaf(prefix, failedFace)) {
        traceUri("fib-del", *uri, failedFace);
      }
      if (m_fib.faces(lpm.node).empty()) {
        if (auto uri = m_fib.removeEntry(prefix)) {
          traceUri("fib-erase", *uri, failedFace);
        }
      }
    }
  }

  std::vector<FaceId> downstream = entry->inFaces;
  Nonce nonce = entry->nonce;
  m_pit.erase(name);
  for (FaceId f : downstream) {
    sendNack(f, name, nonce, reason);
  }
}

void
Forwarder::faceDown(FaceId face)
{
  if (face >= m_faces.size() || !m_faces[face].up) {
    return;
  }
  m_faces[face].up = false;
  trace("face-down", Name(), 0, face);

  // Pending interests sent on the dead face are handled as if the upstream refused them.
  std::vector<Name> affected;
  for (const pit::Entry* entry : m_pit.sortedEntries()) {
    if (entry->hasOutFace(face)) {
      affected.push_back(entry->name);
    }
  }
  for (const Name& name : affected) {
    handleUpstreamNoRoute(name, face);
  }

  for (const auto& uri : m_fib.removeFace(face)) {
    traceUri("fib-del", uri, face);
  }
}

void
Forwarder::sendNack(FaceId face, const Name& name, Nonce nonce, NackReason reason)
{
  if (reason == NackReason::NoRoute) {
    ++m_counters.noRouteNacks;
  }
  else if (reason == NackReason::AltRoute) {
    ++m_counters.altRouteNacks;
  }
  if (!m_faces[face].up) {
    return;
  }
  m_send(face, Nack{name, nonce, reason});
}

void
Forwarder::scheduleExpiry(const Name& name)
{
  const pit::Entry* entry = m_pit.find(name);
  uint64_t id = entry->id;
  m_scheduler.schedule(entry->expiry(), [this, name, id] {
    if (m_pit.expireIfDue(name, id, m_scheduler.now())) {
      trace("pit-expire", name);
    }
  });
}

void
Forwarder::trace(std::string_view event, const Name& name, Nonce nonce, FaceId face,
                 std::string_view reason)
{
  if (m_tracer != nullptr) {
    m_tracer->record(m_scheduler.now(), m_nodeName, event, name.toUri(), nonce, face, reason);
  }
}

void
Forwarder::traceUri(std::string_view event, const std::string& uri, FaceId face)
{
  if (m_tracer != nullptr) {
    m_tracer->record(m_scheduler.now(), m_nodeName, event, uri, 0, face);
  }
}

} // namespace samba::fw
