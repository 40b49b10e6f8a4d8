#include "samba/producer.hpp"

#include <algorithm>

namespace samba::app {

Producer::Producer(std::vector<Name> served, uint32_t payloadSize)
  : m_served(std::move(served))
  , m_payloadSize(payloadSize)
{
}

bool
Producer::serves(const Name& name) const
{
  return std::any_of(m_served.begin(), m_served.end(), [&] (const Name& p) { return p.isPrefixOf(name); });
}

std::optional<Data>
Producer::onInterest(const Interest& interest) const
{
  if (!serves(interest.name)) {
    return std::nullopt;
  }
  Data data;
  data.name = interest.name;
  data.payloadSize = m_payloadSize;
  if (interest.isDiscovery) {
    data.isDiscovery = true;
    data.announcedPrefix = routingPrefix(interest.name);
  }
  return data;
}

} // namespace samba::app
