#ifndef SAMBA_PRODUCER_HPP
#define SAMBA_PRODUCER_HPP

#include "samba/packet.hpp"

#include <optional>
#include <vector>

namespace samba::app {

/// Answers interests under the prefixes it serves.
class Producer
{
public:
  explicit
  Producer(std::vector<Name> served, uint32_t payloadSize = 1024);

  bool
  serves(const Name& name) const;

  /// The reply, or nullopt when the name is not served.
  std::optional<Data>
  onInterest(const Interest& interest) const;

  const std::vector<Name>&
  served() const noexcept
  {
    return m_served;
  }

private:
  std::vector<Name> m_served;
  uint32_t m_payloadSize;
};

} // namespace samba::app

#endif // SAMBA_PRODUCER_HPP
