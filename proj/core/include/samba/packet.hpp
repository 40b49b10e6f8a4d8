#ifndef SAMBA_PACKET_HPP
#define SAMBA_PACKET_HPP

#include "samba/name.hpp"

#include <cstdint>
#include <string_view>
#include <variant>

namespace samba {

using Nonce = uint64_t;

struct Interest
{
  Name name;
  Nonce nonce = 0;
  bool isDiscovery = false;
  uint32_t hopCount = 0; ///< router hops travelled so far
};

struct Data
{
  Name name;
  Name announcedPrefix; ///< for discovery data, the prefix learnt from it
  bool isDiscovery = false;
  uint32_t payloadSize = 0;
};

enum class NackReason : uint8_t {
  None,
  NoRoute,
  AltRoute,
  UnsolicitedData,
};

struct Nack
{
  Name name;
  Nonce nonce = 0;
  NackReason reason = NackReason::NoRoute;
};

using Packet = std::variant<Interest, Data, Nack>;

std::string_view
toString(NackReason reason);

const Name&
packetName(const Packet& packet);

/// The routable prefix of a content name: everything except the trailing sequence number.
Name
routingPrefix(const Name& name);

} // namespace samba

#endif // SAMBA_PACKET_HPP
