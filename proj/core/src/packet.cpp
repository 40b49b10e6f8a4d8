#include "samba/packet.hpp"

namespace samba {

std::string_view
toString(NackReason reason)
{
  switch (reason) {
    case NackReason::None:
      return "none";
    case NackReason::NoRoute:
      return "no-route";
    case NackReason::AltRoute:
      return "alt-route";
    case NackReason::UnsolicitedData:
      return "unsolicited-data";
  }
  return "unknown";
}

const Name&
packetName(const Packet& packet)
{
  return std::visit([] (const auto& p) -> const Name& { return p.name; }, packet);
}

Name
routingPrefix(const Name& name)
{
  return name.size() > 1 ? name.getPrefix(-1) : name;
}

} // namespace samba
