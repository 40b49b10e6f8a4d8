#ifndef SAMBA_FACE_HPP
#define SAMBA_FACE_HPP

#include <cstdint>
#include <limits>

namespace samba {

/// Identifies a face within a single forwarder. Ids are dense and start at 0.
using FaceId = uint32_t;

inline constexpr FaceId INVALID_FACE = std::numeric_limits<FaceId>::max();

/// Local faces lead to applications on the same node; network faces lead to other routers.
enum class FaceScope : uint8_t {
  Network,
  Local,
};

} // namespace samba

#endif // SAMBA_FACE_HPP
