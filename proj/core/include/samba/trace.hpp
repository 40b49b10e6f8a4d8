#ifndef SAMBA_TRACE_HPP
#define SAMBA_TRACE_HPP

#include "samba/face.hpp"
#include "samba/packet.hpp"
#include "samba/time.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace samba {

/// One line of the event trace: time,node,event,name,nonce,face,reason
struct TraceRecord
{
  SimTime time{};
  std::string node;
  std::string event;
  std::string name;
  Nonce nonce = 0;
  FaceId face = INVALID_FACE;
  std::string reason;
};

/**
 * \brief Append-only event log.
 *
 * Times are written as integer nanoseconds so that the text is exactly reproducible.
 */
class Tracer
{
public:
  static constexpr std::string_view HEADER = "time,node,event,name,nonce,face,reason\n";

  Tracer();

  void
  record(SimTime time, std::string_view node, std::string_view event, std::string_view name,
         Nonce nonce = 0, FaceId face = INVALID_FACE, std::string_view reason = {});

  const std::string&
  text() const noexcept
  {
    return m_text;
  }

  size_t
  lineCount() const noexcept
  {
    return m_lines;
  }

private:
  std::string m_text;
  size_t m_lines = 0;
};

/// \throw std::invalid_argument on a malformed line
std::vector<TraceRecord>
parseTrace(std::string_view text);

} // namespace samba

#endif // SAMBA_TRACE_HPP
