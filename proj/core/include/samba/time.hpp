#ifndef SAMBA_TIME_HPP
#define SAMBA_TIME_HPP

#include <chrono>
#include <cstdint>
#include <string>

namespace samba {

/// Simulated time is an integer nanosecond offset from the start of a run.
using Duration = std::chrono::nanoseconds;
using SimTime = std::chrono::nanoseconds;

using namespace std::chrono_literals;

inline double
toSeconds(Duration d)
{
  return std::chrono::duration<double>(d).count();
}

inline Duration
fromSeconds(double s)
{
  return std::chrono::duration_cast<Duration>(std::chrono::duration<double>(s));
}

/// Compact text for a duration that parses back to the same value.
inline std::string
formatDuration(Duration d)
{
  auto ns = d.count();
  if (ns != 0 && ns % 1000000000 == 0) {
    return std::to_string(ns / 1000000000) + "s";
  }
  if (ns % 1000000 == 0) {
    return std::to_string(ns / 1000000) + "ms";
  }
  return std::to_string(ns) + "ns";
}

} // namespace samba

#endif // SAMBA_TIME_HPP
