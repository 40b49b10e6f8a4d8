#ifndef SAMBA_SCHEDULER_HPP
#define SAMBA_SCHEDULER_HPP

#include "samba/time.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace samba::sim {

using EventId = uint64_t;

/**
 * \brief Discrete-event queue.
 *
 * Events fire in (time, insertion order) order, so two runs that schedule the same
 * events in the same order execute identically.
 */
class Scheduler
{
public:
  using Callback = std::function<void()>;

  class Error : public std::logic_error
  {
  public:
    using std::logic_error::logic_error;
  };

  /// \throw Error if \p at is earlier than the current time
  EventId
  schedule(SimTime at, Callback callback);

  EventId
  scheduleAfter(Duration delay, Callback callback)
  {
    return schedule(m_now + delay, std::move(callback));
  }

  /// Cancel a pending event. Unknown or already executed ids are ignored.
  void
  cancel(EventId id);

  SimTime
  now() const noexcept
  {
    return m_now;
  }

  /// Execute events until the queue is empty.
  void
  run();

  /// Execute events with time <= \p end, then advance the clock to \p end.
  void
  runUntil(SimTime end);

  size_t
  pending() const noexcept
  {
    return m_heap.size() - m_cancelledPending;
  }

  uint64_t
  executed() const noexcept
  {
    return m_executed;
  }

  /// Invoked after every executed event.
  void
  setPostEventHook(Callback hook)
  {
    m_postEvent = std::move(hook);
  }

private:
  struct Event
  {
    SimTime time;
    EventId id;
    Callback callback;
  };

  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const noexcept
    {
      return a.time != b.time ? a.time > b.time : a.id > b.id;
    }
  };

  bool
  step(SimTime end);

private:
  SimTime m_now{0};
  EventId m_nextId = 1;
  uint64_t m_executed = 0;
  std::vector<Event> m_heap;
  // Indexed by event id. An id is pending until it is popped, executed or not.
  std::vector<bool> m_popped;
  std::vector<bool> m_cancelled;
  size_t m_cancelledPending = 0;
  Callback m_postEvent;
};

} // namespace samba::sim

#endif // SAMBA_SCHEDULER_HPP
