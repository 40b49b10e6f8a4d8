#include "samba/scheduler.hpp"

#include <algorithm>
#include <string>

namespace samba::sim {

EventId
Scheduler::schedule(SimTime at, Callback callback)
{
  if (at < m_now) {
    throw Error("cannot schedule an event in the past (" + std::to_string(at.count()) +
                "ns < " + std::to_string(m_now.count()) + "ns)");
  }
  EventId id = m_nextId++;
  m_heap.push_back(Event{at, id, std::move(callback)});
  std::push_heap(m_heap.begin(), m_heap.end(), Later{});
  m_popped.push_back(false);
  m_cancelled.push_back(false);
  return id;
}

void
Scheduler::cancel(EventId id)
{
  if (id == 0 || id >= m_nextId || m_popped[id - 1] || m_cancelled[id - 1]) {
    return;
  }
  m_cancelled[id - 1] = true;
  ++m_cancelledPending;
}

bool
Scheduler::step(SimTime end)
{
  while (!m_heap.empty()) {
    if (m_heap.front().time > end) {
      return false;
    }
    std::pop_heap(m_heap.begin(), m_heap.end(), Later{});
    Event ev = std::move(m_heap.back());
    m_heap.pop_back();
    m_popped[ev.id - 1] = true;
    if (m_cancelled[ev.id - 1]) {
      --m_cancelledPending;
      continue;
    }
    m_now = ev.time;
    ++m_executed;
    ev.callback();
    if (m_postEvent) {
      m_postEvent();
    }
    return true;
  }
  return false;
}

void
Scheduler::run()
{
  while (step(SimTime::max())) {
  }
}

void
Scheduler::runUntil(SimTime end)
{
  while (step(end)) {
  }
  if (end > m_now) {
    m_now = end;
  }
}

} // namespace samba::sim
