#include "samba/scheduler.hpp"

#include <gtest/gtest.h>

using namespace samba;
using samba::sim::Scheduler;

TEST(Scheduler, RunsInTimeThenInsertionOrder)
{
  Scheduler s;
  std::vector<int> order;
  s.schedule(SimTime(20ms), [&] { order.push_back(3); });
  s.schedule(SimTime(10ms), [&] { order.push_back(1); });
  s.schedule(SimTime(10ms), [&] { order.push_back(2); });
  s.run();
  EXPECT_EQ(order, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(s.now(), SimTime(20ms));
  EXPECT_EQ(s.executed(), 3);
}

TEST(Scheduler, RejectsThePast)
{
  Scheduler s;
  s.schedule(SimTime(10ms), [] {});
  s.run();
  EXPECT_THROW(s.schedule(SimTime(5ms), [] {}), Scheduler::Error);
  EXPECT_NO_THROW(s.schedule(SimTime(10ms), [] {}));
}

TEST(Scheduler, CancelledEventsDoNotRun)
{
  Scheduler s;
  bool ran = false;
  auto id = s.scheduleAfter(1s, [&] { ran = true; });
  EXPECT_EQ(s.pending(), 1);
  s.cancel(id);
  s.cancel(id);
  EXPECT_EQ(s.pending(), 0);
  s.run();
  EXPECT_FALSE(ran);
}

TEST(Scheduler, CancelAfterExecutionIsHarmless)
{
  Scheduler s;
  auto id = s.scheduleAfter(1s, [] {});
  s.run();
  s.cancel(id);
  EXPECT_EQ(s.pending(), 0);
}

TEST(Scheduler, RunUntilStopsAndAdvancesClock)
{
  Scheduler s;
  int count = 0;
  s.schedule(SimTime(1s), [&] { ++count; });
  s.schedule(SimTime(3s), [&] { ++count; });
  s.runUntil(SimTime(2s));
  EXPECT_EQ(count, 1);
  EXPECT_EQ(s.now(), SimTime(2s));
  EXPECT_EQ(s.pending(), 1);
}

TEST(Scheduler, EventsMayScheduleMore)
{
  Scheduler s;
  std::vector<SimTime> times;
  std::function<void()> tick = [&] {
    times.push_back(s.now());
    if (times.size() < 3) {
      s.scheduleAfter(5ms, tick);
    }
  };
  s.scheduleAfter(0ms, tick);
  s.run();
  EXPECT_EQ(times, (std::vector<SimTime>{SimTime(0ms), SimTime(5ms), SimTime(10ms)}));
}

TEST(Scheduler, PostEventHookSeesEveryEvent)
{
  Scheduler s;
  int hooks = 0;
  s.setPostEventHook([&] { ++hooks; });
  for (int i = 0; i < 5; ++i) {
    s.scheduleAfter(Duration(i), [] {});
  }
  s.run();
  EXPECT_EQ(hooks, 5);
}

TEST(Time, Formatting)
{
  EXPECT_EQ(formatDuration(2s), "2s");
  EXPECT_EQ(formatDuration(15ms), "15ms");
  EXPECT_EQ(formatDuration(Duration(7)), "7ns");
  EXPECT_DOUBLE_EQ(toSeconds(1500ms), 1.5);
  EXPECT_EQ(fromSeconds(0.25), Duration(250ms));
}
