#include "samba/consumer.hpp"
#include "samba/producer.hpp"

#include <gtest/gtest.h>

using namespace samba;
using namespace samba::app;

namespace {

Name
N(const char* uri)
{
  return Name::parse(uri);
}

class ConsumerHarness
{
public:
  explicit
  ConsumerHarness(ConsumerOptions opts = defaults())
    : consumer(std::move(opts), sched, [this] { return ++nonce; },
               [this] (Interest i) { sent.push_back(std::move(i)); })
  {
  }

  static ConsumerOptions
  defaults()
  {
    ConsumerOptions o;
    o.prefix = N("/p");
    o.rate = 8;
    return o;
  }

  void
  advanceTo(SimTime t)
  {
    sched.runUntil(t);
  }

  /// Answer the most recent interest for \p seq with data.
  void
  answer(const Interest& i)
  {
    consumer.onData(Data{i.name, i.isDiscovery ? N("/p") : Name(), i.isDiscovery, 100});
  }

  Nack
  nackFor(const Interest& i, NackReason reason) const
  {
    return Nack{i.name, i.nonce, reason};
  }

  sim::Scheduler sched;
  Nonce nonce = 0;
  std::vector<Interest> sent;
  Consumer consumer;
};

} // namespace

TEST(Consumer, SendsAtConfiguredRate)
{
  ConsumerHarness h;
  h.consumer.start();
  // Keep the window open by answering everything immediately.
  h.sched.setPostEventHook([&] {
    while (h.consumer.inFlight() > 0 && !h.sent.empty()) {
      const Interest last = h.sent.back();
      h.answer(last);
      if (h.consumer.inFlight() > 0) {
        break;
      }
    }
  });
  h.advanceTo(SimTime(999ms));
  EXPECT_EQ(h.sent.size(), 8);
  for (size_t i = 0; i < h.sent.size(); ++i) {
    EXPECT_EQ(h.sent[i].name, N("/p").append(std::to_string(i)));
    EXPECT_FALSE(h.sent[i].isDiscovery);
  }
}

TEST(Consumer, NoRouteStartsOneDiscoveryAndQueues)
{
  ConsumerHarness h;
  h.consumer.start();
  h.advanceTo(SimTime(0));
  ASSERT_EQ(h.sent.size(), 1);
  h.consumer.onNack(h.nackFor(h.sent[0], NackReason::NoRoute));
  ASSERT_EQ(h.sent.size(), 2);
  EXPECT_TRUE(h.sent[1].isDiscovery);
  EXPECT_EQ(h.sent[1].name, N("/p/0"));
  EXPECT_TRUE(h.consumer.discoveryInFlight());

  h.advanceTo(SimTime(500ms));
  EXPECT_EQ(h.sent.size(), 2);
  EXPECT_EQ(h.consumer.queueSize(), 4); // seqs 1..4

  // The discovery reply releases the queue in sequence order, limited by the window.
  h.answer(h.sent[1]);
  EXPECT_FALSE(h.consumer.discoveryInFlight());
  ASSERT_EQ(h.sent.size(), 3);
  EXPECT_EQ(h.sent[2].name, N("/p/1"));
  h.answer(h.sent[2]);
  ASSERT_EQ(h.sent.size(), 5);
  EXPECT_EQ(h.sent[3].name, N("/p/2"));
  EXPECT_EQ(h.sent[4].name, N("/p/3"));
  EXPECT_EQ(h.consumer.stats().deliveries.size(), 2);
}

TEST(Consumer, DiscoveryTimerReissues)
{
  ConsumerHarness h;
  h.consumer.start();
  h.advanceTo(SimTime(0));
  h.consumer.onNack(h.nackFor(h.sent[0], NackReason::NoRoute));
  ASSERT_EQ(h.sent.size(), 2);
  h.advanceTo(SimTime(1s));
  ASSERT_EQ(h.sent.size(), 3);
  EXPECT_TRUE(h.sent[2].isDiscovery);
  EXPECT_NE(h.sent[2].nonce, h.sent[1].nonce);
  EXPECT_EQ(h.consumer.stats().discoveryTimerExpirations, 1);
  // Still only one discovery outstanding at a time.
  EXPECT_EQ(h.consumer.stats().discoveryTimes.size(), 2);
}

TEST(Consumer, AltRouteRetransmitsWithoutShrinkingWindow)
{
  auto opts = ConsumerHarness::defaults();
  opts.initialCwnd = 4;
  ConsumerHarness h(opts);
  h.consumer.start();
  h.advanceTo(SimTime(0));
  ASSERT_EQ(h.sent.size(), 1);
  double cwnd = h.consumer.cwnd();

  h.consumer.onNack(h.nackFor(h.sent[0], NackReason::AltRoute));
  ASSERT_EQ(h.sent.size(), 2);
  EXPECT_EQ(h.sent[1].name, N("/p/0"));
  EXPECT_FALSE(h.sent[1].isDiscovery);
  EXPECT_NE(h.sent[1].nonce, h.sent[0].nonce);
  EXPECT_EQ(h.consumer.cwnd(), cwnd);

  h.consumer.onNack(h.nackFor(h.sent[1], NackReason::AltRoute));
  ASSERT_EQ(h.sent.size(), 3);
  EXPECT_FALSE(h.sent[2].isDiscovery);

  // Third AltRoute in a row for the same interest gives up and discovers.
  h.consumer.onNack(h.nackFor(h.sent[2], NackReason::AltRoute));
  ASSERT_EQ(h.sent.size(), 4);
  EXPECT_TRUE(h.sent[3].isDiscovery);
  EXPECT_EQ(h.consumer.cwnd(), cwnd);
  EXPECT_EQ(h.consumer.stats().windowDecreasesOnAltRoute, 0);
}

TEST(Consumer, AdditiveIncrease)
{
  auto opts = ConsumerHarness::defaults();
  opts.rate = 0;
  opts.stop = SimTime(1s);
  ConsumerHarness h(opts);
  h.consumer.start();
  h.advanceTo(SimTime(0));
  ASSERT_EQ(h.sent.size(), 1);
  h.answer(h.sent[0]);
  EXPECT_DOUBLE_EQ(h.consumer.cwnd(), 2.0);
  EXPECT_EQ(h.sent.size(), 3); // window of 2 refilled

  auto ca = ConsumerHarness::defaults();
  ca.rate = 0;
  ca.initialCwnd = 10;
  ca.initialSsthresh = 10;
  ConsumerHarness g(ca);
  g.consumer.start();
  g.advanceTo(SimTime(0));
  g.answer(g.sent[0]);
  EXPECT_DOUBLE_EQ(g.consumer.cwnd(), 10.1);
}

TEST(Consumer, TimeoutHalvesThresholdAndResetsWindow)
{
  auto opts = ConsumerHarness::defaults();
  opts.rate = 0;
  opts.initialCwnd = 8;
  ConsumerHarness h(opts);
  h.consumer.start();
  h.advanceTo(SimTime(0));
  EXPECT_EQ(h.sent.size(), 8);
  h.advanceTo(SimTime(2s));
  EXPECT_DOUBLE_EQ(h.consumer.ssthresh(), 4.0);
  EXPECT_DOUBLE_EQ(h.consumer.cwnd(), 1.0);
  EXPECT_EQ(h.consumer.stats().windowDecreases, 1);
  EXPECT_GE(h.consumer.stats().retransmissions, 1);

  auto one = ConsumerHarness::defaults();
  one.rate = 0;
  ConsumerHarness g(one);
  g.consumer.start();
  g.advanceTo(SimTime(2s));
  EXPECT_DOUBLE_EQ(g.consumer.ssthresh(), 1.0);
  EXPECT_DOUBLE_EQ(g.consumer.cwnd(), 1.0);
}

TEST(Consumer, IgnoresForeignAndDuplicateData)
{
  ConsumerHarness h;
  h.consumer.start();
  h.advanceTo(SimTime(0));
  h.consumer.onData(Data{N("/q/0"), {}, false, 1});
  h.consumer.onData(Data{N("/p/77"), {}, false, 1});
  EXPECT_TRUE(h.consumer.stats().deliveries.empty());
  h.answer(h.sent[0]);
  h.answer(h.sent[0]);
  EXPECT_EQ(h.consumer.stats().deliveries.size(), 1);
}

TEST(Consumer, StaleNackIsIgnored)
{
  ConsumerHarness h;
  h.consumer.start();
  h.advanceTo(SimTime(0));
  Nack stale{h.sent[0].name, h.sent[0].nonce + 100, NackReason::NoRoute};
  h.consumer.onNack(stale);
  EXPECT_FALSE(h.consumer.discoveryInFlight());
  EXPECT_EQ(h.consumer.inFlight(), 1);
}

TEST(Producer, ServesOnlyItsPrefixes)
{
  Producer p({N("/google")}, 512);
  auto d = p.onInterest(Interest{N("/google/mail/7"), 1, false, 0});
  ASSERT_TRUE(d);
  EXPECT_EQ(d->name, N("/google/mail/7"));
  EXPECT_EQ(d->payloadSize, 512);
  EXPECT_FALSE(d->isDiscovery);
  EXPECT_FALSE(p.onInterest(Interest{N("/yahoo/1"), 1, false, 0}));
}

TEST(Producer, DiscoveryReplyAnnouncesNameWithoutSequence)
{
  Producer p({N("/google")});
  auto d = p.onInterest(Interest{N("/google/mail/1"), 1, true, 0});
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->isDiscovery);
  EXPECT_EQ(d->announcedPrefix, N("/google/mail"));
}
