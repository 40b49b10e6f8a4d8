#include "samba/bench.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace samba;
using namespace samba::bench;

TEST(Bench, RandomPrefixesRespectTheLengthBound)
{
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    auto uri = randomPrefix(rng, 50).toUri();
    EXPECT_GE(uri.size(), 2);
    EXPECT_LE(uri.size(), 51);
    EXPECT_EQ(uri.front(), '/');
  }
}

TEST(Bench, OneLookupAndOneInsertRowPerSize)
{
  BenchOptions opts;
  opts.sizes = {50, 500};
  opts.repetitions = 3;
  opts.batch = 10;
  size_t progressCalls = 0;
  auto rows = runFibBench(opts, [&] (const BenchRow&) { ++progressCalls; });
  ASSERT_EQ(rows.size(), 4);
  EXPECT_EQ(progressCalls, 4);
  EXPECT_EQ(rows[0].trieSize, 50);
  EXPECT_EQ(rows[3].trieSize, 500);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.op == "lookup" || r.op == "insert");
    EXPECT_GT(r.meanNs, 0);
    EXPECT_GE(r.stddevNs, 0);
  }

  std::ostringstream csv;
  writeBenchCsv(csv, rows);
  std::string text = csv.str();
  EXPECT_EQ(text.substr(0, BENCH_HEADER.size()), BENCH_HEADER);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST(Bench, RejectsEmptyOrZeroSizes)
{
  BenchOptions none;
  none.sizes = {};
  EXPECT_THROW(runFibBench(none), std::invalid_argument);
  BenchOptions zero;
  zero.sizes = {0};
  EXPECT_THROW(runFibBench(zero), std::invalid_argument);
  BenchOptions noReps;
  noReps.sizes = {10};
  noReps.repetitions = 0;
  EXPECT_THROW(runFibBench(noReps), std::invalid_argument);
}
