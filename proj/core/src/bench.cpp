#include "samba/bench.hpp"
#include "samba/fib.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace samba::bench {

Name
randomPrefix(std::mt19937_64& rng, size_t maxLength)
{
  std::uniform_int_distribution<size_t> lengthDist(1, std::max<size_t>(1, maxLength));
  std::uniform_int_distribution<int> letter('a', 'z');
  std::uniform_int_distribution<size_t> componentDist(1, 8);

  size_t remaining = lengthDist(rng);
  std::vector<std::string> components;
  while (remaining > 0) {
    size_t len = std::min(componentDist(rng), remaining);
    remaining -= len;
    // A lone character cannot hold a separator and a component, so it joins this one.
    if (remaining == 1) {
      ++len;
      remaining = 0;
    }
    std::string c;
    for (size_t i = 0; i < len; ++i) {
      c += static_cast<char>(letter(rng));
    }
    components.push_back(std::move(c));
    if (remaining > 0) {
      --remaining;
    }
  }
  return Name(std::move(components));
}

namespace {

// Keeps the timed lookups observable so they are not optimised away.
volatile uint64_t g_sink = 0;

struct Moments
{
  double mean;
  double stddev;
};

Moments
moments(const std::vector<double>& v)
{
  double mean = 0;
  for (double x : v) {
    mean += x;
  }
  mean /= static_cast<double>(v.size());
  double var = 0;
  for (double x : v) {
    var += (x - mean) * (x - mean);
  }
  var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0;
  return {mean, std::sqrt(var)};
}

} // namespace

std::vector<BenchRow>
runFibBench(const BenchOptions& options, const std::function<void(const BenchRow&)>& progress)
{
  if (options.sizes.empty() || options.repetitions == 0 || options.batch == 0) {
    throw std::invalid_argument("benchmark needs sizes, repetitions and a batch size");
  }
  std::vector<size_t> sizes = options.sizes;
  if (std::any_of(sizes.begin(), sizes.end(), [] (size_t s) { return s == 0; })) {
    throw std::invalid_argument("trie sizes must be positive");
  }
  std::sort(sizes.begin(), sizes.end());

  using Clock = std::chrono::steady_clock;
  std::mt19937_64 rng(options.seed);
  fib::Trie trie(TokenMode::Character);
  std::vector<Name> stored;
  uint64_t sink = 0;
  std::vector<BenchRow> rows;

  for (size_t size : sizes) {
    stored.reserve(size);
    while (trie.leafCount() < size) {
      Name name = randomPrefix(rng, options.maxPrefixLength);
      size_t before = trie.leafCount();
      trie.insert(name, static_cast<FaceId>(before % 64));
      if (trie.leafCount() > before) {
        stored.push_back(std::move(name));
      }
    }

    std::vector<double> lookupNs;
    std::vector<double> insertNs;
    std::vector<const Name*> queries(options.batch);
    std::vector<Name> fresh;
    for (unsigned rep = 0; rep < options.repetitions; ++rep) {
      std::uniform_int_distribution<size_t> pick(0, stored.size() - 1);
      for (auto& q : queries) {
        q = &stored[pick(rng)];
      }
      auto t0 = Clock::now();
      for (const Name* q : queries) {
        sink += trie.afLookup(*q).face;
      }
      auto t1 = Clock::now();
      lookupNs.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / options.batch);

      fresh.clear();
      while (fresh.size() < options.batch) {
        Name name = randomPrefix(rng, options.maxPrefixLength);
        const fib::FaceList* existing = trie.findExact(name);
        bool duplicate = std::find(fresh.begin(), fresh.end(), name) != fresh.end();
        if ((existing == nullptr || existing->empty()) && !duplicate) {
          fresh.push_back(std::move(name));
        }
      }
      t0 = Clock::now();
      for (const Name& name : fresh) {
        trie.insert(name, 1);
      }
      t1 = Clock::now();
      insertNs.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count() / options.batch);
      for (const Name& name : fresh) {
        trie.removeEntry(name);
      }
    }

    for (auto [op, samples] : {std::pair{"lookup", &lookupNs}, std::pair{"insert", &insertNs}}) {
      Moments m = moments(*samples);
      BenchRow row{size, op, m.mean, m.stddev};
      if (progress) {
        progress(row);
      }
      rows.push_back(std::move(row));
    }
  }

  g_sink = sink;
  return rows;
}

void
writeBenchCsv(std::ostream& os, const std::vector<BenchRow>& rows)
{
  os << BENCH_HEADER << '\n';
  for (const auto& r : rows) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%zu,%s,%.3f,%.3f", r.trieSize, r.op.c_str(), r.meanNs, r.stddevNs);
    os << buf << '\n';
  }
}

} // namespace samba::bench
