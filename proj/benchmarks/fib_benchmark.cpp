#include "samba/bench.hpp"
#include "samba/fib.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <unordered_set>

namespace {

using samba::Name;
using samba::fib::Trie;

struct Fixture
{
  Trie trie{samba::TokenMode::Character};
  std::vector<Name> stored;
};

/// Tries are expensive to build at 1M entries, so each size is built once and shared.
Fixture&
fixtureFor(size_t size)
{
  static std::map<size_t, std::unique_ptr<Fixture>> cache;
  auto& slot = cache[size];
  if (!slot) {
    slot = std::make_unique<Fixture>();
    std::mt19937_64 rng(size);
    std::unordered_set<std::string> seen;
    while (slot->stored.size() < size) {
      auto name = samba::bench::randomPrefix(rng, 50);
      if (seen.insert(name.toUri()).second) {
        slot->trie.insert(name, 1);
        slot->stored.push_back(std::move(name));
      }
    }
  }
  return *slot;
}

void
BM_Lookup(benchmark::State& state)
{
  auto& fx = fixtureFor(static_cast<size_t>(state.range(0)));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<size_t> pick(0, fx.stored.size() - 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fx.trie.afLookup(fx.stored[pick(rng)]));
  }
}

void
BM_InsertRemove(benchmark::State& state)
{
  auto& fx = fixtureFor(static_cast<size_t>(state.range(0)));
  std::mt19937_64 rng(11);
  for (auto _ : state) {
    auto name = samba::bench::randomPrefix(rng, 50);
    bool fresh = !fx.trie.findExact(name);
    fx.trie.insert(name, 2);
    if (fresh) {
      fx.trie.removeEntry(name);
    }
    else {
      fx.trie.removeFaceFromLeaf(name, 2);
    }
  }
}

} // namespace

BENCHMARK(BM_Lookup)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_InsertRemove)->RangeMultiplier(10)->Range(1000, 1000000);

BENCHMARK_MAIN();
