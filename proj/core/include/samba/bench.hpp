#ifndef SAMBA_BENCH_HPP
#define SAMBA_BENCH_HPP

#include "samba/name.hpp"

#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace samba::bench {

struct BenchOptions
{
  std::vector<size_t> sizes = {1000, 10000, 100000, 1000000};
  size_t maxPrefixLength = 50; ///< characters, leading separator excluded
  unsigned repetitions = 20;
  unsigned batch = 100;        ///< operations timed together
  uint64_t seed = 1;
};

struct BenchRow
{
  size_t trieSize = 0;
  std::string op; ///< "lookup" or "insert"
  double meanNs = 0;
  double stddevNs = 0;
};

inline constexpr std::string_view BENCH_HEADER = "trie_size,op,mean_ns,stddev_ns";

/// A random lowercase name whose canonical text has 1 to \p maxLength characters after the root.
Name
randomPrefix(std::mt19937_64& rng, size_t maxLength);

/**
 * \brief Time character-mode trie operations at growing table sizes.
 *
 * One trie grows through the requested sizes. At each size every repetition times a
 * batch of approximate lookups of distinct stored prefixes and a batch of new
 * insertions, which are removed again afterwards.
 */
std::vector<BenchRow>
runFibBench(const BenchOptions& options, const std::function<void(const BenchRow&)>& progress = {});

void
writeBenchCsv(std::ostream& os, const std::vector<BenchRow>& rows);

} // namespace samba::bench

#endif // SAMBA_BENCH_HPP
