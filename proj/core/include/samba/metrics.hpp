#ifndef SAMBA_METRICS_HPP
#define SAMBA_METRICS_HPP

#include "samba/consumer.hpp"
#include "samba/fib.hpp"
#include "samba/trace.hpp"

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace samba::metrics {

enum class Scope {
  All,  ///< every router
  Core, ///< core routers only
};

std::string_view
toString(Scope scope);

struct ThroughputSeries
{
  std::string consumer;
  std::vector<uint64_t> delivered; ///< data packets per bin
  std::vector<uint64_t> bytes;     ///< payload bytes per bin
};

/// Outcome of one simulation run.
struct Report
{
  std::string scenario;
  std::string strategy;
  uint64_t seed = 0;
  unsigned consumers = 0;
  unsigned producers = 0;
  unsigned parallelLinks = 1;

  double avgFibAll = 0;
  double avgFibCore = 0;
  double appAll = 0;
  double appCore = 0;
  size_t maxFacesPerLeaf = 0;

  uint64_t discoveryInterests = 0; ///< discovery interest transmissions over all links
  uint64_t discoveryData = 0;      ///< discovery data transmissions over all links
  uint64_t interestTx = 0;
  uint64_t dataTx = 0;
  uint64_t nackTx = 0;
  uint64_t packetsSent = 0;
  uint64_t packetsDelivered = 0;
  uint64_t packetsDropped = 0; ///< sent on a dead link or lost in flight when it died
  uint64_t packetsInFlight = 0; ///< still on a link when the run ended

  uint64_t loopDrops = 0;
  uint64_t consumerDiscoveries = 0;
  uint64_t consumerTimeouts = 0;
  uint64_t altRouteNacks = 0;
  uint64_t noRouteNacks = 0;
  uint64_t windowDecreasesOnAltRoute = 0;
  uint64_t delivered = 0;
  size_t maxPitSize = 0;

  Duration bin = 1s;
  std::vector<ThroughputSeries> throughput;
  std::vector<std::vector<SimTime>> discoveryTimes; ///< per consumer
};

double
averageFibEntries(std::span<const fib::Trie* const> routers);

/**
 * \brief Mean number of paths per router and prefix.
 *
 * Averages, over every router in \p scope and every prefix present in any table of
 * \p universe, the number of next hops the router holds for that prefix. Missing
 * entries count as zero.
 */
double
averagePathsPerPrefix(std::span<const fib::Trie* const> scope, std::span<const fib::Trie* const> universe);

size_t
maxFacesPerLeaf(std::span<const fib::Trie* const> routers);

/// Baseline average FIB size divided by the Samba one. Infinite when Samba holds nothing.
double
improvementRatio(const Report& baseline, const Report& samba, Scope scope);

ThroughputSeries
binDeliveries(std::string consumer, const std::vector<app::Delivery>& deliveries, Duration bin,
              Duration duration);

struct RecoveryAnalysis
{
  double preFailureMean = 0;    ///< mean of the complete bins before the failure
  double lastPreFailureBin = 0; ///< the last complete bin before the failure
  double minPostFailureBin = 0;
  bool dipped = false;          ///< some later bin fell below the last pre-failure bin
  double recoverySeconds = 0;   ///< failure to the first bin back at the pre-failure level
  uint64_t discoveriesAfterFailure = 0;
};

RecoveryAnalysis
analyzeRecovery(const ThroughputSeries& series, Duration bin, SimTime failure,
                const std::vector<SimTime>& discoveryTimes);

/// Stable text rendering of every field, used to compare runs byte for byte.
std::string
formatReport(const Report& report);

/// Values recomputed from a saved trace.
struct TraceSummary
{
  uint64_t discoveryInterests = 0;
  uint64_t discoveryData = 0;
  std::map<std::string, uint64_t> deliveries; ///< per consumer node
  double avgFibAll = 0;
};

/// Replays transmissions, deliveries and table changes recorded in \p records.
TraceSummary
summarizeTrace(const std::vector<TraceRecord>& records, const std::vector<std::string>& routerNames);

struct RunKey
{
  uint64_t seed = 0;
  std::string strategy;
  unsigned consumers = 0;
  unsigned producers = 0;
  unsigned parallelLinks = 1;
};

inline constexpr std::string_view FIB_SIZE_HEADER = "seed,strategy,C,P,scope,avg_entries";
inline constexpr std::string_view OVERHEAD_HEADER = "seed,strategy,C,P,interest_discoveries,data_discoveries";
inline constexpr std::string_view APP_HEADER = "seed,strategy,k,scope,app";
inline constexpr std::string_view THROUGHPUT_HEADER = "seed,strategy,time_bin,consumer,delivered";
inline constexpr std::string_view CONSUMER_SERIES_HEADER = "time_bin,consumer,delivered_bytes";

RunKey
runKey(const Report& report);

void
writeFibSizeRows(std::ostream& os, const Report& report);

void
writeOverheadRow(std::ostream& os, const Report& report);

void
writeAppRows(std::ostream& os, const Report& report);

void
writeThroughputRows(std::ostream& os, const Report& report);

void
writeConsumerSeries(std::ostream& os, const Report& report);

} // namespace samba::metrics

#endif // SAMBA_METRICS_HPP
