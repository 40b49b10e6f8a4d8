#include "samba/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <optional>
#include <set>

namespace samba::metrics {

std::string_view
toString(Scope scope)
{
  return scope == Scope::All ? "all" : "core";
}

double
averageFibEntries(std::span<const fib::Trie* const> routers)
{
  if (routers.empty()) {
    return 0;
  }
  double total = 0;
  for (const auto* t : routers) {
    total += static_cast<double>(t->leafCount());
  }
  return total / static_cast<double>(routers.size());
}

double
averagePathsPerPrefix(std::span<const fib::Trie* const> scope, std::span<const fib::Trie* const> universe)
{
  std::set<std::string> prefixes;
  for (const auto* t : universe) {
    t->forEachEntry([&] (fib::NodeId node, const fib::FaceList&) { prefixes.insert(t->entryUri(node)); });
  }
  if (scope.empty() || prefixes.empty()) {
    return 0;
  }

  double faces = 0;
  for (const auto* t : scope) {
    t->forEachEntry([&] (fib::NodeId, const fib::FaceList& list) { faces += static_cast<double>(list.size()); });
  }
  return faces / (static_cast<double>(scope.size()) * static_cast<double>(prefixes.size()));
}

size_t
maxFacesPerLeaf(std::span<const fib::Trie* const> routers)
{
  size_t best = 0;
  for (const auto* t : routers) {
    t->forEachEntry([&] (fib::NodeId, const fib::FaceList& list) { best = std::max(best, list.size()); });
  }
  return best;
}

double
improvementRatio(const Report& baseline, const Report& samba, Scope scope)
{
  double b = scope == Scope::All ? baseline.avgFibAll : baseline.avgFibCore;
  double s = scope == Scope::All ? samba.avgFibAll : samba.avgFibCore;
  if (s == 0) {
    return b == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return b / s;
}

ThroughputSeries
binDeliveries(std::string consumer, const std::vector<app::Delivery>& deliveries, Duration bin,
              Duration duration)
{
  auto bins = static_cast<size_t>((duration.count() + bin.count() - 1) / bin.count());
  ThroughputSeries series;
  series.consumer = std::move(consumer);
  series.delivered.assign(bins, 0);
  series.bytes.assign(bins, 0);
  for (const auto& d : deliveries) {
    auto index = static_cast<size_t>(d.time.count() / bin.count());
    if (index < bins) {
      ++series.delivered[index];
      series.bytes[index] += d.bytes;
    }
  }
  return series;
}

RecoveryAnalysis
analyzeRecovery(const ThroughputSeries& series, Duration bin, SimTime failure,
                const std::vector<SimTime>& discoveryTimes)
{
  RecoveryAnalysis r;
  r.discoveriesAfterFailure = std::count_if(discoveryTimes.begin(), discoveryTimes.end(),
                                            [failure] (SimTime t) { return t >= failure; });

  const auto& v = series.delivered;
  auto preBins = std::min(v.size(), static_cast<size_t>(failure.count() / bin.count()));
  if (preBins == 0) {
    return r;
  }
  double sum = 0;
  for (size_t i = 0; i < preBins; ++i) {
    sum += static_cast<double>(v[i]);
  }
  r.preFailureMean = sum / static_cast<double>(preBins);
  r.lastPreFailureBin = static_cast<double>(v[preBins - 1]);

  if (preBins >= v.size()) {
    return r;
  }
  r.minPostFailureBin = static_cast<double>(*std::min_element(v.begin() + preBins, v.end()));

  std::optional<size_t> dip;
  for (size_t i = preBins; i < v.size(); ++i) {
    if (static_cast<double>(v[i]) < r.lastPreFailureBin) {
      dip = i;
      break;
    }
  }
  if (!dip) {
    return r;
  }
  r.dipped = true;

  SimTime end = SimTime(bin.count() * static_cast<int64_t>(v.size()));
  r.recoverySeconds = toSeconds(end - failure);
  for (size_t i = *dip + 1; i < v.size(); ++i) {
    if (static_cast<double>(v[i]) >= r.lastPreFailureBin) {
      r.recoverySeconds = toSeconds(SimTime(bin.count() * static_cast<int64_t>(i)) - failure);
      break;
    }
  }
  return r;
}

namespace {

std::string
fixed(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

} // namespace

std::string
formatReport(const Report& r)
{
  std::string out;
  auto line = [&] (std::string_view key, const std::string& value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  };
  line("scenario", r.scenario);
  line("strategy", r.strategy);
  line("seed", std::to_string(r.seed));
  line("consumers", std::to_string(r.consumers));
  line("producers", std::to_string(r.producers));
  line("parallel_links", std::to_string(r.parallelLinks));
  line("avg_fib_all", fixed(r.avgFibAll));
  line("avg_fib_core", fixed(r.avgFibCore));
  line("app_all", fixed(r.appAll));
  line("app_core", fixed(r.appCore));
  line("max_faces_per_leaf", std::to_string(r.maxFacesPerLeaf));
  line("discovery_interests", std::to_string(r.discoveryInterests));
  line("discovery_data", std::to_string(r.discoveryData));
  line("interest_tx", std::to_string(r.interestTx));
  line("data_tx", std::to_string(r.dataTx));
  line("nack_tx", std::to_string(r.nackTx));
  line("packets_sent", std::to_string(r.packetsSent));
  line("packets_delivered", std::to_string(r.packetsDelivered));
  line("packets_dropped", std::to_string(r.packetsDropped));
  line("packets_in_flight", std::to_string(r.packetsInFlight));
  line("loop_drops", std::to_string(r.loopDrops));
  line("consumer_discoveries", std::to_string(r.consumerDiscoveries));
  line("consumer_timeouts", std::to_string(r.consumerTimeouts));
  line("alt_route_nacks", std::to_string(r.altRouteNacks));
  line("no_route_nacks", std::to_string(r.noRouteNacks));
  line("delivered", std::to_string(r.delivered));
  line("max_pit_size", std::to_string(r.maxPitSize));
  for (const auto& s : r.throughput) {
    std::string bins;
    for (size_t i = 0; i < s.delivered.size(); ++i) {
      if (i > 0) {
        bins += ' ';
      }
      bins += std::to_string(s.delivered[i]);
    }
    line("throughput." + s.consumer, bins);
  }
  return out;
}

TraceSummary
summarizeTrace(const std::vector<TraceRecord>& records, const std::vector<std::string>& routerNames)
{
  TraceSummary summary;
  std::map<std::string, std::map<std::string, std::vector<FaceId>>> tables;

  for (const auto& r : records) {
    const std::string& e = r.event;
    if (e == "tx-disc-interest") {
      ++summary.discoveryInterests;
    }
    else if (e == "tx-disc-data") {
      ++summary.discoveryData;
    }
    else if (e == "app-data") {
      ++summary.deliveries[r.node];
    }
    else if (e == "fib-add") {
      auto& list = tables[r.node][r.name];
      if (std::find(list.begin(), list.end(), r.face) == list.end()) {
        list.push_back(r.face);
      }
    }
    else if (e == "fib-set") {
      tables[r.node][r.name] = {r.face};
    }
    else if (e == "fib-del") {
      auto& table = tables[r.node];
      if (auto it = table.find(r.name); it != table.end()) {
        std::erase(it->second, r.face);
      }
    }
    else if (e == "fib-erase") {
      tables[r.node].erase(r.name);
    }
  }

  if (!routerNames.empty()) {
    double total = 0;
    for (const auto& router : routerNames) {
      for (const auto& [uri, faces] : tables[router]) {
        if (!faces.empty()) {
          total += 1;
        }
      }
    }
    summary.avgFibAll = total / static_cast<double>(routerNames.size());
  }
  return summary;
}

RunKey
runKey(const Report& report)
{
  return {report.seed, report.strategy, report.consumers, report.producers, report.parallelLinks};
}

void
writeFibSizeRows(std::ostream& os, const Report& r)
{
  os << r.seed << ',' << r.strategy << ',' << r.consumers << ',' << r.producers << ",all,"
     << fixed(r.avgFibAll) << '\n';
  os << r.seed << ',' << r.strategy << ',' << r.consumers << ',' << r.producers << ",core,"
     << fixed(r.avgFibCore) << '\n';
}

void
writeOverheadRow(std::ostream& os, const Report& r)
{
  os << r.seed << ',' << r.strategy << ',' << r.consumers << ',' << r.producers << ','
     << r.discoveryInterests << ',' << r.discoveryData << '\n';
}

void
writeAppRows(std::ostream& os, const Report& r)
{
  os << r.seed << ',' << r.strategy << ',' << r.parallelLinks << ",all," << fixed(r.appAll) << '\n';
  os << r.seed << ',' << r.strategy << ',' << r.parallelLinks << ",core," << fixed(r.appCore) << '\n';
}

void
writeThroughputRows(std::ostream& os, const Report& r)
{
  for (const auto& s : r.throughput) {
    for (size_t i = 0; i < s.delivered.size(); ++i) {
      os << r.seed << ',' << r.strategy << ',' << i << ',' << s.consumer << ',' << s.delivered[i] << '\n';
    }
  }
}

void
writeConsumerSeries(std::ostream& os, const Report& r)
{
  for (const auto& s : r.throughput) {
    for (size_t i = 0; i < s.bytes.size(); ++i) {
      os << i << ',' << s.consumer << ',' << s.bytes[i] << '\n';
    }
  }
}

} // namespace samba::metrics
