#ifndef SAMBA_SCENARIO_HPP
#define SAMBA_SCENARIO_HPP

#include "samba/forwarder.hpp"
#include "samba/topology.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace samba::sim {

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class TopologyKind {
  Isp,
  Explicit,
};

enum class BfdMode {
  Auto, ///< enabled when the scenario schedules link failures
  On,
  Off,
};

struct NodeDecl
{
  std::string name;
  NodeKind kind;
};

struct LinkDecl
{
  std::string a;
  std::string b;
  std::optional<Duration> delay; ///< defaults to link_delay
  uint32_t parallel = 0;         ///< 0 means parallel_links
};

struct ConsumerDecl
{
  std::string node;
  Name prefix;
  SimTime start{0};
};

struct ProducerDecl
{
  std::string node;
  std::vector<Name> served;
};

struct FailureDecl
{
  std::string a;
  std::string b;
  SimTime at{};
};

/**
 * \brief Everything that defines one run.
 *
 * The text form is one "key = value" per line with '#' comments. Keys that describe
 * topology elements (node, link, consumer, producer, fail) may repeat and accumulate.
 */
struct ScenarioConfig
{
  std::string name = "scenario";
  fw::Strategy strategy = fw::Strategy::Samba;
  uint64_t seed = 1;
  Duration duration = 60s;

  TopologyKind topology = TopologyKind::Isp;
  unsigned coreRouters = 21;
  unsigned edgeRouters = 16;
  unsigned consumers = 10;
  unsigned producers = 4;
  unsigned prefixes = 0;
  unsigned parallelLinks = 1;
  Duration linkDelay = 10ms;

  double consumerRate = 8.0;
  Duration consumerStartMax = 50s;
  uint32_t payloadSize = 1024;
  Duration discoveryTimer = 1s;
  unsigned maxAltAttempts = 3;
  double initialSsthresh = 64.0;

  Duration tmp = 50ms;
  Duration interestLifetime = 2s;
  fw::DiscoveryAggregation aggregation = fw::DiscoveryAggregation::ShortestPath;

  BfdMode bfd = BfdMode::Auto;
  Duration bfdInterval = 5ms;
  unsigned bfdMultiplier = 3;

  Duration throughputBin = 1s;

  std::vector<NodeDecl> nodes;
  std::vector<LinkDecl> links;
  std::vector<ConsumerDecl> consumerApps;
  std::vector<ProducerDecl> producerApps;
  std::vector<FailureDecl> failures;

  /// Apply one key/value pair. \throw ConfigError for unknown keys or bad values
  void
  set(std::string_view key, std::string_view value);

  /// Apply a "key=value" override.
  void
  applyOverride(std::string_view assignment);

  /// \throw ConfigError when the combination of values cannot be simulated
  void
  validate() const;

  bool
  bfdEnabled() const noexcept
  {
    return bfd == BfdMode::On || (bfd == BfdMode::Auto && !failures.empty());
  }

  IspParameters
  ispParameters() const;

  static ScenarioConfig
  parse(std::istream& input, std::string name = "scenario");

  /// \throw ConfigError if the file cannot be read
  static ScenarioConfig
  load(const std::string& path);
};

/// Parse "10ms", "1.5s", "200us", "42ns". A bare number is in seconds.
Duration
parseDuration(std::string_view text);

/// The topology of \p config: generated for ISP scenarios, declared otherwise.
Topology
buildTopology(const ScenarioConfig& config);

} // namespace samba::sim

#endif // SAMBA_SCENARIO_HPP
