#include "samba/scenario.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace samba::sim {

namespace {

std::string_view
trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string>
words(std::string_view s)
{
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string w;
  while (is >> w) {
    out.push_back(w);
  }
  return out;
}

template<typename T>
T
parseNumber(std::string_view key, std::string_view text)
{
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

Name
parseNameValue(std::string_view key, std::string_view text)
{
  try {
    return Name::parse(text);
  }
  catch (const Name::Error& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

void
expectWords(std::string_view key, const std::vector<std::string>& w, size_t min, size_t max)
{
  if (w.size() < min || w.size() > max) {
    throw ConfigError("wrong number of fields for " + std::string(key));
  }
}

} // namespace

Duration
parseDuration(std::string_view text)
{
  text = trim(text);
  size_t split = 0;
  while (split < text.size() &&
         (std::isdigit(static_cast<unsigned char>(text[split])) || text[split] == '.' || text[split] == '-')) {
    ++split;
  }
  std::string_view number = text.substr(0, split);
  std::string_view unit = text.substr(split);

  double scale;
  if (unit.empty() || unit == "s") {
    scale = 1e9;
  }
  else if (unit == "ms") {
    scale = 1e6;
  }
  else if (unit == "us") {
    scale = 1e3;
  }
  else if (unit == "ns") {
    scale = 1;
  }
  else {
    throw ConfigError("unknown time unit in '" + std::string(text) + "'");
  }

  if (unit == "ns" && number.find('.') == std::string_view::npos) {
    return Duration(parseNumber<int64_t>("duration", number));
  }
  double value = parseNumber<double>("duration", number);
  return Duration(static_cast<int64_t>(value * scale + (value >= 0 ? 0.5 : -0.5)));
}

void
ScenarioConfig::set(std::string_view key, std::string_view rawValue)
{
  std::string_view value = trim(rawValue);
  auto uns = [&] { return parseNumber<unsigned>(key, value); };

  if (key == "name") {
    name = value;
  }
  else if (key == "strategy") {
    try {
      strategy = fw::parseStrategy(value);
    }
    catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  else if (key == "seed") {
    seed = parseNumber<uint64_t>(key, value);
  }
  else if (key == "duration") {
    duration = parseDuration(value);
  }
  else if (key == "topology") {
    if (value == "isp") {
      topology = TopologyKind::Isp;
    }
    else if (value == "explicit") {
      topology = TopologyKind::Explicit;
    }
    else {
      throw ConfigError("topology must be isp or explicit");
    }
  }
  else if (key == "core_routers") {
    coreRouters = uns();
  }
  else if (key == "edge_routers") {
    edgeRouters = uns();
  }
  else if (key == "consumers") {
    consumers = uns();
  }
  else if (key == "producers") {
    producers = uns();
  }
  else if (key == "prefixes") {
    prefixes = uns();
  }
  else if (key == "parallel_links") {
    parallelLinks = uns();
  }
  else if (key == "link_delay") {
    linkDelay = parseDuration(value);
  }
  else if (key == "consumer_rate") {
    consumerRate = parseNumber<double>(key, value);
  }
  else if (key == "consumer_start_max") {
    consumerStartMax = parseDuration(value);
  }
  else if (key == "payload_size") {
    payloadSize = parseNumber<uint32_t>(key, value);
  }
  else if (key == "discovery_timer") {
    discoveryTimer = parseDuration(value);
  }
  else if (key == "max_alt_attempts") {
    maxAltAttempts = uns();
  }
  else if (key == "initial_ssthresh") {
    initialSsthresh = parseNumber<double>(key, value);
  }
  else if (key == "tmp") {
    tmp = parseDuration(value);
  }
  else if (key == "interest_lifetime") {
    interestLifetime = parseDuration(value);
  }
  else if (key == "discovery_aggregation") {
    try {
      aggregation = fw::parseDiscoveryAggregation(value);
    }
    catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  else if (key == "bfd") {
    if (value == "auto") {
      bfd = BfdMode::Auto;
    }
    else if (value == "on") {
      bfd = BfdMode::On;
    }
    else if (value == "off") {
      bfd = BfdMode::Off;
    }
    else {
      throw ConfigError("bfd must be auto, on or off");
    }
  }
  else if (key == "bfd_interval") {
    bfdInterval = parseDuration(value);
  }
  else if (key == "bfd_multiplier") {
    bfdMultiplier = uns();
  }
  else if (key == "throughput_bin") {
    throughputBin = parseDuration(value);
  }
  else if (key == "node") {
    auto w = words(value);
    expectWords(key, w, 2, 2);
    try {
      nodes.push_back({w[0], parseNodeKind(w[1])});
    }
    catch (const Topology::Error& e) {
      throw ConfigError(e.what());
    }
  }
  else if (key == "link") {
    auto w = words(value);
    expectWords(key, w, 2, 4);
    LinkDecl link{w[0], w[1], std::nullopt, 0};
    if (w.size() >= 3) {
      link.delay = parseDuration(w[2]);
    }
    if (w.size() == 4) {
      link.parallel = parseNumber<uint32_t>(key, w[3]);
    }
    links.push_back(std::move(link));
  }
  else if (key == "consumer") {
    auto w = words(value);
    expectWords(key, w, 2, 3);
    ConsumerDecl c{w[0], parseNameValue(key, w[1]), SimTime{0}};
    if (w.size() == 3) {
      c.start = parseDuration(w[2]);
    }
    consumerApps.push_back(std::move(c));
  }
  else if (key == "producer") {
    auto w = words(value);
    expectWords(key, w, 2, SIZE_MAX);
    ProducerDecl p{w[0], {}};
    for (size_t i = 1; i < w.size(); ++i) {
      p.served.push_back(parseNameValue(key, w[i]));
    }
    producerApps.push_back(std::move(p));
  }
  else if (key == "fail") {
    auto w = words(value);
    expectWords(key, w, 3, 3);
    failures.push_back({w[0], w[1], parseDuration(w[2])});
  }
  else {
    throw ConfigError("unknown scenario key '" + std::string(key) + "'");
  }
}

void
ScenarioConfig::applyOverride(std::string_view assignment)
{
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override must look like key=value: '" + std::string(assignment) + "'");
  }
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void
ScenarioConfig::validate() const
{
  if (duration <= Duration::zero()) {
    throw ConfigError("duration must be positive");
  }
  if (consumerRate < 0) {
    throw ConfigError("consumer_rate cannot be negative");
  }
  if (maxAltAttempts == 0) {
    throw ConfigError("max_alt_attempts must be at least 1");
  }
  if (bfdInterval <= Duration::zero() || bfdMultiplier == 0) {
    throw ConfigError("bfd_interval and bfd_multiplier must be positive");
  }
  if (throughputBin <= Duration::zero()) {
    throw ConfigError("throughput_bin must be positive");
  }
  if (tmp < Duration::zero() || interestLifetime <= Duration::zero() || discoveryTimer <= Duration::zero()) {
    throw ConfigError("timers must be positive");
  }
  if (linkDelay < Duration::zero()) {
    throw ConfigError("link_delay cannot be negative");
  }
  if (topology == TopologyKind::Isp) {
    if (coreRouters < 4) {
      throw ConfigError("core_routers must be at least 4");
    }
    if (parallelLinks == 0) {
      throw ConfigError("parallel_links must be at least 1");
    }
    if (prefixes != 0 && prefixes < producers) {
      throw ConfigError("prefixes must be at least the number of producers");
    }
  }
  else if (nodes.empty()) {
    throw ConfigError("an explicit topology needs node declarations");
  }
}

IspParameters
ScenarioConfig::ispParameters() const
{
  IspParameters p;
  p.coreRouters = coreRouters;
  p.edgeRouters = edgeRouters;
  p.consumers = consumers;
  p.producers = producers;
  p.prefixes = prefixes;
  p.parallelLinks = parallelLinks;
  p.linkDelay = linkDelay;
  p.consumerStartMax = consumerStartMax;
  return p;
}

ScenarioConfig
ScenarioConfig::parse(std::istream& input, std::string name)
{
  ScenarioConfig config;
  config.name = std::move(name);
  std::string line;
  size_t lineNo = 0;
  while (std::getline(input, line)) {
    ++lineNo;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineNo) + ": expected key = value");
    }
    try {
      config.set(trim(view.substr(0, eq)), view.substr(eq + 1));
    }
    catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
  return config;
}

ScenarioConfig
ScenarioConfig::load(const std::string& path)
{
  std::ifstream file(path);
  if (!file) {
    throw ConfigError("cannot open scenario file '" + path + "'");
  }
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) {
    stem = stem.substr(slash + 1);
  }
  if (auto dot = stem.rfind('.'); dot != std::string::npos) {
    stem = stem.substr(0, dot);
  }
  return parse(file, stem);
}

Topology
buildTopology(const ScenarioConfig& config)
{
  config.validate();
  if (config.topology == TopologyKind::Isp) {
    try {
      return generateIspTopology(config.ispParameters(), config.seed);
    }
    catch (const Topology::Error& e) {
      throw ConfigError(e.what());
    }
  }

  try {
    Topology topo;
    for (const auto& n : config.nodes) {
      topo.addNode(n.name, n.kind);
    }
    for (const auto& l : config.links) {
      uint32_t a = topo.nodeIndex(l.a);
      uint32_t b = topo.nodeIndex(l.b);
      bool routerLink = isRouter(topo.nodes()[a].kind) && isRouter(topo.nodes()[b].kind);
      uint32_t parallel = l.parallel != 0 ? l.parallel : (routerLink ? config.parallelLinks : 1);
      topo.addLink(a, b, l.delay.value_or(config.linkDelay), parallel);
    }
    for (const auto& p : config.producerApps) {
      topo.addProducer(topo.nodeIndex(p.node), p.served);
    }
    for (const auto& c : config.consumerApps) {
      topo.addConsumer(topo.nodeIndex(c.node), c.prefix, c.start);
    }
    topo.validate();
    return topo;
  }
  catch (const Topology::Error& e) {
    throw ConfigError(e.what());
  }
}

} // namespace samba::sim
