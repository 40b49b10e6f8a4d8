#include "samba/topology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace samba::sim {

std::string_view
toString(NodeKind kind)
{
  switch (kind) {
    case NodeKind::CoreRouter:
      return "core";
    case NodeKind::EdgeRouter:
      return "edge";
    case NodeKind::Consumer:
      return "consumer";
    case NodeKind::Producer:
      return "producer";
  }
  return "unknown";
}

NodeKind
parseNodeKind(std::string_view text)
{
  if (text == "core") {
    return NodeKind::CoreRouter;
  }
  if (text == "edge") {
    return NodeKind::EdgeRouter;
  }
  if (text == "consumer") {
    return NodeKind::Consumer;
  }
  if (text == "producer") {
    return NodeKind::Producer;
  }
  throw Topology::Error("unknown node kind '" + std::string(text) + "'");
}

uint32_t
Topology::addNode(std::string name, NodeKind kind)
{
  if (findNode(name)) {
    throw Error("duplicate node name '" + name + "'");
  }
  m_nodes.push_back({std::move(name), kind});
  return static_cast<uint32_t>(m_nodes.size() - 1);
}

void
Topology::addLink(uint32_t a, uint32_t b, Duration delay, uint32_t parallel)
{
  if (a >= m_nodes.size() || b >= m_nodes.size()) {
    throw Error("link endpoint out of range");
  }
  if (a == b) {
    throw Error("self link at '" + m_nodes[a].name + "'");
  }
  if (parallel == 0) {
    throw Error("a link needs at least one parallel channel");
  }
  if (delay < Duration::zero()) {
    throw Error("negative link delay");
  }
  m_links.push_back({a, b, delay, parallel});
}

void
Topology::addConsumer(uint32_t node, Name prefix, SimTime start)
{
  if (node >= m_nodes.size() || m_nodes[node].kind != NodeKind::Consumer) {
    throw Error("consumer application must run on a consumer node");
  }
  m_consumers.push_back({node, std::move(prefix), start});
}

void
Topology::addProducer(uint32_t node, std::vector<Name> served)
{
  if (node >= m_nodes.size() || m_nodes[node].kind != NodeKind::Producer) {
    throw Error("producer application must run on a producer node");
  }
  m_producers.push_back({node, std::move(served)});
}

std::optional<uint32_t>
Topology::findNode(std::string_view name) const
{
  for (uint32_t i = 0; i < m_nodes.size(); ++i) {
    if (m_nodes[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

uint32_t
Topology::nodeIndex(std::string_view name) const
{
  auto index = findNode(name);
  if (!index) {
    throw Error("unknown node '" + std::string(name) + "'");
  }
  return *index;
}

size_t
Topology::count(NodeKind kind) const
{
  return std::count_if(m_nodes.begin(), m_nodes.end(), [kind] (const TopoNode& n) { return n.kind == kind; });
}

std::vector<uint32_t>
Topology::neighbors(uint32_t node) const
{
  std::vector<uint32_t> out;
  for (const auto& link : m_links) {
    uint32_t other;
    if (link.a == node) {
      other = link.b;
    }
    else if (link.b == node) {
      other = link.a;
    }
    else {
      continue;
    }
    if (std::find(out.begin(), out.end(), other) == out.end()) {
      out.push_back(other);
    }
  }
  return out;
}

size_t
Topology::degree(uint32_t node) const
{
  return std::count_if(m_links.begin(), m_links.end(),
                       [node] (const TopoLink& l) { return l.a == node || l.b == node; });
}

uint32_t
Topology::attachment(uint32_t host) const
{
  for (uint32_t n : neighbors(host)) {
    if (isRouter(m_nodes[n].kind)) {
      return n;
    }
  }
  throw Error("host '" + m_nodes.at(host).name + "' is not attached to a router");
}

std::vector<int>
Topology::routerHops(uint32_t router) const
{
  std::vector<std::vector<uint32_t>> adj(m_nodes.size());
  for (const auto& link : m_links) {
    if (isRouter(m_nodes[link.a].kind) && isRouter(m_nodes[link.b].kind)) {
      adj[link.a].push_back(link.b);
      adj[link.b].push_back(link.a);
    }
  }
  std::vector<int> dist(m_nodes.size(), -1);
  std::deque<uint32_t> queue{router};
  dist[router] = 0;
  while (!queue.empty()) {
    uint32_t u = queue.front();
    queue.pop_front();
    for (uint32_t v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::optional<size_t>
Topology::producerFor(const Name& name) const
{
  for (size_t i = 0; i < m_producers.size(); ++i) {
    for (const auto& p : m_producers[i].served) {
      if (p.isPrefixOf(name)) {
        return i;
      }
    }
  }
  return std::nullopt;
}

void
Topology::validate() const
{
  for (uint32_t i = 0; i < m_nodes.size(); ++i) {
    if (isRouter(m_nodes[i].kind)) {
      continue;
    }
    if (degree(i) != 1) {
      throw Error("host '" + m_nodes[i].name + "' must have exactly one link");
    }
    attachment(i);
  }
  for (const auto& link : m_links) {
    bool hostLink = !isRouter(m_nodes[link.a].kind) || !isRouter(m_nodes[link.b].kind);
    if (hostLink && link.parallel != 1) {
      throw Error("access links cannot be parallel");
    }
    if (!isRouter(m_nodes[link.a].kind) && !isRouter(m_nodes[link.b].kind)) {
      throw Error("hosts must attach to routers");
    }
  }

  if (m_nodes.empty()) {
    return;
  }
  std::vector<bool> seen(m_nodes.size(), false);
  std::deque<uint32_t> queue{0};
  seen[0] = true;
  size_t reached = 1;
  std::vector<std::vector<uint32_t>> adj(m_nodes.size());
  for (const auto& link : m_links) {
    adj[link.a].push_back(link.b);
    adj[link.b].push_back(link.a);
  }
  while (!queue.empty()) {
    uint32_t u = queue.front();
    queue.pop_front();
    for (uint32_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  if (reached != m_nodes.size()) {
    throw Error("topology is not connected");
  }
}

std::string
Topology::toScenarioText() const
{
  std::ostringstream os;
  os << "topology = explicit\n";
  for (const auto& n : m_nodes) {
    os << "node = " << n.name << ' ' << toString(n.kind) << '\n';
  }
  for (const auto& l : m_links) {
    os << "link = " << m_nodes[l.a].name << ' ' << m_nodes[l.b].name << ' '
       << formatDuration(l.delay) << ' ' << l.parallel << '\n';
  }
  for (const auto& p : m_producers) {
    os << "producer = " << m_nodes[p.node].name;
    for (const auto& s : p.served) {
      os << ' ' << s;
    }
    os << '\n';
  }
  for (const auto& c : m_consumers) {
    os << "consumer = " << m_nodes[c.node].name << ' ' << c.prefix << ' '
       << formatDuration(c.start) << '\n';
  }
  return os.str();
}

namespace {

using Edge = std::pair<uint32_t, uint32_t>;

bool
isConnected(uint32_t n, const std::vector<Edge>& edges)
{
  std::vector<std::vector<uint32_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  std::vector<uint32_t> stack{0};
  seen[0] = true;
  uint32_t reached = 1;
  while (!stack.empty()) {
    uint32_t u = stack.back();
    stack.pop_back();
    for (uint32_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

std::vector<Edge>
pairingModel(uint32_t n, std::mt19937_64& rng)
{
  std::vector<unsigned> degree(n, 3);
  if ((3 * n) % 2 == 1) {
    degree[std::uniform_int_distribution<uint32_t>(0, n - 1)(rng)] = 4;
  }

  std::vector<uint32_t> stubs;
  for (uint32_t i = 0; i < n; ++i) {
    stubs.insert(stubs.end(), degree[i], i);
  }

  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<Edge> edges;
    std::set<Edge> seen;
    bool simple = true;
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
      uint32_t a = std::min(stubs[i], stubs[i + 1]);
      uint32_t b = std::max(stubs[i], stubs[i + 1]);
      if (a == b || !seen.insert({a, b}).second) {
        simple = false;
        break;
      }
      edges.emplace_back(a, b);
    }
    if (simple && isConnected(n, edges)) {
      return edges;
    }
  }
  throw Topology::Error("could not draw a simple connected core graph");
}

} // namespace

Topology
generateIspTopology(const IspParameters& params, uint64_t seed)
{
  if (params.coreRouters < 4) {
    throw Topology::Error("at least 4 core routers are needed for a degree-3 core");
  }
  if (params.edgeRouters == 0 && params.consumers + params.producers > 0) {
    throw Topology::Error("hosts need at least one edge router");
  }
  if (params.producers == 0 && params.consumers > 0) {
    throw Topology::Error("consumers need at least one producer");
  }
  unsigned domains = params.prefixes == 0 ? params.producers : params.prefixes;
  if (domains < params.producers) {
    throw Topology::Error("there must be at least as many prefixes as producers");
  }
  if (params.parallelLinks == 0) {
    throw Topology::Error("parallel link degree must be at least 1");
  }

  std::mt19937_64 rng(seed);
  Topology topo;

  std::vector<uint32_t> core;
  for (unsigned i = 0; i < params.coreRouters; ++i) {
    core.push_back(topo.addNode("core" + std::to_string(i), NodeKind::CoreRouter));
  }
  for (auto [a, b] : pairingModel(params.coreRouters, rng)) {
    topo.addLink(core[a], core[b], params.linkDelay, params.parallelLinks);
  }

  std::vector<uint32_t> edge;
  unsigned maxUplinks = std::min(3u, params.coreRouters);
  for (unsigned i = 0; i < params.edgeRouters; ++i) {
    uint32_t e = topo.addNode("edge" + std::to_string(i), NodeKind::EdgeRouter);
    edge.push_back(e);
    unsigned uplinks = std::uniform_int_distribution<unsigned>(1, maxUplinks)(rng);
    std::vector<uint32_t> choice = core;
    std::shuffle(choice.begin(), choice.end(), rng);
    std::sort(choice.begin(), choice.begin() + uplinks);
    for (unsigned j = 0; j < uplinks; ++j) {
      topo.addLink(e, choice[j], params.linkDelay, params.parallelLinks);
    }
  }

  auto pickEdge = [&] {
    return edge[std::uniform_int_distribution<size_t>(0, edge.size() - 1)(rng)];
  };

  std::vector<uint32_t> consumerNodes;
  for (unsigned i = 0; i < params.consumers; ++i) {
    uint32_t c = topo.addNode("consumer" + std::to_string(i), NodeKind::Consumer);
    topo.addLink(c, pickEdge(), params.linkDelay);
    consumerNodes.push_back(c);
  }
  std::vector<uint32_t> producerNodes;
  for (unsigned i = 0; i < params.producers; ++i) {
    uint32_t p = topo.addNode("producer" + std::to_string(i), NodeKind::Producer);
    topo.addLink(p, pickEdge(), params.linkDelay);
    producerNodes.push_back(p);
  }

  // The first domains go round-robin so that every producer serves one; the rest at random.
  std::vector<std::vector<Name>> served(params.producers);
  for (unsigned d = 0; d < domains; ++d) {
    unsigned owner = d < params.producers ?
                     d : std::uniform_int_distribution<unsigned>(0, params.producers - 1)(rng);
    served[owner].push_back(Name({"dom" + std::to_string(d)}));
  }
  for (unsigned i = 0; i < params.producers; ++i) {
    topo.addProducer(producerNodes[i], served[i]);
  }

  std::uniform_real_distribution<double> startDist(0.0, toSeconds(params.consumerStartMax));
  for (unsigned i = 0; i < params.consumers; ++i) {
    unsigned d = std::uniform_int_distribution<unsigned>(0, domains - 1)(rng);
    Name prefix({"dom" + std::to_string(d), "svc" + std::to_string(i)});
    SimTime start = fromSeconds(startDist(rng));
    topo.addConsumer(consumerNodes[i], std::move(prefix), start);
  }

  topo.validate();
  return topo;
}

void
checkIspInvariants(const Topology& topo, const IspParameters& params)
{
  const auto& nodes = topo.nodes();
  if (topo.count(NodeKind::CoreRouter) != params.coreRouters ||
      topo.count(NodeKind::EdgeRouter) != params.edgeRouters ||
      topo.count(NodeKind::Consumer) != params.consumers ||
      topo.count(NodeKind::Producer) != params.producers) {
    throw Topology::Error("node counts differ from the parameters");
  }

  std::map<uint32_t, unsigned> coreDegree;
  std::map<uint32_t, std::set<uint32_t>> edgeUplinks;
  std::set<std::pair<uint32_t, uint32_t>> adjacency;
  for (const auto& link : topo.links()) {
    NodeKind ka = nodes[link.a].kind;
    NodeKind kb = nodes[link.b].kind;
    auto key = std::minmax(link.a, link.b);
    if (!adjacency.insert({key.first, key.second}).second) {
      throw Topology::Error("duplicate adjacency between " + nodes[link.a].name + " and " + nodes[link.b].name);
    }
    if (isRouter(ka) && isRouter(kb) && link.parallel != params.parallelLinks) {
      throw Topology::Error("router link with the wrong parallel degree");
    }
    if (ka == NodeKind::CoreRouter && kb == NodeKind::CoreRouter) {
      ++coreDegree[link.a];
      ++coreDegree[link.b];
    }
    else if (ka == NodeKind::EdgeRouter && kb == NodeKind::CoreRouter) {
      edgeUplinks[link.a].insert(link.b);
    }
    else if (kb == NodeKind::EdgeRouter && ka == NodeKind::CoreRouter) {
      edgeUplinks[link.b].insert(link.a);
    }
    else if (ka == NodeKind::EdgeRouter && kb == NodeKind::EdgeRouter) {
      throw Topology::Error("edge routers must only attach to core routers");
    }
    else {
      uint32_t host = isRouter(ka) ? link.b : link.a;
      uint32_t router = isRouter(ka) ? link.a : link.b;
      if (nodes[router].kind != NodeKind::EdgeRouter) {
        throw Topology::Error("host " + nodes[host].name + " attaches to a non-edge router");
      }
    }
  }

  unsigned fours = 0;
  for (uint32_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind != NodeKind::CoreRouter) {
      continue;
    }
    unsigned d = coreDegree[i];
    if (d == 4) {
      ++fours;
    }
    else if (d != 3) {
      throw Topology::Error("core router " + nodes[i].name + " has degree " + std::to_string(d));
    }
  }
  unsigned expectedFours = (3 * params.coreRouters) % 2;
  if (fours != expectedFours) {
    throw Topology::Error("unexpected number of degree-4 core routers");
  }

  for (uint32_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeKind::EdgeRouter) {
      size_t n = edgeUplinks[i].size();
      if (n < 1 || n > 3) {
        throw Topology::Error("edge router " + nodes[i].name + " has " + std::to_string(n) + " uplinks");
      }
    }
  }

  topo.validate();
}

double
meanConsumerProducerHops(const Topology& topo)
{
  double total = 0;
  size_t counted = 0;
  for (const auto& c : topo.consumers()) {
    auto p = topo.producerFor(c.prefix);
    if (!p) {
      continue;
    }
    uint32_t from = topo.attachment(c.node);
    uint32_t to = topo.attachment(topo.producers()[*p].node);
    int hops = topo.routerHops(from)[to];
    if (hops >= 0) {
      total += hops;
      ++counted;
    }
  }
  return counted == 0 ? 0.0 : total / static_cast<double>(counted);
}

} // namespace samba::sim
