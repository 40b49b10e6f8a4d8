#include "samba/fib.hpp"

#include <algorithm>

namespace samba::fib {

class Trie::Tokens
{
public:
  Tokens(const Name& name, TokenMode mode)
  {
    if (mode == TokenMode::Component) {
      m_list.reserve(name.size());
      for (const auto& c : name.components()) {
        m_list.emplace_back(c);
      }
      return;
    }

    // The canonical text without its leading separator, one token per character.
    for (size_t i = 0; i < name.size(); ++i) {
      if (i > 0) {
        m_buffer += '/';
      }
      m_buffer += name[i];
    }
    m_list.reserve(m_buffer.size());
    for (size_t i = 0; i < m_buffer.size(); ++i) {
      m_list.emplace_back(m_buffer.data() + i, 1);
    }
  }

  Tokens(const Tokens&) = delete;
  Tokens& operator=(const Tokens&) = delete;

  size_t
  size() const noexcept
  {
    return m_list.size();
  }

  std::string_view
  operator[](size_t i) const noexcept
  {
    return m_list[i];
  }

private:
  std::string m_buffer;
  std::vector<std::string_view> m_list;
};

Trie::Trie(TokenMode mode)
  : m_mode(mode)
{
  m_nodes.push_back(Node{NONE, NONE, NONE, NONE, NONE});
}

uint32_t
Trie::findChild(uint32_t parent, std::string_view token) const
{
  for (uint32_t c = m_nodes[parent].firstChild; c != NONE; c = m_nodes[c].nextSibling) {
    int cmp = std::string_view(m_tokens[m_nodes[c].token]).compare(token);
    if (cmp == 0) {
      return c;
    }
    if (cmp > 0) {
      break;
    }
  }
  return NONE;
}

uint32_t
Trie::internToken(std::string_view token)
{
  auto [it, isNew] = m_tokenIds.try_emplace(std::string(token), static_cast<uint32_t>(m_tokens.size()));
  if (isNew) {
    m_tokens.emplace_back(token);
  }
  return it->second;
}

uint32_t
Trie::allocateNode(uint32_t parent, uint32_t token)
{
  Node node{parent, NONE, NONE, token, NONE};
  if (!m_freeNodes.empty()) {
    uint32_t index = m_freeNodes.back();
    m_freeNodes.pop_back();
    m_nodes[index] = node;
    return index;
  }
  m_nodes.push_back(node);
  return static_cast<uint32_t>(m_nodes.size() - 1);
}

uint32_t
Trie::findOrCreatePath(const Name& prefix)
{
  Tokens tokens(prefix, m_mode);
  uint32_t cur = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string_view tok = tokens[i];
    uint32_t prev = NONE;
    uint32_t c = m_nodes[cur].firstChild;
    int cmp = 1;
    while (c != NONE) {
      cmp = std::string_view(m_tokens[m_nodes[c].token]).compare(tok);
      if (cmp >= 0) {
        break;
      }
      prev = c;
      c = m_nodes[c].nextSibling;
    }

    if (c != NONE && cmp == 0) {
      cur = c;
      continue;
    }

    uint32_t fresh = allocateNode(cur, internToken(tok));
    m_nodes[fresh].nextSibling = c;
    if (prev == NONE) {
      m_nodes[cur].firstChild = fresh;
    }
    else {
      m_nodes[prev].nextSibling = fresh;
    }
    cur = fresh;
  }
  return cur;
}

FaceList&
Trie::engage(uint32_t node)
{
  if (m_nodes[node].faces == NONE) {
    uint32_t slot;
    if (!m_freeFaceLists.empty()) {
      slot = m_freeFaceLists.back();
      m_freeFaceLists.pop_back();
      m_faceListOwner[slot] = node;
    }
    else {
      slot = static_cast<uint32_t>(m_faceLists.size());
      m_faceLists.emplace_back();
      m_faceListOwner.push_back(node);
    }
    m_nodes[node].faces = slot;
  }
  return m_faceLists[m_nodes[node].faces];
}

void
Trie::disengage(uint32_t node)
{
  uint32_t slot = m_nodes[node].faces;
  if (slot == NONE) {
    return;
  }
  if (!m_faceLists[slot].empty()) {
    --m_leafCount;
  }
  FaceList().swap(m_faceLists[slot]);
  m_faceListOwner[slot] = NONE;
  m_freeFaceLists.push_back(slot);
  m_nodes[node].faces = NONE;
}

void
Trie::prune(uint32_t node)
{
  while (node != 0 && m_nodes[node].faces == NONE && m_nodes[node].firstChild == NONE) {
    uint32_t parent = m_nodes[node].parent;
    if (m_nodes[parent].firstChild == node) {
      m_nodes[parent].firstChild = m_nodes[node].nextSibling;
    }
    else {
      uint32_t c = m_nodes[parent].firstChild;
      while (m_nodes[c].nextSibling != node) {
        c = m_nodes[c].nextSibling;
      }
      m_nodes[c].nextSibling = m_nodes[node].nextSibling;
    }
    m_nodes[node] = Node{NONE, NONE, NONE, NONE, NONE};
    m_freeNodes.push_back(node);
    node = parent;
  }
}

void
Trie::noteFaceAdded(FaceList& list, NextHop hop)
{
  if (list.empty()) {
    ++m_leafCount;
  }
  list.push_back(hop);
}

void
Trie::noteFaceRemoved(FaceList& list, FaceId face)
{
  auto it = std::find_if(list.begin(), list.end(), [face] (const NextHop& nh) { return nh.face == face; });
  if (it == list.end()) {
    return;
  }
  list.erase(it);
  if (list.empty()) {
    --m_leafCount;
  }
}

void
Trie::insert(const Name& prefix, FaceId face, FaceScope scope)
{
  uint32_t node = findOrCreatePath(prefix);
  FaceList& list = engage(node);
  bool present = std::any_of(list.begin(), list.end(), [face] (const NextHop& nh) { return nh.face == face; });
  if (!present) {
    noteFaceAdded(list, NextHop{face, scope});
  }
}

void
Trie::assign(const Name& prefix, FaceId face, FaceScope scope)
{
  uint32_t node = findOrCreatePath(prefix);
  FaceList& list = engage(node);
  if (list.empty()) {
    ++m_leafCount;
  }
  list.assign(1, NextHop{face, scope});
}

Trie::Walk
Trie::walk(const Tokens& tokens, bool allowEmpty) const
{
  auto isEntry = [&] (uint32_t n) {
    return allowEmpty ? m_nodes[n].faces != NONE : hasFaces(n);
  };

  Walk w;
  if (isEntry(0)) {
    w.leaf = 0;
  }
  uint32_t cur = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    uint32_t child = findChild(cur, tokens[i]);
    if (child == NONE) {
      break;
    }
    cur = child;
    w.deepest = cur;
    w.deepestDepth = i + 1;
    if (isEntry(cur)) {
      w.leaf = cur;
      w.leafDepth = i + 1;
    }
  }
  return w;
}

LpmResult
Trie::lpm(const Name& prefix) const
{
  Tokens tokens(prefix, m_mode);
  Walk w = walk(tokens, false);
  if (w.leaf != NONE) {
    return {LpmResult::Kind::Leaf, NodeId{w.leaf}, w.leafDepth};
  }
  return {LpmResult::Kind::Stop, NodeId{w.deepest}, w.deepestDepth};
}

namespace {

template<typename Nodes, typename IsEntry>
std::optional<uint32_t>
preorderFirst(const Nodes& nodes, uint32_t start, uint32_t none, IsEntry&& isEntry)
{
  uint32_t cur = start;
  while (true) {
    if (isEntry(cur)) {
      return cur;
    }
    if (nodes[cur].firstChild != none) {
      cur = nodes[cur].firstChild;
      continue;
    }
    while (cur != start && nodes[cur].nextSibling == none) {
      cur = nodes[cur].parent;
    }
    if (cur == start) {
      return std::nullopt;
    }
    cur = nodes[cur].nextSibling;
  }
}

} // namespace

std::optional<NodeId>
Trie::dfsFirstLeaf(NodeId start) const
{
  auto found = preorderFirst(m_nodes, start.value, NONE, [this] (uint32_t n) { return hasFaces(n); });
  if (!found) {
    return std::nullopt;
  }
  return NodeId{*found};
}

std::optional<uint32_t>
Trie::resolveIndex(const Name& prefix, bool allowEmpty, bool* viaDfs) const
{
  Tokens tokens(prefix, m_mode);
  Walk w = walk(tokens, allowEmpty);
  if (w.leaf != NONE) {
    if (viaDfs != nullptr) {
      *viaDfs = false;
    }
    return w.leaf;
  }
  if (viaDfs != nullptr) {
    *viaDfs = true;
  }
  return preorderFirst(m_nodes, w.deepest, NONE, [&] (uint32_t n) {
    return allowEmpty ? m_nodes[n].faces != NONE : hasFaces(n);
  });
}

const FaceList&
Trie::faces(NodeId node) const
{
  static const FaceList empty;
  if (node.value >= m_nodes.size() || m_nodes[node.value].faces == NONE) {
    return empty;
  }
  return m_faceLists[m_nodes[node.value].faces];
}

std::string
Trie::entryUri(NodeId node) const
{
  std::vector<uint32_t> path;
  for (uint32_t n = node.value; n != 0 && n != NONE; n = m_nodes[n].parent) {
    path.push_back(m_nodes[n].token);
  }

  std::string uri = "/";
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (m_mode == TokenMode::Component && it != path.rbegin()) {
      uri += '/';
    }
    uri += m_tokens[*it];
  }
  return uri;
}

std::optional<Resolution>
Trie::resolve(const Name& prefix) const
{
  bool viaDfs = false;
  auto index = resolveIndex(prefix, false, &viaDfs);
  if (!index) {
    return std::nullopt;
  }
  return Resolution{NodeId{*index}, viaDfs};
}

LookupResult
Trie::afLookup(const Name& prefix, FaceId exclude) const
{
  auto res = resolve(prefix);
  if (!res) {
    return LookupResult::noRoute();
  }
  for (const NextHop& nh : faces(res->node)) {
    if (nh.face == exclude) {
      continue;
    }
    if (nh.isLocal()) {
      return res->viaDfs ? LookupResult::noRoute() : LookupResult::deliver(nh.face);
    }
    return LookupResult::forward(nh.face);
  }
  return LookupResult::noRoute();
}

std::optional<std::string>
Trie::removeFaceFromLeaf(const Name& prefix, FaceId face)
{
  auto index = resolveIndex(prefix, true);
  if (!index) {
    return std::nullopt;
  }
  noteFaceRemoved(m_faceLists[m_nodes[*index].faces], face);
  return entryUri(NodeId{*index});
}

std::optional<std::string>
Trie::removeEntry(const Name& prefix)
{
  auto index = resolveIndex(prefix, true);
  if (!index) {
    return std::nullopt;
  }
  std::string uri = entryUri(NodeId{*index});
  disengage(*index);
  prune(*index);
  return uri;
}

std::optional<FaceId>
Trie::nextAlternativeFace(const Name& prefix) const
{
  auto index = resolveIndex(prefix, true);
  if (!index) {
    return std::nullopt;
  }
  for (const NextHop& nh : m_faceLists[m_nodes[*index].faces]) {
    if (!nh.isLocal()) {
      return nh.face;
    }
  }
  return std::nullopt;
}

std::vector<std::string>
Trie::removeFace(FaceId face)
{
  std::vector<std::string> affected;
  for (uint32_t slot = 0; slot < m_faceLists.size(); ++slot) {
    uint32_t owner = m_faceListOwner[slot];
    if (owner == NONE) {
      continue;
    }
    FaceList& list = m_faceLists[slot];
    bool present = std::any_of(list.begin(), list.end(), [face] (const NextHop& nh) { return nh.face == face; });
    if (!present) {
      continue;
    }
    affected.push_back(entryUri(NodeId{owner}));
    noteFaceRemoved(list, face);
    if (list.empty()) {
      disengage(owner);
      prune(owner);
    }
  }
  return affected;
}

const FaceList*
Trie::findExact(const Name& prefix) const
{
  Tokens tokens(prefix, m_mode);
  uint32_t cur = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    cur = findChild(cur, tokens[i]);
    if (cur == NONE) {
      return nullptr;
    }
  }
  if (m_nodes[cur].faces == NONE) {
    return nullptr;
  }
  return &m_faceLists[m_nodes[cur].faces];
}

void
Trie::forEachEntry(const std::function<void(NodeId, const FaceList&)>& visit) const
{
  for (uint32_t slot = 0; slot < m_faceLists.size(); ++slot) {
    uint32_t owner = m_faceListOwner[slot];
    if (owner != NONE && !m_faceLists[slot].empty()) {
      visit(NodeId{owner}, m_faceLists[slot]);
    }
  }
}

} // namespace samba::fib
