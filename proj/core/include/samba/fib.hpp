#ifndef SAMBA_FIB_HPP
#define SAMBA_FIB_HPP

#include "samba/face.hpp"
#include "samba/name.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace samba::fib {

struct NextHop
{
  FaceId face = INVALID_FACE;
  FaceScope scope = FaceScope::Network;

  bool
  isLocal() const noexcept
  {
    return scope == FaceScope::Local;
  }

  friend bool
  operator==(const NextHop&, const NextHop&) = default;
};

/// Ordered next hops of one entry. The head is the face currently in use.
using FaceList = std::vector<NextHop>;

/// Opaque handle to a trie node. Invalidated by any mutation that prunes the node.
struct NodeId
{
  uint32_t value = UINT32_MAX;

  friend bool
  operator==(NodeId, NodeId) = default;
};

struct LpmResult
{
  enum class Kind {
    Leaf, ///< some node on the query path holds a non-empty FaceList
    Stop, ///< no such node, \c node is the deepest node matched
  };

  Kind kind = Kind::Stop;
  NodeId node;
  size_t depth = 0; ///< tokens consumed to reach \c node

  bool
  isLeaf() const noexcept
  {
    return kind == Kind::Leaf;
  }
};

/// The entry approximate forwarding settles on for a query.
struct Resolution
{
  NodeId node;
  bool viaDfs = false; ///< found by searching below the deepest matched node
};

struct LookupResult
{
  enum class Kind {
    Forward, ///< send on a network face
    Deliver, ///< exact entry whose head is a local application face
    NoRoute,
  };

  Kind kind = Kind::NoRoute;
  FaceId face = INVALID_FACE;

  static LookupResult
  forward(FaceId f)
  {
    return {Kind::Forward, f};
  }

  static LookupResult
  deliver(FaceId f)
  {
    return {Kind::Deliver, f};
  }

  static LookupResult
  noRoute()
  {
    return {};
  }

  friend bool
  operator==(const LookupResult&, const LookupResult&) = default;
};

/**
 * \brief Prefix trie used as the forwarding table.
 *
 * Nodes live in a pool and refer to each other by index. Children of a node form a
 * singly linked sibling list kept in lexicographic token order, which is also the
 * order depth-first search visits them in.
 *
 * A node may hold a FaceList that is engaged but empty. This only happens between
 * removing a face and deciding whether the entry survives; such nodes do not count
 * as leaves and are skipped by lookups.
 */
class Trie
{
public:
  explicit
  Trie(TokenMode mode = TokenMode::Component);

  TokenMode
  tokenMode() const noexcept
  {
    return m_mode;
  }

  NodeId
  root() const noexcept
  {
    return NodeId{0};
  }

  /// Append \p face to the entry for \p prefix, creating it if needed. Idempotent.
  void
  insert(const Name& prefix, FaceId face, FaceScope scope = FaceScope::Network);

  /// Replace the entry's FaceList with the single next hop \p face.
  void
  assign(const Name& prefix, FaceId face, FaceScope scope = FaceScope::Network);

  LpmResult
  lpm(const Name& prefix) const;

  /// First node with a non-empty FaceList in the subtrie rooted at \p start, pre-order.
  std::optional<NodeId>
  dfsFirstLeaf(NodeId start) const;

  /// The FaceList held by \p node, or an empty list.
  const FaceList&
  faces(NodeId node) const;

  /// Canonical text of the path leading to \p node.
  std::string
  entryUri(NodeId node) const;

  /// LPM leaf if any, otherwise the first leaf below the deepest matched node.
  std::optional<Resolution>
  resolve(const Name& prefix) const;

  /**
   * \brief Approximate forwarding lookup.
   *
   * Faces equal to \p exclude are never returned. A local face reached only through
   * the subtrie search yields NoRoute.
   */
  LookupResult
  afLookup(const Name& prefix, FaceId exclude = INVALID_FACE) const;

  /// Remove \p face from the resolved entry. Returns that entry's text if one was resolved.
  std::optional<std::string>
  removeFaceFromLeaf(const Name& prefix, FaceId face);

  /// Remove the resolved entry and prune empty branches. Returns its text.
  std::optional<std::string>
  removeEntry(const Name& prefix);

  /// First network face remaining on the resolved entry.
  std::optional<FaceId>
  nextAlternativeFace(const Name& prefix) const;

  /// Purge \p face from every entry, dropping entries that become empty.
  /// Returns the text of each entry that lost the face.
  std::vector<std::string>
  removeFace(FaceId face);

  /// FaceList stored exactly at \p prefix, if any.
  const FaceList*
  findExact(const Name& prefix) const;

  /// Entries with a non-empty FaceList.
  size_t
  leafCount() const noexcept
  {
    return m_leafCount;
  }

  size_t
  nodeCount() const noexcept
  {
    return m_nodes.size() - m_freeNodes.size();
  }

  void
  forEachEntry(const std::function<void(NodeId, const FaceList&)>& visit) const;

private:
  static constexpr uint32_t NONE = UINT32_MAX;

  struct Node
  {
    uint32_t parent;
    uint32_t firstChild;
    uint32_t nextSibling;
    uint32_t token;
    uint32_t faces;
  };

  class Tokens;

  struct Walk
  {
    uint32_t deepest = 0;
    size_t deepestDepth = 0;
    uint32_t leaf = NONE;
    size_t leafDepth = 0;
  };

  Walk
  walk(const Tokens& tokens, bool allowEmpty) const;

  std::optional<uint32_t>
  resolveIndex(const Name& prefix, bool allowEmpty, bool* viaDfs = nullptr) const;

  uint32_t
  findChild(uint32_t parent, std::string_view token) const;

  uint32_t
  findOrCreatePath(const Name& prefix);

  uint32_t
  internToken(std::string_view token);

  uint32_t
  allocateNode(uint32_t parent, uint32_t token);

  FaceList&
  engage(uint32_t node);

  void
  disengage(uint32_t node);

  void
  prune(uint32_t node);

  bool
  hasFaces(uint32_t node) const
  {
    uint32_t f = m_nodes[node].faces;
    return f != NONE && !m_faceLists[f].empty();
  }

  void
  noteFaceAdded(FaceList& list, NextHop hop);

  void
  noteFaceRemoved(FaceList& list, FaceId face);

private:
  TokenMode m_mode;
  std::vector<Node> m_nodes;
  std::vector<uint32_t> m_freeNodes;
  std::vector<FaceList> m_faceLists;
  std::vector<uint32_t> m_faceListOwner;
  std::vector<uint32_t> m_freeFaceLists;
  std::vector<std::string> m_tokens;
  std::unordered_map<std::string, uint32_t> m_tokenIds;
  size_t m_leafCount = 0;
};

} // namespace samba::fib

#endif // SAMBA_FIB_HPP
