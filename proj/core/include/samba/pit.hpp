#ifndef SAMBA_PIT_HPP
#define SAMBA_PIT_HPP

#include "samba/face.hpp"
#include "samba/packet.hpp"
#include "samba/time.hpp"

#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

namespace samba::pit {

struct Entry
{
  Name name;
  Nonce nonce = 0;
  bool isDiscovery = false;
  std::vector<FaceId> inFaces;
  std::vector<FaceId> outFacesPending;
  SimTime lifetimeExpiry{};
  std::optional<SimTime> tmpExpiry;
  uint32_t hopCount = 0;  ///< hop count of the interest that created the entry
  uint64_t id = 0;        ///< distinguishes an entry from later entries under the same name

  /// Once the alternative-route window is armed the entry ends with it.
  SimTime
  expiry() const noexcept
  {
    return tmpExpiry ? *tmpExpiry : lifetimeExpiry;
  }

  bool
  hasOutFace(FaceId face) const;
};

enum class AdmitResult {
  New,
  AppendedFace,
  LoopDrop,
  DuplicateDrop,
};

struct FirstData
{
  std::vector<FaceId> inFaces;
};

struct AltWindow
{
};

struct Unsolicited
{
};

using DataDisposition = std::variant<FirstData, AltWindow, Unsolicited>;

/// Bounded FIFO of (name, nonce) pairs seen by entries that no longer exist.
class DeadNonceList
{
public:
  explicit
  DeadNonceList(size_t capacity = 4096);

  void
  add(const Name& name, Nonce nonce);

  bool
  contains(const Name& name, Nonce nonce) const;

  size_t
  size() const noexcept
  {
    return m_fifo.size();
  }

private:
  static uint64_t
  key(const Name& name, Nonce nonce);

private:
  size_t m_capacity;
  std::deque<uint64_t> m_fifo;
  std::unordered_map<uint64_t, uint32_t> m_counts;
};

class Pit
{
public:
  explicit
  Pit(size_t deadNonceCapacity = 4096);

  AdmitResult
  admitInterest(const Name& name, Nonce nonce, FaceId inFace, bool isDiscovery,
                SimTime now, Duration lifetime);

  /// Classify the arrival of data. The table is not modified.
  DataDisposition
  consumeOnData(const Name& name, SimTime now) const;

  void
  markSent(const Name& name, std::span<const FaceId> faces);

  void
  clearOutFace(const Name& name, FaceId face, SimTime now);

  void
  clearInFaces(const Name& name);

  void
  setTmp(const Name& name, SimTime expiry);

  /// The live entry for \p name, or nullptr.
  Entry*
  find(const Name& name);

  const Entry*
  find(const Name& name) const;

  /// Remove the entry, remembering its nonce as dead.
  void
  erase(const Name& name);

  /// Erase the entry if it is still the one identified by \p id and its time has come.
  bool
  expireIfDue(const Name& name, uint64_t id, SimTime now);

  /// Erase every entry whose expiry is at or before \p now.
  size_t
  expireAll(SimTime now);

  size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  const DeadNonceList&
  deadNonces() const noexcept
  {
    return m_deadNonces;
  }

  /// Entries sorted by name, for deterministic iteration.
  std::vector<const Entry*>
  sortedEntries() const;

private:
  std::unordered_map<Name, Entry> m_entries;
  DeadNonceList m_deadNonces;
  uint64_t m_nextId = 1;
};

} // namespace samba::pit

#endif // SAMBA_PIT_HPP
