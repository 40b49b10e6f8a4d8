#include "samba/pit.hpp"

#include <algorithm>

namespace samba::pit {

bool
Entry::hasOutFace(FaceId face) const
{
  return std::find(outFacesPending.begin(), outFacesPending.end(), face) != outFacesPending.end();
}

DeadNonceList::DeadNonceList(size_t capacity)
  : m_capacity(capacity)
{
}

uint64_t
DeadNonceList::key(const Name& name, Nonce nonce)
{
  uint64_t h = std::hash<Name>{}(name);
  return h ^ (nonce + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

void
DeadNonceList::add(const Name& name, Nonce nonce)
{
  if (m_capacity == 0) {
    return;
  }
  uint64_t k = key(name, nonce);
  m_fifo.push_back(k);
  ++m_counts[k];
  while (m_fifo.size() > m_capacity) {
    uint64_t old = m_fifo.front();
    m_fifo.pop_front();
    auto it = m_counts.find(old);
    if (--it->second == 0) {
      m_counts.erase(it);
    }
  }
}

bool
DeadNonceList::contains(const Name& name, Nonce nonce) const
{
  return m_counts.count(key(name, nonce)) > 0;
}

Pit::Pit(size_t deadNonceCapacity)
  : m_deadNonces(deadNonceCapacity)
{
}

AdmitResult
Pit::admitInterest(const Name& name, Nonce nonce, FaceId inFace, bool isDiscovery,
                   SimTime now, Duration lifetime)
{
  auto it = m_entries.find(name);
  if (it != m_entries.end() && it->second.expiry() <= now) {
    erase(name);
    it = m_entries.end();
  }

  auto create = [&] {
    Entry entry;
    entry.name = name;
    entry.nonce = nonce;
    entry.isDiscovery = isDiscovery;
    entry.inFaces.push_back(inFace);
    entry.lifetimeExpiry = now + lifetime;
    entry.id = m_nextId++;
    m_entries.insert_or_assign(name, std::move(entry));
    return AdmitResult::New;
  };

  if (it == m_entries.end()) {
    if (m_deadNonces.contains(name, nonce)) {
      return AdmitResult::LoopDrop;
    }
    return create();
  }

  Entry& entry = it->second;
  auto appendFace = [&] {
    if (std::find(entry.inFaces.begin(), entry.inFaces.end(), inFace) == entry.inFaces.end()) {
      entry.inFaces.push_back(inFace);
    }
    return AdmitResult::AppendedFace;
  };

  if (isDiscovery) {
    if (entry.nonce == nonce) {
      return appendFace();
    }
    // A discovery with a fresh nonce supersedes whatever was pending under this name.
    m_deadNonces.add(entry.name, entry.nonce);
    return create();
  }

  if (entry.nonce == nonce) {
    return AdmitResult::LoopDrop;
  }
  if (std::find(entry.inFaces.begin(), entry.inFaces.end(), inFace) != entry.inFaces.end()) {
    return AdmitResult::DuplicateDrop;
  }
  return appendFace();
}

DataDisposition
Pit::consumeOnData(const Name& name, SimTime now) const
{
  const Entry* entry = find(name);
  if (entry == nullptr || entry->expiry() <= now) {
    return Unsolicited{};
  }
  if (!entry->tmpExpiry) {
    return FirstData{entry->inFaces};
  }
  return AltWindow{};
}

void
Pit::markSent(const Name& name, std::span<const FaceId> faces)
{
  Entry* entry = find(name);
  if (entry == nullptr) {
    return;
  }
  for (FaceId f : faces) {
    if (!entry->hasOutFace(f)) {
      entry->outFacesPending.push_back(f);
    }
  }
}

void
Pit::clearOutFace(const Name& name, FaceId face, SimTime now)
{
  Entry* entry = find(name);
  if (entry == nullptr) {
    return;
  }
  std::erase(entry->outFacesPending, face);
  if (entry->inFaces.empty() && entry->outFacesPending.empty() &&
      entry->tmpExpiry && *entry->tmpExpiry <= now) {
    erase(name);
  }
}

void
Pit::clearInFaces(const Name& name)
{
  if (Entry* entry = find(name); entry != nullptr) {
    entry->inFaces.clear();
  }
}

void
Pit::setTmp(const Name& name, SimTime expiry)
{
  if (Entry* entry = find(name); entry != nullptr) {
    entry->tmpExpiry = expiry;
  }
}

Entry*
Pit::find(const Name& name)
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second;
}

const Entry*
Pit::find(const Name& name) const
{
  auto it = m_entries.find(name);
  return it == m_entries.end() ? nullptr : &it->second;
}

void
Pit::erase(const Name& name)
{
  auto it = m_entries.find(name);
  if (it == m_entries.end()) {
    return;
  }
  m_deadNonces.add(it->second.name, it->second.nonce);
  m_entries.erase(it);
}

bool
Pit::expireIfDue(const Name& name, uint64_t id, SimTime now)
{
  auto it = m_entries.find(name);
  if (it == m_entries.end() || it->second.id != id || it->second.expiry() > now) {
    return false;
  }
  erase(name);
  return true;
}

size_t
Pit::expireAll(SimTime now)
{
  std::vector<Name> due;
  for (const auto& [name, entry] : m_entries) {
    if (entry.expiry() <= now) {
      due.push_back(name);
    }
  }
  for (const auto& name : due) {
    erase(name);
  }
  return due.size();
}

std::vector<const Entry*>
Pit::sortedEntries() const
{
  std::vector<const Entry*> out;
  out.reserve(m_entries.size());
  for (const auto& [name, entry] : m_entries) {
    out.push_back(&entry);
  }
  std::sort(out.begin(), out.end(), [] (const Entry* a, const Entry* b) { return a->name < b->name; });
  return out;
}

} // namespace samba::pit
