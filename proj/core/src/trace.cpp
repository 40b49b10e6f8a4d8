#include "samba/trace.hpp"

#include <charconv>
#include <stdexcept>

namespace samba {

Tracer::Tracer()
  : m_text(HEADER)
{
}

void
Tracer::record(SimTime time, std::string_view node, std::string_view event, std::string_view name,
               Nonce nonce, FaceId face, std::string_view reason)
{
  m_text += std::to_string(time.count());
  m_text += ',';
  m_text += node;
  m_text += ',';
  m_text += event;
  m_text += ',';
  m_text += name;
  m_text += ',';
  m_text += std::to_string(nonce);
  m_text += ',';
  if (face != INVALID_FACE) {
    m_text += std::to_string(face);
  }
  m_text += ',';
  m_text += reason;
  m_text += '\n';
  ++m_lines;
}

namespace {

template<typename T>
T
parseNumber(std::string_view field, std::string_view line)
{
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("bad numeric field in trace line: " + std::string(line));
  }
  return value;
}

} // namespace

std::vector<TraceRecord>
parseTrace(std::string_view text)
{
  std::vector<TraceRecord> records;
  size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) {
      continue;
    }
    if (first) {
      first = false;
      if (line == Tracer::HEADER.substr(0, Tracer::HEADER.size() - 1)) {
        continue;
      }
    }

    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
      size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 7) {
      throw std::invalid_argument("trace line needs 7 fields: " + std::string(line));
    }

    TraceRecord r;
    r.time = SimTime(parseNumber<int64_t>(fields[0], line));
    r.node = fields[1];
    r.event = fields[2];
    r.name = fields[3];
    r.nonce = parseNumber<Nonce>(fields[4], line);
    if (!fields[5].empty()) {
      r.face = parseNumber<FaceId>(fields[5], line);
    }
    r.reason = fields[6];
    records.push_back(std::move(r));
  }
  return records;
}

} // namespace samba
