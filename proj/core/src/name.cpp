#include "samba/name.hpp"

#include <algorithm>
#include <ostream>

namespace samba {

Name::Name(std::vector<std::string> components)
  : m_components(std::move(components))
{
  for (const auto& c : m_components) {
    if (c.empty()) {
      throw Error("empty name component");
    }
    if (c.find('/') != std::string::npos) {
      throw Error("name component contains '/': " + c);
    }
  }
}

Name
Name::parse(std::string_view text)
{
  if (text.empty() || text.front() != '/') {
    throw Error("name must start with '/': '" + std::string(text) + "'");
  }

  Name name;
  if (text.size() == 1) {
    return name;
  }

  size_t pos = 1;
  while (pos <= text.size()) {
    size_t next = text.find('/', pos);
    if (next == std::string_view::npos) {
      next = text.size();
    }
    if (next == pos) {
      throw Error("empty component in name '" + std::string(text) + "'");
    }
    name.m_components.emplace_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return name;
}

Name
Name::getPrefix(std::ptrdiff_t n) const
{
  auto count = static_cast<std::ptrdiff_t>(m_components.size());
  if (n < 0) {
    n = std::max<std::ptrdiff_t>(0, count + n);
  }
  n = std::min(n, count);

  Name prefix;
  prefix.m_components.assign(m_components.begin(), m_components.begin() + n);
  return prefix;
}

Name&
Name::append(std::string component)
{
  if (component.empty() || component.find('/') != std::string::npos) {
    throw Error("invalid name component '" + component + "'");
  }
  m_components.push_back(std::move(component));
  return *this;
}

bool
Name::isPrefixOf(const Name& other) const noexcept
{
  if (size() > other.size()) {
    return false;
  }
  return std::equal(m_components.begin(), m_components.end(), other.m_components.begin());
}

std::string
Name::toUri() const
{
  if (m_components.empty()) {
    return "/";
  }
  std::string uri;
  for (const auto& c : m_components) {
    uri += '/';
    uri += c;
  }
  return uri;
}

std::ostream&
operator<<(std::ostream& os, const Name& name)
{
  return os << name.toUri();
}

std::vector<std::string>
tokenize(const Name& name, TokenMode mode)
{
  if (mode == TokenMode::Component) {
    return name.components();
  }

  std::vector<std::string> tokens;
  if (name.empty()) {
    return tokens;
  }
  std::string text = name.toUri();
  tokens.reserve(text.size() - 1);
  for (size_t i = 1; i < text.size(); ++i) {
    tokens.emplace_back(1, text[i]);
  }
  return tokens;
}

} // namespace samba

size_t
std::hash<samba::Name>::operator()(const samba::Name& name) const noexcept
{
  size_t seed = name.size();
  std::hash<std::string> h;
  for (const auto& c : name.components()) {
    seed ^= h(c) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}
