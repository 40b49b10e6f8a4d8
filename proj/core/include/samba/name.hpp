#ifndef SAMBA_NAME_HPP
#define SAMBA_NAME_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace samba {

/// How a name is split into trie tokens.
enum class TokenMode {
  Component, ///< one token per name component
  Character, ///< one token per character of the canonical text, separators included
};

/**
 * \brief A hierarchical name of the form /c1/c2/.../ck.
 *
 * The empty name is rendered as "/" and acts as the trie root.
 */
class Name
{
public:
  class Error : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  Name() = default;

  /// \throw Error if any component is empty or contains '/'
  explicit
  Name(std::vector<std::string> components);

  /// Parse canonical text. \throw Error on a missing leading '/' or an empty component.
  static Name
  parse(std::string_view text);

  size_t
  size() const noexcept
  {
    return m_components.size();
  }

  bool
  empty() const noexcept
  {
    return m_components.empty();
  }

  const std::string&
  operator[](size_t i) const
  {
    return m_components[i];
  }

  const std::string&
  at(size_t i) const
  {
    return m_components.at(i);
  }

  const std::vector<std::string>&
  components() const noexcept
  {
    return m_components;
  }

  /**
   * \brief Returns the first \p n components.
   *
   * A negative \p n drops that many components from the end.
   */
  Name
  getPrefix(std::ptrdiff_t n) const;

  Name&
  append(std::string component);

  bool
  isPrefixOf(const Name& other) const noexcept;

  std::string
  toUri() const;

  friend bool
  operator==(const Name&, const Name&) = default;

  friend std::strong_ordering
  operator<=>(const Name& a, const Name& b)
  {
    return a.m_components <=> b.m_components;
  }

private:
  std::vector<std::string> m_components;
};

std::ostream&
operator<<(std::ostream& os, const Name& name);

/// Split \p name into trie tokens. Character mode drops the leading root separator.
std::vector<std::string>
tokenize(const Name& name, TokenMode mode);

} // namespace samba

template<>
struct std::hash<samba::Name>
{
  size_t
  operator()(const samba::Name& name) const noexcept;
};

#endif // SAMBA_NAME_HPP
