#include "samba/name.hpp"

#include <gtest/gtest.h>

#include <unordered_set>

using samba::Name;
using samba::TokenMode;
using samba::tokenize;

TEST(Name, ParsesComponents)
{
  EXPECT_EQ(Name::parse("/A/B/F").components(), (std::vector<std::string>{"A", "B", "F"}));
  EXPECT_EQ(Name::parse("/p").components(), (std::vector<std::string>{"p"}));
  EXPECT_TRUE(Name::parse("/").empty());
}

TEST(Name, RejectsMalformedText)
{
  EXPECT_THROW(Name::parse("/A//B"), Name::Error);
  EXPECT_THROW(Name::parse("A/B"), Name::Error);
  EXPECT_THROW(Name::parse(""), Name::Error);
  EXPECT_THROW(Name::parse("/A/"), Name::Error);
}

TEST(Name, RoundTripsThroughText)
{
  for (const char* uri : {"/", "/a", "/dom3/svc17/42", "/x/y/z/w"}) {
    EXPECT_EQ(Name::parse(uri).toUri(), uri);
    EXPECT_EQ(Name::parse(Name::parse(uri).toUri()), Name::parse(uri));
  }
}

TEST(Name, PrefixOperations)
{
  auto n = Name::parse("/a/b/c");
  EXPECT_EQ(n.getPrefix(2), Name::parse("/a/b"));
  EXPECT_EQ(n.getPrefix(-1), Name::parse("/a/b"));
  EXPECT_EQ(n.getPrefix(0), Name());
  EXPECT_TRUE(Name::parse("/a/b").isPrefixOf(n));
  EXPECT_TRUE(Name().isPrefixOf(n));
  EXPECT_FALSE(Name::parse("/a/c").isPrefixOf(n));
  EXPECT_FALSE(n.isPrefixOf(Name::parse("/a/b")));

  Name m = Name::parse("/a");
  m.append("b");
  EXPECT_EQ(m, Name::parse("/a/b"));
}

TEST(Name, OrdersComponentWise)
{
  EXPECT_LT(Name::parse("/a"), Name::parse("/a/b"));
  EXPECT_LT(Name::parse("/a/b"), Name::parse("/b"));
  EXPECT_LT(Name::parse("/A"), Name::parse("/a"));
}

TEST(Name, HashesEqualNamesEqually)
{
  std::unordered_set<Name> set{Name::parse("/a/b"), Name::parse("/a/b"), Name::parse("/a")};
  EXPECT_EQ(set.size(), 2);
}

TEST(Tokenize, ComponentMode)
{
  EXPECT_EQ(tokenize(Name::parse("/A/B"), TokenMode::Component), (std::vector<std::string>{"A", "B"}));
  auto n = Name::parse("/x/yy/zzz");
  EXPECT_EQ(tokenize(n, TokenMode::Component).size(), n.size());
}

TEST(Tokenize, CharacterMode)
{
  EXPECT_EQ(tokenize(Name::parse("/AB"), TokenMode::Character), (std::vector<std::string>{"A", "B"}));
  // Separators after the first one are tokens too, so hierarchy survives.
  EXPECT_EQ(tokenize(Name::parse("/A/B"), TokenMode::Character),
            (std::vector<std::string>{"A", "/", "B"}));
  std::string fifty(50, 'q');
  EXPECT_EQ(tokenize(Name::parse("/" + fifty), TokenMode::Character).size(), 50);
}
