#include <cctype>

#include "doctest.h"
#include "kglp/text.hpp"

using namespace kglp;

namespace {

// Independent re-statement of the split rules: a two-state scanner written
// against the contract, not the implementation.
std::vector<std::string> oracle_split(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto wordish = [](unsigned char c) { return std::isalnum(c) || c >= 0x80; };
  while (i < text.size()) {
    unsigned char c = text[i];
    if (std::isspace(c)) {
      ++i;
    } else if (wordish(c)) {
      std::string tok;
      while (i < text.size() && wordish(static_cast<unsigned char>(text[i]))) {
        tok += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
        ++i;
      }
      out.push_back(tok);
    } else {
      out.push_back(std::string(1, text[i]));
      ++i;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("split_text applies the lowercase + punctuation rules") {
  CHECK(split_text("UC, Irvine") == std::vector<std::string>{"uc", ",", "irvine"});
  CHECK(split_text("") == std::vector<std::string>{});
  CHECK(split_text("   \t\n ") == std::vector<std::string>{});
  CHECK(split_text("a-b") == std::vector<std::string>{"a", "-", "b"});
  CHECK(split_text("Fb15k-237") == std::vector<std::string>{"fb15k", "-", "237"});
  CHECK(split_text("/film/genre") ==
        std::vector<std::string>{"/", "film", "/", "genre"});
}

TEST_CASE("split_text keeps UTF-8 sequences intact") {
  auto tokens = split_text("café au lait");
  CHECK(tokens == std::vector<std::string>{"café", "au", "lait"});
}

TEST_CASE("split_text matches an independent rule oracle") {
  const std::string samples[] = {
      "Michael Chabon studied at University of California, Irvine.",
      "spouse_of(x, y) :- married(y, x)!",
      "A  B\tC\r\nD",
      "...",
      "x2y3z4",
      "öffnen ÖFFNEN",
  };
  for (const auto& s : samples) {
    CAPTURE(s);
    CHECK(split_text(s) == oracle_split(s));
  }
}

TEST_CASE("split_text is idempotent over its own joined output") {
  const std::string samples[] = {
      "University of California, Irvine",
      "israeli-american novelist and essayist",
      "a,b;c  d",
  };
  for (const auto& s : samples) {
    auto once = split_text(s);
    auto twice = split_text(join_tokens(once));
    CHECK(once == twice);
  }
}
