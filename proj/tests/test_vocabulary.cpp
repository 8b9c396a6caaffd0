#include <set>

#include "doctest.h"
#include "kglp/text.hpp"
#include "support.hpp"

using namespace kglp;
using kglp::test::eid;

namespace {

// Set-union oracle: expected vocabulary size enumerated independently from
// the raw graph content.
std::size_t oracle_vocab_size(const KnowledgeGraph& kg,
                              std::size_t disambiguated_entities) {
  std::set<std::string> text;
  std::set<std::string> categories;
  for (const auto& e : kg.entities()) {
    for (const auto& t : split_text(e.name)) text.insert(t);
    for (const auto& t : split_text(e.description)) text.insert(t);
    for (const auto& c : e.categories) categories.insert(c);
  }
  for (const auto& r : kg.relations()) {
    for (const auto& t : split_text(r.name)) text.insert(t);
    for (const auto& t : split_text(r.description)) text.insert(t);
  }
  return 6 + categories.size() + text.size() + disambiguated_entities;
}

}  // namespace

TEST_CASE("vocabulary covers fixture tokens and matches the set-union oracle") {
  const auto& [kg, vocab, trie] = kglp::test::FixtureBundle::get();

  // Exactly three entities collide on the fixture: the two "John Smith"s
  // (equal sequences) and "University of California" (strict prefix of the
  // Irvine entity).
  std::size_t discriminated = 0;
  for (const auto& e : kg.entities()) {
    if (vocab.disambiguator(e.id)) ++discriminated;
  }
  CHECK(discriminated == 3);
  CHECK(vocab.disambiguator(eid(kg, "E02")).has_value());
  CHECK(vocab.disambiguator(eid(kg, "E03")).has_value());
  CHECK(vocab.disambiguator(eid(kg, "E04")).has_value());
  CHECK(!vocab.disambiguator(eid(kg, "E05")).has_value());

  CHECK(vocab.size() == oracle_vocab_size(kg, discriminated));

  for (const auto& e : kg.entities()) {
    for (const auto& t : split_text(e.name)) CHECK(vocab.find(t).has_value());
    for (const auto& t : split_text(e.description)) CHECK(vocab.find(t).has_value());
    for (const auto& c : e.categories) CHECK_NOTHROW(vocab.category_token(c));
  }
  for (const auto& r : kg.relations()) {
    for (const auto& t : split_text(r.description)) CHECK(vocab.find(t).has_value());
  }
}

TEST_CASE("single-entity graph vocabulary is tokens + category + specials") {
  KnowledgeGraph kg;
  kg.add_entity("x", "a", "");
  kg.add_category(EntityId(0), "thing");
  kg.add_relation("r", "rel");
  kg.finalize({});
  Vocabulary vocab = build_vocabulary(kg);
  // {a, rel} + [C:thing] + 6 specials
  CHECK(vocab.size() == 6 + 1 + 2);
  CHECK(vocab.find("a").has_value());
  CHECK(vocab.find("rel").has_value());
  CHECK_NOTHROW(vocab.category_token("thing"));
  CHECK(!vocab.disambiguator(EntityId(0)).has_value());
}

TEST_CASE("shared tokens are interned once") {
  KnowledgeGraph kg;
  kg.add_entity("x", "red apple", "");
  kg.add_entity("y", "red pear", "");
  kg.add_relation("r", "red");
  kg.finalize({});
  Vocabulary vocab = build_vocabulary(kg);
  // {red, apple, pear} + [C:unknown] + specials
  CHECK(vocab.size() == 6 + 1 + 3);
}

TEST_CASE("vocabulary ids are a bijection") {
  const auto& vocab = kglp::test::FixtureBundle::get().vocab;
  std::set<std::string> seen;
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    const std::string& text = vocab.token_text(TokenId(i));
    CHECK(seen.insert(text).second);  // no duplicate surface forms
    auto back = vocab.find(text);
    REQUIRE(back.has_value());
    CHECK(back->value == i);  // decode(encode(t)) == t
  }
  CHECK_THROWS_AS(vocab.token_text(TokenId(static_cast<std::uint32_t>(vocab.size()))),
                  UnknownIdError);
}

TEST_CASE("special and category tokens are disjoint from text tokens") {
  const auto& vocab = kglp::test::FixtureBundle::get().vocab;
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    TokenId t(i);
    const std::string& text = vocab.token_text(t);
    bool bracketed = !text.empty() && text.front() == '[' && text.back() == ']';
    bool reserved = vocab.is_special(t) || vocab.is_category(t) ||
                    text.rfind("[D:", 0) == 0;
    CHECK(bracketed == reserved);
  }
}

TEST_CASE("tokenize maps out-of-vocabulary tokens to UNK and never emits specials") {
  const auto& vocab = kglp::test::FixtureBundle::get().vocab;
  auto ids = tokenize("university of zanzibar", vocab);
  REQUIRE(ids.size() == 3);
  CHECK(ids[0] == *vocab.find("university"));
  CHECK(ids[1] == *vocab.find("of"));
  CHECK(ids[2] == Vocabulary::kUnk);

  // Surface forms that *look* like specials tokenize to plain text pieces
  // (or UNK) — never to the structural tokens themselves.
  for (TokenId t : tokenize("[BOS] [C:person]", vocab)) {
    CHECK((t == Vocabulary::kUnk || !vocab.is_special(t)));
    CHECK(!vocab.is_category(t));
  }
  CHECK(tokenize("", vocab).empty());
}

TEST_CASE("tokenize is deterministic") {
  const auto& vocab = kglp::test::FixtureBundle::get().vocab;
  CHECK(tokenize("University of California, Irvine", vocab) ==
        tokenize("University of California, Irvine", vocab));
}

TEST_CASE("vocabulary artifact round-trips") {
  const auto& [kg, vocab, trie] = kglp::test::FixtureBundle::get();
  auto path = std::filesystem::temp_directory_path() / "kglp_vocab_roundtrip.bin";
  vocab.save(path);
  Vocabulary loaded = Vocabulary::load(path);
  REQUIRE(loaded.size() == vocab.size());
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    CHECK(loaded.token_text(TokenId(i)) == vocab.token_text(TokenId(i)));
  }
  for (const auto& e : kg.entities()) {
    CHECK(loaded.disambiguator(e.id) == vocab.disambiguator(e.id));
  }
  CHECK(loaded.category_token("person") == vocab.category_token("person"));
  std::filesystem::remove(path);
}
