#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kglp/ids.hpp"
#include "kglp/kg.hpp"

namespace kglp {

/// Token table shared by the encoder input and the decoder target space.
///
/// Id layout, assigned densely from 0:
///   [BOS] [EOS] [SEP] [UNK] [PAD] [REV]      reserved specials
///   [C:<category>] ...                       one per category, sorted by name
///   text tokens ...                          sorted lexicographically
///   [D:<entity id>] ...                      per-entity discriminators
///
/// Bracketed forms cannot be produced by split_text, so specials, category
/// tokens and discriminators never collide with text tokens. Immutable once
/// built.
class Vocabulary {
 public:
  static constexpr TokenId kBos{0};
  static constexpr TokenId kEos{1};
  static constexpr TokenId kSep{2};
  static constexpr TokenId kUnk{3};
  static constexpr TokenId kPad{4};
  static constexpr TokenId kRev{5};
  static constexpr std::uint32_t kSpecialCount = 6;

  std::size_t size() const { return tokens_.size(); }

  const std::string& token_text(TokenId t) const;
  std::optional<TokenId> find(const std::string& token) const;

  bool is_special(TokenId t) const { return t.value < kSpecialCount; }
  bool is_category(TokenId t) const {
    return t.value >= kSpecialCount && t.value < kSpecialCount + category_count_;
  }

  /// Category-name lookup; throws UnknownIdError for a category the
  /// vocabulary was not built over.
  TokenId category_token(const std::string& category) const;

  /// The reserved discriminator for entities whose base target sequence is a
  /// prefix of (or equal to) another entity's. nullopt for everyone else.
  std::optional<TokenId> disambiguator(EntityId e) const;

  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

 private:
  friend Vocabulary build_vocabulary(const KnowledgeGraph& kg);

  TokenId intern(std::string token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  std::unordered_map<std::string, TokenId> category_index_;
  std::unordered_map<std::uint32_t, TokenId> entity_disambiguators_;
  std::uint32_t category_count_ = 0;
};

/// Builds the vocabulary over every token of every entity name, entity
/// description and relation text in kg, one category token per category,
/// the reserved specials, and the per-entity discriminators needed to keep
/// entity target sequences prefix-free.
Vocabulary build_vocabulary(const KnowledgeGraph& kg);

/// split_text + id lookup; out-of-vocabulary tokens map to [UNK]. Never
/// emits specials, category tokens or discriminators.
TokenSequence tokenize(std::string_view text, const Vocabulary& vocab);

}  // namespace kglp
