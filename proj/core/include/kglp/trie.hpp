#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "kglp/demonstration.hpp"
#include "kglp/ids.hpp"
#include "kglp/kg.hpp"
#include "kglp/vocabulary.hpp"

namespace kglp {

/// Prefix tree over the target sequences of every entity. Root-to-leaf
/// paths are exactly the legal decodes: category token, name tokens, an
/// optional discriminator, then [EOS] into a terminal leaf carrying the
/// EntityId. Immutable after build.
class EntityTrie {
 public:
  using NodeIndex = std::uint32_t;
  static constexpr NodeIndex kRoot = 0;

  struct Node {
    std::map<TokenId, NodeIndex> children;
    std::optional<EntityId> entity;  // set on terminal leaves only
  };

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t entity_count() const { return entity_count_; }
  bool empty() const { return entity_count_ == 0; }

  const Node& node(NodeIndex i) const { return nodes_.at(i); }
  std::optional<NodeIndex> child(NodeIndex i, TokenId token) const;
  bool is_terminal(NodeIndex i) const { return nodes_.at(i).entity.has_value(); }

  /// Walks prefix from the root; InvalidPrefixError when the path leaves
  /// the tree.
  NodeIndex walk(const TokenSequence& prefix) const;

  /// The legal continuations after prefix, ascending by token id. {[EOS]}
  /// after a complete entity sequence; category tokens at the root.
  std::vector<TokenId> allowed_next(const TokenSequence& prefix) const;

  /// The entity whose full sequence (EOS included) is exactly `tokens`,
  /// or nullopt.
  std::optional<EntityId> decode(const TokenSequence& tokens) const;

  void save(const std::filesystem::path& path) const;
  static EntityTrie load(const std::filesystem::path& path);

 private:
  friend EntityTrie build_trie(const KnowledgeGraph& kg, const Vocabulary& vocab);

  std::vector<Node> nodes_{1};
  std::size_t entity_count_ = 0;
};

/// Inserts assemble_target(e) for every entity. DuplicateTargetError if two
/// entities produce the same sequence — the vocabulary's discriminator
/// assignment guarantees they cannot.
EntityTrie build_trie(const KnowledgeGraph& kg, const Vocabulary& vocab);

}  // namespace kglp
