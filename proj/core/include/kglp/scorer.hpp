#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kglp/demonstration.hpp"
#include "kglp/ids.hpp"
#include "kglp/kg.hpp"
#include "kglp/vocabulary.hpp"

namespace kglp {

/// Autoregressive conditional token-distribution provider. Implementations
/// are immutable once constructed/trained and safe for concurrent reads.
class Scorer {
 public:
  virtual ~Scorer() = default;

  /// Fills `out` (resized to the vocabulary size) with natural-log
  /// conditional probabilities of the next target token given the encoder
  /// input and the decoded prefix. exp(out) sums to 1 within 1e-9, and the
  /// result depends only on the arguments.
  virtual void next_token_logprobs(const InputSequence& input,
                                   const TokenSequence& prefix,
                                   std::vector<double>& out) const = 0;

  std::vector<double> next_token_logprobs(const InputSequence& input,
                                          const TokenSequence& prefix) const {
    std::vector<double> out;
    next_token_logprobs(input, prefix, out);
    return out;
  }

  virtual std::size_t vocab_size() const = 0;
};

/// Every entry equals -ln(V).
std::vector<double> uniform_logprobs(std::size_t vocab_size);
std::vector<double> uniform_logprobs(const Vocabulary& vocab);

class UniformScorer final : public Scorer {
 public:
  explicit UniformScorer(std::size_t vocab_size);

  void next_token_logprobs(const InputSequence& input, const TokenSequence& prefix,
                           std::vector<double>& out) const override;
  std::size_t vocab_size() const override { return vocab_size_; }

 private:
  std::size_t vocab_size_;
};

using TrainBatch = std::vector<std::pair<InputSequence, TargetSequence>>;

/// Laplace-smoothed conditional counts keyed by the query relation (split
/// by direction) and the last `order` prefix tokens, left-padded with
/// [PAD]. Probabilities are (count + alpha) / (total + alpha * V), so every
/// token keeps positive mass and unseen contexts fall back to uniform.
class CountScorer final : public Scorer {
 public:
  CountScorer(std::uint32_t order, double alpha, std::size_t vocab_size);

  void next_token_logprobs(const InputSequence& input, const TokenSequence& prefix,
                           std::vector<double>& out) const override;
  std::size_t vocab_size() const override { return vocab_size_; }

  std::uint32_t order() const { return order_; }
  double alpha() const { return alpha_; }

  /// Accumulates the target's per-step (context -> token) counts. Order of
  /// observe calls does not affect the resulting probabilities.
  void observe(const InputSequence& input, const TargetSequence& target);

  void save(const std::filesystem::path& path) const;
  static CountScorer load(const std::filesystem::path& path);

 private:
  using ContextKey = std::vector<std::uint32_t>;

  struct KeyHash {
    std::size_t operator()(const ContextKey& key) const noexcept;
  };

  struct Counts {
    std::unordered_map<std::uint32_t, std::uint64_t> by_token;
    std::uint64_t total = 0;
  };

  ContextKey context_key(const Query& q, const TokenSequence& prefix,
                         std::size_t prefix_len) const;

  std::uint32_t order_;
  double alpha_;
  std::size_t vocab_size_;
  std::unordered_map<ContextKey, Counts, KeyHash> table_;
};

/// Fits a CountScorer on every (assemble_input, assemble_target) pair of
/// every training triple, in both prediction directions. Demonstrations are
/// sampled per pair with the pair's own triple excluded.
/// EmptyTrainSetError when kg has no training triples.
CountScorer train_count_scorer(const KnowledgeGraph& kg, const Vocabulary& vocab,
                               const DemonstrationConfig& demo_cfg,
                               std::uint32_t order = 2, double alpha = 1.0);

/// Mean negative log-likelihood of the batch targets under the scorer;
/// non-negative. Throws std::invalid_argument on an empty batch.
double nll_loss(const Scorer& scorer, const TrainBatch& batch);

}  // namespace kglp
