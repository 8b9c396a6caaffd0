#include "kglp/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "kglp/io.hpp"

namespace kglp {

namespace {

constexpr std::string_view kModelMagic = "KGLPCNT";
constexpr std::uint32_t kModelVersion = 1;

}  // namespace

std::vector<double> uniform_logprobs(std::size_t vocab_size) {
  if (vocab_size == 0) throw Error("empty vocabulary");
  return std::vector<double>(vocab_size,
                             -std::log(static_cast<double>(vocab_size)));
}

std::vector<double> uniform_logprobs(const Vocabulary& vocab) {
  return uniform_logprobs(vocab.size());
}

UniformScorer::UniformScorer(std::size_t vocab_size) : vocab_size_(vocab_size) {
  if (vocab_size == 0) throw Error("empty vocabulary");
}

void UniformScorer::next_token_logprobs(const InputSequence&, const TokenSequence&,
                                        std::vector<double>& out) const {
  out.assign(vocab_size_, -std::log(static_cast<double>(vocab_size_)));
}

std::size_t CountScorer::KeyHash::operator()(const ContextKey& key) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (std::uint32_t v : key) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

CountScorer::CountScorer(std::uint32_t order, double alpha, std::size_t vocab_size)
    : order_(order), alpha_(alpha), vocab_size_(vocab_size) {
  if (vocab_size == 0) throw Error("empty vocabulary");
  if (alpha <= 0) throw Error("smoothing alpha must be positive");
}

CountScorer::ContextKey CountScorer::context_key(const Query& q,
                                                 const TokenSequence& prefix,
                                                 std::size_t prefix_len) const {
  ContextKey key(1 + order_);
  // Head queries condition on the reversed relation, mirroring the [REV]
  // marker in the input.
  key[0] = (q.relation.value << 1) |
           (q.direction == Direction::HeadMissing ? 1u : 0u);
  for (std::uint32_t i = 0; i < order_; ++i) {
    std::size_t back = order_ - i;
    key[1 + i] = back <= prefix_len
                     ? prefix[prefix_len - back].value
                     : Vocabulary::kPad.value;
  }
  return key;
}

void CountScorer::next_token_logprobs(const InputSequence& input,
                                      const TokenSequence& prefix,
                                      std::vector<double>& out) const {
  const double v = static_cast<double>(vocab_size_);
  auto it = table_.find(context_key(input.query, prefix, prefix.size()));
  if (it == table_.end()) {
    out.assign(vocab_size_, -std::log(v));
    return;
  }
  const Counts& counts = it->second;
  const double denom = static_cast<double>(counts.total) + alpha_ * v;
  out.assign(vocab_size_, std::log(alpha_ / denom));
  for (const auto& [token, count] : counts.by_token) {
    out[token] = std::log((static_cast<double>(count) + alpha_) / denom);
  }
}

void CountScorer::observe(const InputSequence& input, const TargetSequence& target) {
  for (std::size_t i = 0; i < target.tokens.size(); ++i) {
    Counts& counts = table_[context_key(input.query, target.tokens, i)];
    ++counts.by_token[target.tokens[i].value];
    ++counts.total;
  }
}

CountScorer train_count_scorer(const KnowledgeGraph& kg, const Vocabulary& vocab,
                               const DemonstrationConfig& demo_cfg,
                               std::uint32_t order, double alpha) {
  if (kg.train().empty()) throw EmptyTrainSetError();
  CountScorer scorer(order, alpha, vocab.size());
  for (const auto& triple : kg.train()) {
    for (Direction dir : {Direction::TailMissing, Direction::HeadMissing}) {
      Query q;
      q.known = dir == Direction::TailMissing ? triple.head : triple.tail;
      q.relation = triple.relation;
      q.direction = dir;
      EntityId gold = dir == Direction::TailMissing ? triple.tail : triple.head;
      auto demos = sample_demonstrations(kg, q, demo_cfg, {triple});
      InputSequence input = assemble_input(kg, q, demos, vocab, demo_cfg);
      scorer.observe(input, assemble_target(kg, gold, vocab));
    }
  }
  return scorer;
}

double nll_loss(const Scorer& scorer, const TrainBatch& batch) {
  if (batch.empty()) throw std::invalid_argument("nll_loss: empty batch");
  double total = 0.0;
  std::vector<double> logprobs;
  for (const auto& [input, target] : batch) {
    TokenSequence prefix;
    prefix.reserve(target.tokens.size());
    double sequence_logprob = 0.0;
    for (TokenId t : target.tokens) {
      scorer.next_token_logprobs(input, prefix, logprobs);
      sequence_logprob += logprobs.at(t.value);
      prefix.push_back(t);
    }
    total -= sequence_logprob;
  }
  return total / static_cast<double>(batch.size());
}

void CountScorer::save(const std::filesystem::path& path) const {
  BinaryWriter w(path);
  write_artifact_header(w, kModelMagic, kModelVersion);
  w.u32(order_);
  w.f64(alpha_);
  w.u64(vocab_size_);
  std::map<ContextKey, const Counts*> sorted;
  for (const auto& [key, counts] : table_) sorted.emplace(key, &counts);
  w.u64(sorted.size());
  for (const auto& [key, counts] : sorted) {
    for (std::uint32_t v : key) w.u32(v);
    std::map<std::uint32_t, std::uint64_t> by_token(counts->by_token.begin(),
                                                    counts->by_token.end());
    w.u32(static_cast<std::uint32_t>(by_token.size()));
    for (const auto& [token, count] : by_token) {
      w.u32(token);
      w.u64(count);
    }
  }
  w.close();
}

CountScorer CountScorer::load(const std::filesystem::path& path) {
  BinaryReader r(path);
  expect_artifact_header(r, kModelMagic, kModelVersion);
  std::uint32_t order = r.u32();
  double alpha = r.f64();
  std::uint64_t vocab_size = r.u64();
  CountScorer scorer(order, alpha, vocab_size);
  std::uint64_t keys = r.u64();
  for (std::uint64_t i = 0; i < keys; ++i) {
    ContextKey key(1 + order);
    for (auto& v : key) v = r.u32();
    Counts counts;
    std::uint32_t entries = r.u32();
    for (std::uint32_t e = 0; e < entries; ++e) {
      std::uint32_t token = r.u32();
      std::uint64_t count = r.u64();
      counts.by_token.emplace(token, count);
      counts.total += count;
    }
    scorer.table_.emplace(std::move(key), std::move(counts));
  }
  return scorer;
}

}  // namespace kglp
