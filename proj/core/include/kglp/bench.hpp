#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kglp/synthetic.hpp"

namespace kglp {

enum class BenchScorerKind : std::uint8_t { Uniform, Count };

struct BenchPoint {
  std::size_t n_entities = 0;
  std::size_t queries = 0;
  double oracle_ms_median = 0.0;   // brute-force score-everything ranking
  double decoder_ms_median = 0.0;  // constrained beam search
  double oracle_ms_mean = 0.0;
  double decoder_ms_mean = 0.0;
  std::size_t vocab_size = 0;
  std::size_t trie_nodes = 0;
};

struct BenchReport {
  std::vector<BenchPoint> points;
  std::size_t beam_size = 5;
  std::string scorer;
  std::uint64_t seed = 1;
};

struct BenchConfig {
  std::size_t beam_size = 5;
  BenchScorerKind scorer = BenchScorerKind::Count;
  std::size_t queries_per_point = 30;  // noise control: median over >= 30
  std::uint64_t seed = 1;
};

/// Per-query wall time of brute-force ranking vs constrained decoding on
/// synthetic graphs of the given entity counts (fixed description length,
/// fixed name width, so only |E| varies). Single-threaded; monotonic clock;
/// medians reported.
BenchReport bench_scaling(const std::vector<std::size_t>& entity_counts,
                          const BenchConfig& cfg = {});

std::string bench_report_text(const BenchReport& report);
std::string bench_report_json(const BenchReport& report);

}  // namespace kglp
