#include "kglp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "kglp/beam.hpp"
#include "kglp/eval.hpp"
#include "kglp/trie.hpp"

namespace kglp {

namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                : 0.5 * (values[mid - 1] + values[mid]);
}

double mean(const std::vector<double>& values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

}  // namespace

BenchReport bench_scaling(const std::vector<std::size_t>& entity_counts,
                          const BenchConfig& cfg) {
  BenchReport report;
  report.beam_size = cfg.beam_size;
  report.scorer = cfg.scorer == BenchScorerKind::Uniform ? "uniform" : "count";
  report.seed = cfg.seed;

  for (std::size_t n : entity_counts) {
    SyntheticConfig syn;
    syn.n_entities = n;
    syn.n_test = static_cast<std::uint32_t>(cfg.queries_per_point);
    syn.seed = cfg.seed;
    KnowledgeGraph kg = make_synthetic_kg(syn);
    Vocabulary vocab = build_vocabulary(kg);
    EntityTrie trie = build_trie(kg, vocab);

    DemonstrationConfig demo;
    demo.seed = cfg.seed;
    std::unique_ptr<Scorer> scorer;
    if (cfg.scorer == BenchScorerKind::Uniform) {
      scorer = std::make_unique<UniformScorer>(vocab.size());
    } else {
      scorer = std::make_unique<CountScorer>(
          train_count_scorer(kg, vocab, demo));
    }

    std::vector<double> oracle_ms;
    std::vector<double> decoder_ms;
    for (const auto& triple : kg.test()) {
      Query q{triple.head, triple.relation, Direction::TailMissing};
      auto demos = sample_demonstrations(kg, q, demo, {triple});
      InputSequence input = assemble_input(kg, q, demos, vocab, demo);

      auto t0 = std::chrono::steady_clock::now();
      auto oracle = brute_force_rank(*scorer, input, kg, vocab);
      auto t1 = std::chrono::steady_clock::now();
      auto decode = constrained_beam_search(*scorer, input, trie, cfg.beam_size);
      auto t2 = std::chrono::steady_clock::now();

      oracle_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      decoder_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
      if (oracle.empty() || decode.ranked.empty()) {
        throw Error("benchmark produced an empty ranking");
      }
    }

    BenchPoint point;
    point.n_entities = n;
    point.queries = oracle_ms.size();
    point.oracle_ms_median = median(oracle_ms);
    point.decoder_ms_median = median(decoder_ms);
    point.oracle_ms_mean = mean(oracle_ms);
    point.decoder_ms_mean = mean(decoder_ms);
    point.vocab_size = vocab.size();
    point.trie_nodes = trie.node_count();
    report.points.push_back(point);
  }
  return report;
}

std::string bench_report_text(const BenchReport& report) {
  std::ostringstream out;
  out << "scorer: " << report.scorer << ", beam: " << report.beam_size
      << ", seed: " << report.seed << "\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%12s %10s %16s %17s %10s\n", "|E|",
                "queries", "oracle_ms_med", "decoder_ms_med", "speedup");
  out << line;
  for (const auto& p : report.points) {
    double speedup = p.decoder_ms_median > 0.0
                         ? p.oracle_ms_median / p.decoder_ms_median
                         : 0.0;
    std::snprintf(line, sizeof(line), "%12zu %10zu %16.4f %17.4f %9.1fx\n",
                  p.n_entities, p.queries, p.oracle_ms_median,
                  p.decoder_ms_median, speedup);
    out << line;
  }
  return out.str();
}

std::string bench_report_json(const BenchReport& report) {
  nlohmann::json j;
  j["scorer"] = report.scorer;
  j["beam"] = report.beam_size;
  j["seed"] = report.seed;
  j["points"] = nlohmann::json::array();
  for (const auto& p : report.points) {
    nlohmann::json point;
    point["n_entities"] = p.n_entities;
    point["queries"] = p.queries;
    point["oracle_ms_median"] = p.oracle_ms_median;
    point["decoder_ms_median"] = p.decoder_ms_median;
    point["oracle_ms_mean"] = p.oracle_ms_mean;
    point["decoder_ms_mean"] = p.decoder_ms_mean;
    point["vocab_size"] = p.vocab_size;
    point["trie_nodes"] = p.trie_nodes;
    j["points"].push_back(point);
  }
  return j.dump(2) + "\n";
}

}  // namespace kglp
