#pragma once

#include <filesystem>
#include <string>

#include "kglp/kg.hpp"

namespace kglp {

struct DatasetSummary {
  std::size_t entities = 0;
  std::size_t relations = 0;
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;

  friend bool operator==(const DatasetSummary&, const DatasetSummary&) = default;
};

DatasetSummary summarize(const KnowledgeGraph& kg);
std::string to_string(const DatasetSummary& s);

/// Loads a dataset directory:
///   train.tsv / valid.tsv / test.tsv   head_id \t relation_id \t tail_id
///   entity2text.tsv                    entity_id \t name [\t description]
///   entity2type.tsv (optional)         entity_id \t category  (repeatable)
///   relation2text.tsv                  relation_id \t text
///
/// Tab-separated, UTF-8, one record per line; blank lines are ignored and a
/// trailing '\r' is tolerated. Unknown ids in triple or type files are a
/// hard error (DanglingReferenceError); repeated ids in the text files are
/// DuplicateIdError; wrong field counts are MalformedLineError.
KnowledgeGraph load_dataset(const std::filesystem::path& dir,
                            const IngestConfig& config = {});

/// Versioned binary persistence for an ingested graph. Round-trips the
/// graph exactly; derived indexes are rebuilt on load.
void save_kg(const KnowledgeGraph& kg, const std::filesystem::path& path);
KnowledgeGraph load_kg(const std::filesystem::path& path);

}  // namespace kglp
