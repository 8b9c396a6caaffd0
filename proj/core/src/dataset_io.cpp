#include "kglp/dataset_io.hpp"

#include <fstream>

#include "kglp/io.hpp"

namespace kglp {

namespace {

constexpr std::string_view kKgMagic = "KGLPKG";
constexpr std::uint32_t kKgVersion = 1;

// Splits a record into at most max_fields tab-separated fields; tabs beyond
// that stay inside the last field (descriptions may contain them).
std::vector<std::string> split_fields(const std::string& line, std::size_t max_fields) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (fields.size() + 1 < max_fields) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) break;
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  fields.push_back(line.substr(start));
  return fields;
}

class LineFile {
 public:
  explicit LineFile(const std::filesystem::path& path) : path_(path.string()) {
    if (!std::filesystem::exists(path)) throw MissingFileError(path_);
    in_.open(path);
    if (!in_) throw MissingFileError(path_);
  }

  // Next non-empty record, stripped of a trailing '\r'. False at EOF.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw MalformedLineError(path_, line_number_, what);
  }

  const std::string& path() const { return path_; }
  std::size_t line_number() const { return line_number_; }

 private:
  std::ifstream in_;
  std::string path_;
  std::size_t line_number_ = 0;
};

void load_triples(const std::filesystem::path& path, Split split,
                  KnowledgeGraph& kg) {
  LineFile file(path);
  std::string line;
  while (file.next(line)) {
    auto fields = split_fields(line, 3);
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() ||
        fields[2].empty()) {
      file.fail("expected head_id \\t relation_id \\t tail_id");
    }
    auto head = kg.find_entity(fields[0]);
    if (!head) throw DanglingReferenceError(file.path(), fields[0]);
    auto rel = kg.find_relation(fields[1]);
    if (!rel) throw DanglingReferenceError(file.path(), fields[1]);
    auto tail = kg.find_entity(fields[2]);
    if (!tail) throw DanglingReferenceError(file.path(), fields[2]);
    kg.add_triple(split, Triple{*head, *rel, *tail});
  }
}

}  // namespace

DatasetSummary summarize(const KnowledgeGraph& kg) {
  return DatasetSummary{kg.entity_count(), kg.relation_count(),
                        kg.train().size(), kg.dev().size(), kg.test().size()};
}

std::string to_string(const DatasetSummary& s) {
  return std::to_string(s.entities) + " entities, " +
         std::to_string(s.relations) + " relations, " + std::to_string(s.train) +
         "/" + std::to_string(s.dev) + "/" + std::to_string(s.test) +
         " train/dev/test triples";
}

KnowledgeGraph load_dataset(const std::filesystem::path& dir,
                            const IngestConfig& config) {
  KnowledgeGraph kg;
  kg.set_dataset_name(dir.filename().string());

  {
    LineFile file(dir / "entity2text.tsv");
    std::string line;
    while (file.next(line)) {
      auto fields = split_fields(line, 3);
      if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
        file.fail("expected entity_id \\t name [\\t description]");
      }
      kg.add_entity(fields[0], fields[1], fields.size() > 2 ? fields[2] : "");
    }
  }

  {
    LineFile file(dir / "relation2text.tsv");
    std::string line;
    while (file.next(line)) {
      auto fields = split_fields(line, 3);
      if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
        file.fail("expected relation_id \\t text");
      }
      kg.add_relation(fields[0], fields[1], fields.size() > 2 ? fields[2] : "");
    }
  }

  if (std::filesystem::exists(dir / "entity2type.tsv")) {
    LineFile file(dir / "entity2type.tsv");
    std::string line;
    while (file.next(line)) {
      auto fields = split_fields(line, 2);
      if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
        file.fail("expected entity_id \\t category");
      }
      auto e = kg.find_entity(fields[0]);
      if (!e) throw DanglingReferenceError(file.path(), fields[0]);
      kg.add_category(*e, fields[1]);
    }
  }

  load_triples(dir / "train.tsv", Split::Train, kg);
  load_triples(dir / "valid.tsv", Split::Dev, kg);
  load_triples(dir / "test.tsv", Split::Test, kg);

  kg.finalize(config);
  return kg;
}

void save_kg(const KnowledgeGraph& kg, const std::filesystem::path& path) {
  BinaryWriter w(path);
  write_artifact_header(w, kKgMagic, kKgVersion);
  w.str(kg.dataset_name());
  w.str(kg.config().default_category);
  w.u32(kg.config().max_description_tokens);

  w.u32(static_cast<std::uint32_t>(kg.entity_count()));
  for (const auto& e : kg.entities()) {
    w.str(e.source_id);
    w.str(e.name);
    w.str(e.description);
    w.u32(static_cast<std::uint32_t>(e.categories.size()));
    for (const auto& c : e.categories) w.str(c);
  }
  w.u32(static_cast<std::uint32_t>(kg.relation_count()));
  for (const auto& r : kg.relations()) {
    w.str(r.source_id);
    w.str(r.name);
    w.str(r.description);
  }
  for (Split split : {Split::Train, Split::Dev, Split::Test}) {
    const auto& triples = kg.triples(split);
    w.u32(static_cast<std::uint32_t>(triples.size()));
    for (const auto& t : triples) {
      w.u32(t.head.value);
      w.u32(t.relation.value);
      w.u32(t.tail.value);
    }
  }
  w.close();
}

KnowledgeGraph load_kg(const std::filesystem::path& path) {
  BinaryReader r(path);
  expect_artifact_header(r, kKgMagic, kKgVersion);
  KnowledgeGraph kg;
  kg.set_dataset_name(r.str());
  IngestConfig config;
  config.default_category = r.str();
  config.max_description_tokens = r.u32();

  std::uint32_t entities = r.u32();
  for (std::uint32_t i = 0; i < entities; ++i) {
    std::string source = r.str();
    std::string name = r.str();
    std::string desc = r.str();
    EntityId id = kg.add_entity(std::move(source), std::move(name), std::move(desc));
    std::uint32_t cats = r.u32();
    for (std::uint32_t c = 0; c < cats; ++c) kg.add_category(id, r.str());
  }
  std::uint32_t relations = r.u32();
  for (std::uint32_t i = 0; i < relations; ++i) {
    std::string source = r.str();
    std::string name = r.str();
    std::string desc = r.str();
    kg.add_relation(std::move(source), std::move(name), std::move(desc));
  }
  for (Split split : {Split::Train, Split::Dev, Split::Test}) {
    std::uint32_t n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
      Triple t;
      t.head = EntityId(r.u32());
      t.relation = RelationId(r.u32());
      t.tail = EntityId(r.u32());
      kg.add_triple(split, t);
    }
  }
  kg.finalize(config);
  return kg;
}

}  // namespace kglp
