#include <unistd.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "kglp/dataset_io.hpp"
#include "support.hpp"

using namespace kglp;
using kglp::test::eid;
using kglp::test::fixture_dir;

namespace {

// Line-counting oracle: reads the fixture files directly, independent of
// load_dataset.
struct RawCounts {
  std::size_t entities = 0, relations = 0, train = 0, dev = 0, test = 0;
};

std::size_t count_records(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line != "\r") ++n;
  }
  return n;
}

RawCounts oracle_counts(const std::filesystem::path& dir) {
  RawCounts c;
  c.entities = count_records(dir / "entity2text.tsv");
  c.relations = count_records(dir / "relation2text.tsv");
  c.train = count_records(dir / "train.tsv");
  c.dev = count_records(dir / "valid.tsv");
  c.test = count_records(dir / "test.tsv");
  return c;
}

// Brute-force category_freq recount straight from the fixture files.
std::map<std::string, std::uint64_t> oracle_category_freq(
    const std::filesystem::path& dir) {
  std::map<std::string, std::set<std::string>> cats_by_entity;
  {
    std::ifstream in(dir / "entity2text.tsv");
    std::string line;
    while (std::getline(in, line)) {
      auto tab = line.find('\t');
      if (tab != std::string::npos) cats_by_entity[line.substr(0, tab)];
    }
  }
  {
    std::ifstream in(dir / "entity2type.tsv");
    std::string line;
    while (std::getline(in, line)) {
      auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      cats_by_entity[line.substr(0, tab)].insert(line.substr(tab + 1));
    }
  }
  for (auto& [entity, cats] : cats_by_entity) {
    if (cats.empty()) cats.insert("unknown");
  }
  std::map<std::string, std::uint64_t> freq;
  std::ifstream in(dir / "train.tsv");
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string head, rel, tail;
    std::getline(fields, head, '\t');
    std::getline(fields, rel, '\t');
    std::getline(fields, tail, '\t');
    std::set<std::string> members = {head, tail};
    for (const auto& m : members) {
      for (const auto& c : cats_by_entity.at(m)) ++freq[c];
    }
  }
  return freq;
}

// Minimal dataset writer for error-path tests.
struct TempDataset {
  std::filesystem::path dir;

  TempDataset() {
    dir = std::filesystem::temp_directory_path() /
          ("kglp_kg_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter()++));
    std::filesystem::create_directories(dir);
    file("entity2text.tsv", "A\talpha\tfirst letter\nB\tbeta\t\n");
    file("relation2text.tsv", "r\trelated to\n");
    file("train.tsv", "A\tr\tB\n");
    file("valid.tsv", "");
    file("test.tsv", "B\tr\tA\n");
  }

  ~TempDataset() { std::filesystem::remove_all(dir); }

  void file(const std::string& name, const std::string& content) {
    std::ofstream out(dir / name);
    out << content;
  }

  static int& counter() {
    static int n = 0;
    return n;
  }
};

}  // namespace

TEST_CASE("fixture loads with the expected counts") {
  const auto& kg = kglp::test::FixtureBundle::get().kg;
  auto summary = summarize(kg);
  CHECK(summary.entities == 12);
  CHECK(summary.relations == 3);
  CHECK(summary.train == 20);
  CHECK(summary.dev == 4);
  CHECK(summary.test == 4);

  RawCounts oracle = oracle_counts(fixture_dir());
  CHECK(summary.entities == oracle.entities);
  CHECK(summary.relations == oracle.relations);
  CHECK(summary.train == oracle.train);
  CHECK(summary.dev == oracle.dev);
  CHECK(summary.test == oracle.test);
}

TEST_CASE("category_freq equals a brute-force recount") {
  const auto& kg = kglp::test::FixtureBundle::get().kg;
  auto oracle = oracle_category_freq(fixture_dir());
  std::map<std::string, std::uint64_t> got(kg.category_freq().begin(),
                                           kg.category_freq().end());
  CHECK(got == oracle);
  // Spot values, recounted by hand from the fixture.
  CHECK(got.at("person") == 17);
  CHECK(got.at("university") == 15);
  CHECK(got.at("city") == 7);
  CHECK(got.at("state") == 3);
  CHECK(got.at("unknown") == 1);
  CHECK(!got.contains("borough"));
}

TEST_CASE("category_freq covers every category of train entities") {
  const auto& kg = kglp::test::FixtureBundle::get().kg;
  std::set<EntityId> in_train;
  for (const auto& t : kg.train()) {
    in_train.insert(t.head);
    in_train.insert(t.tail);
  }
  for (EntityId e : in_train) {
    for (const auto& c : kg.entity(e).categories) {
      CHECK(kg.category_freq().contains(c));
    }
  }
}

TEST_CASE("lowest_freq_category picks the rarest, ties lexicographic") {
  const auto& kg = kglp::test::FixtureBundle::get().kg;
  // multi-category with distinct counts: state(3) < city(7)
  CHECK(kg.lowest_freq_category(eid(kg, "E10")) == "state");
  // single category
  CHECK(kg.lowest_freq_category(eid(kg, "E00")) == "person");
  // entity absent from train: both categories count 0, lexicographic tie-break
  CHECK(kg.lowest_freq_category(eid(kg, "E11")) == "borough");
  // no category in the dataset: injected default
  CHECK(kg.lowest_freq_category(eid(kg, "E08")) == "unknown");
  CHECK_THROWS_AS(kg.lowest_freq_category(EntityId(999)), UnknownEntityError);
}

TEST_CASE("entities without type lines receive the default category") {
  const auto& kg = kglp::test::FixtureBundle::get().kg;
  CHECK(kg.entity(eid(kg, "E08")).categories == std::vector<std::string>{"unknown"});
}

TEST_CASE("empty train file yields an empty split and empty category_freq") {
  TempDataset ds;
  ds.file("train.tsv", "");
  KnowledgeGraph kg = load_dataset(ds.dir);
  CHECK(kg.train().empty());
  CHECK(kg.category_freq().empty());
  CHECK(kg.entity_count() == 2);
}

TEST_CASE("missing files are a hard error") {
  TempDataset ds;
  std::filesystem::remove(ds.dir / "relation2text.tsv");
  CHECK_THROWS_AS(load_dataset(ds.dir), MissingFileError);
}

TEST_CASE("malformed lines report their line number") {
  TempDataset ds;
  ds.file("train.tsv", "A\tr\tB\nA\tonly-two-fields\n");
  try {
    load_dataset(ds.dir);
    FAIL("expected MalformedLineError");
  } catch (const MalformedLineError& e) {
    CHECK(e.line_number() == 2);
  }
}

TEST_CASE("dangling references are a hard error") {
  TempDataset ds;
  ds.file("test.tsv", "B\tr\tNOPE\n");
  CHECK_THROWS_AS(load_dataset(ds.dir), DanglingReferenceError);

  TempDataset ds2;
  ds2.file("entity2type.tsv", "GHOST\tcategory\n");
  CHECK_THROWS_AS(load_dataset(ds2.dir), DanglingReferenceError);
}

TEST_CASE("duplicate ids in the text files are rejected") {
  TempDataset ds;
  ds.file("entity2text.tsv", "A\talpha\t\nA\talpha again\t\n");
  CHECK_THROWS_AS(load_dataset(ds.dir), DuplicateIdError);
}

TEST_CASE("overlapping splits are rejected") {
  TempDataset ds;
  ds.file("valid.tsv", "A\tr\tB\n");  // also in train
  CHECK_THROWS_AS(load_dataset(ds.dir), ValidationError);
}

TEST_CASE("descriptions may be empty or carry tabs") {
  TempDataset ds;
  ds.file("entity2text.tsv", "A\talpha\nB\tbeta\tdesc\twith\ttabs\n");
  ds.file("train.tsv", "");
  ds.file("test.tsv", "");
  KnowledgeGraph kg = load_dataset(ds.dir);
  CHECK(kg.entity(*kg.find_entity("A")).description.empty());
  CHECK(kg.entity(*kg.find_entity("B")).description == "desc\twith\ttabs");
}

TEST_CASE("kg binary artifact round-trips the structure") {
  const auto& kg = kglp::test::FixtureBundle::get().kg;
  auto path = std::filesystem::temp_directory_path() / "kglp_kg_roundtrip.bin";
  save_kg(kg, path);
  KnowledgeGraph loaded = load_kg(path);

  CHECK(summarize(loaded) == summarize(kg));
  CHECK(loaded.dataset_name() == kg.dataset_name());
  CHECK(loaded.category_freq() == kg.category_freq());
  for (const auto& e : kg.entities()) {
    const Entity& other = loaded.entity(e.id);
    CHECK(other.source_id == e.source_id);
    CHECK(other.name == e.name);
    CHECK(other.description == e.description);
    CHECK(other.categories == e.categories);
  }
  for (Split s : {Split::Train, Split::Dev, Split::Test}) {
    CHECK(loaded.triples(s) == kg.triples(s));
  }

  // Identical bytes when re-serialized.
  auto path2 = std::filesystem::temp_directory_path() / "kglp_kg_roundtrip2.bin";
  save_kg(loaded, path2);
  std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
  std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
  std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
  CHECK(bytes_a == bytes_b);
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("train_count tracks multiplicity") {
  const auto& kg = kglp::test::FixtureBundle::get().kg;
  Triple t{eid(kg, "E00"), *kg.find_relation("R0"), eid(kg, "E04")};
  CHECK(kg.train_count(t) == 1);
  CHECK(kg.train_contains(t));
  Triple absent{eid(kg, "E11"), *kg.find_relation("R0"), eid(kg, "E04")};
  CHECK(kg.train_count(absent) == 0);
}
