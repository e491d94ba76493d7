#include "formtopics/corpus.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "formtopics/errors.hpp"
#include "test_support.hpp"

using formtopics::BowEntry;
using formtopics::build_dictionary;
using formtopics::DataError;
using formtopics::Dictionary;
using formtopics::Document;
using formtopics::to_bow;

namespace {

Document make_doc(int id, std::vector<std::string> tokens, std::string page = "page",
                  std::string topic = "") {
  Document doc;
  doc.doc_id = id;
  doc.page_id = std::move(page);
  doc.element_path = "0/" + std::to_string(id);
  doc.features.tokens = std::move(tokens);
  doc.topic = std::move(topic);
  return doc;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("formtopics-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("dictionary over the john-likes-cat document") {
  auto dict = build_dictionary({make_doc(0, {"john", "likes", "cat", "mary", "likes", "cat"})});
  CHECK(dict.size() == 4);
  CHECK(dict.n_docs == 1);
  for (int df : dict.doc_freq) CHECK(df == 1);
  CHECK(dict.id_of("likes") >= 0);
  CHECK(dict.id_of("dog") == -1);
}

TEST_CASE("two identical documents double every doc_freq") {
  std::vector<std::string> tokens = {"john", "likes", "cat", "mary", "likes", "cat"};
  auto dict = build_dictionary({make_doc(0, tokens), make_doc(1, tokens)});
  CHECK(dict.size() == 4);
  CHECK(dict.n_docs == 2);
  for (int df : dict.doc_freq) CHECK(df == 2);
}

TEST_CASE("doc_freq matches a brute-force membership scan") {
  std::vector<Document> corpus = {
      make_doc(0, {"a", "b", "b"}),
      make_doc(1, {"a", "c"}),
      make_doc(2, {"a", "b", "d", "d", "d"}),
  };
  auto dict = build_dictionary(corpus);
  for (int t = 0; t < dict.size(); ++t) {
    int count = 0;
    for (const Document& doc : corpus) {
      const auto& tokens = doc.features.tokens;
      if (std::find(tokens.begin(), tokens.end(), dict.terms[t]) != tokens.end()) ++count;
    }
    CHECK(dict.doc_freq[t] == count);
  }
}

TEST_CASE("empty corpus cannot be trained on") {
  CHECK_THROWS_AS(build_dictionary({}), DataError);
}

TEST_CASE("to_bow counts the section 3.2 example") {
  auto dict = build_dictionary({make_doc(0, {"john", "likes", "cat", "mary", "likes", "cat"})});
  auto bow = to_bow({{"john", "likes", "cat", "mary", "likes", "cat"}}, dict);
  REQUIRE(bow.size() == 4);
  auto count_of = [&](const std::string& term) {
    for (const BowEntry& entry : bow) {
      if (dict.terms[entry.term_id] == term) return entry.count;
    }
    return 0;
  };
  CHECK(count_of("john") == 1);
  CHECK(count_of("likes") == 2);
  CHECK(count_of("cat") == 2);
  CHECK(count_of("mary") == 1);
  for (std::size_t i = 1; i < bow.size(); ++i) CHECK(bow[i - 1].term_id < bow[i].term_id);
}

TEST_CASE("to_bow drops out-of-dictionary tokens and handles empty input") {
  auto dict = build_dictionary({make_doc(0, {"known"})});
  CHECK(to_bow({{}}, dict).empty());
  CHECK(to_bow({{"unknown", "tokens", "only"}}, dict).empty());
}

TEST_CASE("to_bow is permutation invariant") {
  auto dict = build_dictionary({make_doc(0, {"a", "b", "c", "d", "e"})});
  std::vector<std::string> tokens = {"a", "b", "b", "c", "c", "c", "e"};
  auto expected = to_bow({tokens}, dict);
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    std::shuffle(tokens.begin(), tokens.end(), rng);
    CHECK(to_bow({tokens}, dict) == expected);
  }
}

TEST_CASE("corpus save/load round-trips, including labels and attributes") {
  TempDir tmp;
  std::vector<Document> corpus;
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    Document doc = make_doc(i, {"tok" + std::to_string(rng() % 17), "x"},
                            "form" + std::to_string(i % 7), i % 4 == 0 ? "email" : "");
    if (i % 3 == 0) doc.raw_attributes = {{"id", "field" + std::to_string(i)}, {"type", "text"}};
    corpus.push_back(std::move(doc));
  }
  auto path = tmp.path / "corpus.jsonl";
  formtopics::save_corpus(corpus, path);
  auto loaded = formtopics::load_corpus(path);
  CHECK(loaded == corpus);

  // Canonical re-save is byte-identical.
  auto path2 = tmp.path / "corpus2.jsonl";
  formtopics::save_corpus(loaded, path2);
  CHECK(read_all(path) == read_all(path2));
}

TEST_CASE("empty corpus saves a header-only file that loads back empty") {
  TempDir tmp;
  auto path = tmp.path / "empty.jsonl";
  formtopics::save_corpus({}, path);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 1);
  CHECK(formtopics::load_corpus(path).empty());
}

TEST_CASE("duplicate and out-of-order doc ids are rejected with a line number") {
  TempDir tmp;
  auto path = tmp.path / "bad.jsonl";
  {
    std::ofstream out(path);
    out << R"({"format":"formtopics-corpus","version":1})" << "\n";
    out << R"({"doc_id":0,"page_id":"p","element_path":"0","tokens":["a"]})" << "\n";
    out << R"({"doc_id":0,"page_id":"p","element_path":"1","tokens":["b"]})" << "\n";
  }
  CHECK_THROWS_WITH_AS(formtopics::load_corpus(path), doctest::Contains(":3:"), DataError);
}

TEST_CASE("malformed json reports its line number") {
  TempDir tmp;
  auto path = tmp.path / "bad.jsonl";
  {
    std::ofstream out(path);
    out << R"({"format":"formtopics-corpus","version":1})" << "\n";
    out << "{not json\n";
  }
  CHECK_THROWS_WITH_AS(formtopics::load_corpus(path), doctest::Contains(":2:"), DataError);
}

TEST_CASE("a file without the corpus header is rejected") {
  TempDir tmp;
  auto path = tmp.path / "noheader.jsonl";
  {
    std::ofstream out(path);
    out << R"({"doc_id":0,"page_id":"p","element_path":"0","tokens":[]})" << "\n";
  }
  CHECK_THROWS_AS(formtopics::load_corpus(path), DataError);
}

TEST_CASE("topics and dictionary files round-trip") {
  TempDir tmp;
  formtopics::TopicMap topics = {{0, "email"}, {3, "password"}, {11, "first_name"}};
  formtopics::save_topics(topics, tmp.path / "topics.json");
  CHECK(formtopics::load_topics(tmp.path / "topics.json") == topics);

  auto dict = build_dictionary({make_doc(0, {"a", "b"}), make_doc(1, {"b", "c", "c"})});
  formtopics::save_dictionary(dict, tmp.path / "dict.json");
  auto loaded = formtopics::load_dictionary(tmp.path / "dict.json");
  CHECK(loaded.terms == dict.terms);
  CHECK(loaded.doc_freq == dict.doc_freq);
  CHECK(loaded.n_docs == dict.n_docs);
  CHECK(loaded.term_to_id == dict.term_to_id);
}

TEST_CASE("topic maps that reference unknown documents are rejected") {
  std::vector<Document> corpus = {make_doc(0, {"a"})};
  formtopics::TopicMap topics = {{5, "email"}};
  CHECK_THROWS_AS(formtopics::validate_topics(topics, corpus), DataError);
}
