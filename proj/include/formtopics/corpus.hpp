#ifndef FORMTOPICS_CORPUS_HPP
#define FORMTOPICS_CORPUS_HPP

#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "formtopics/extract.hpp"

namespace formtopics {

/// One training/inference unit: the feature vector of one input field.
/// Document and feature vector are interchangeable downstream.
struct Document {
  int doc_id = 0;  // dense 0..N-1 in corpus order
  std::string page_id;
  std::string element_path;
  std::vector<std::pair<std::string, std::string>> raw_attributes;
  FeatureVector features;
  std::string topic;  // empty until labeled

  bool operator==(const Document&) const = default;
};

/// Term <-> id map with document frequencies. Term ids are dense 0..V-1 in
/// first-appearance order, which makes dictionary construction deterministic.
struct Dictionary {
  std::unordered_map<std::string, int> term_to_id;
  std::vector<std::string> terms;  // id -> term
  std::vector<int> doc_freq;       // per term: number of documents containing it
  int n_docs = 0;

  int size() const { return static_cast<int>(terms.size()); }
  int id_of(const std::string& term) const;  // -1 when absent
};

struct BowEntry {
  int term_id;
  int count;  // >= 1

  bool operator==(const BowEntry&) const = default;
};

/// Sparse word counts, term ids strictly increasing, no zero counts.
using BowVector = std::vector<BowEntry>;

/// doc_id -> topic. The paper's mapping table MT.
using TopicMap = std::map<int, std::string>;

/// Scans the corpus once; doc_freq counts documents, not occurrences.
Dictionary build_dictionary(const std::vector<Document>& corpus);

/// Counts in-dictionary tokens; out-of-dictionary tokens are dropped so the
/// trained space stays fixed at inference time.
BowVector to_bow(const FeatureVector& features, const Dictionary& dict);

// corpus.jsonl: a header line followed by one document object per line.
void save_corpus(const std::vector<Document>& corpus, const std::filesystem::path& path);
std::vector<Document> load_corpus(const std::filesystem::path& path);

// topics.json: flat object, doc id (as string) -> topic.
void save_topics(const TopicMap& topics, const std::filesystem::path& path);
TopicMap load_topics(const std::filesystem::path& path);

// dictionary.json: term list in id order, doc_freq array, n_docs.
void save_dictionary(const Dictionary& dict, const std::filesystem::path& path);
Dictionary load_dictionary(const std::filesystem::path& path);

/// Every mapped doc_id must exist in the corpus.
void validate_topics(const TopicMap& topics, const std::vector<Document>& corpus);

}  // namespace formtopics

#endif
