#include "formtopics/corpus.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "formtopics/errors.hpp"

namespace formtopics {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kCorpusFormat = "formtopics-corpus";
constexpr int kCorpusVersion = 1;

[[noreturn]] void line_error(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
  throw DataError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return in;
}

}  // namespace

int Dictionary::id_of(const std::string& term) const {
  auto it = term_to_id.find(term);
  return it == term_to_id.end() ? -1 : it->second;
}

Dictionary build_dictionary(const std::vector<Document>& corpus) {
  if (corpus.empty()) throw DataError("cannot build a dictionary from an empty corpus");
  Dictionary dict;
  dict.n_docs = static_cast<int>(corpus.size());
  std::vector<int> last_doc_seen;  // per term, to count each document once
  for (const Document& doc : corpus) {
    for (const std::string& token : doc.features.tokens) {
      auto [it, inserted] = dict.term_to_id.try_emplace(token, dict.size());
      if (inserted) {
        dict.terms.push_back(token);
        dict.doc_freq.push_back(0);
        last_doc_seen.push_back(-1);
      }
      int id = it->second;
      if (last_doc_seen[id] != doc.doc_id) {
        last_doc_seen[id] = doc.doc_id;
        ++dict.doc_freq[id];
      }
    }
  }
  return dict;
}

BowVector to_bow(const FeatureVector& features, const Dictionary& dict) {
  std::map<int, int> counts;
  for (const std::string& token : features.tokens) {
    int id = dict.id_of(token);
    if (id >= 0) ++counts[id];
  }
  BowVector bow;
  bow.reserve(counts.size());
  for (const auto& [id, count] : counts) bow.push_back({id, count});
  return bow;
}

void save_corpus(const std::vector<Document>& corpus, const std::filesystem::path& path) {
  auto out = open_out(path);
  ordered_json header;
  header["format"] = kCorpusFormat;
  header["version"] = kCorpusVersion;
  header["n_docs"] = corpus.size();
  out << header.dump() << '\n';
  for (const Document& doc : corpus) {
    ordered_json line;
    line["doc_id"] = doc.doc_id;
    line["page_id"] = doc.page_id;
    line["element_path"] = doc.element_path;
    if (!doc.raw_attributes.empty()) {
      ordered_json attrs = ordered_json::array();
      for (const auto& [name, value] : doc.raw_attributes) {
        attrs.push_back(ordered_json::array({name, value}));
      }
      line["attributes"] = std::move(attrs);
    }
    line["tokens"] = doc.features.tokens;
    if (!doc.topic.empty()) line["topic"] = doc.topic;
    out << line.dump() << '\n';
  }
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty file, expected header");
  ++line_no;
  ordered_json header;
  try {
    header = ordered_json::parse(line);
  } catch (const ordered_json::parse_error& e) {
    line_error(path, line_no, std::string("bad header: ") + e.what());
  }
  if (!header.is_object() || header.value("format", "") != kCorpusFormat) {
    line_error(path, line_no, "not a corpus file (missing format header)");
  }

  std::vector<Document> corpus;
  std::set<int> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      line_error(path, line_no, std::string("bad document: ") + e.what());
    }
    Document doc;
    try {
      doc.doc_id = obj.at("doc_id").get<int>();
      doc.page_id = obj.at("page_id").get<std::string>();
      doc.element_path = obj.at("element_path").get<std::string>();
      doc.features.tokens = obj.at("tokens").get<std::vector<std::string>>();
      if (obj.contains("attributes")) {
        for (const auto& pair : obj["attributes"]) {
          doc.raw_attributes.emplace_back(pair.at(0).get<std::string>(),
                                          pair.at(1).get<std::string>());
        }
      }
      doc.topic = obj.value("topic", "");
    } catch (const ordered_json::exception& e) {
      line_error(path, line_no, std::string("bad document fields: ") + e.what());
    }
    if (!seen_ids.insert(doc.doc_id).second) {
      line_error(path, line_no, "duplicate doc_id " + std::to_string(doc.doc_id));
    }
    if (doc.doc_id != static_cast<int>(corpus.size())) {
      line_error(path, line_no, "doc_id " + std::to_string(doc.doc_id) +
                                    " out of order; ids must be dense 0..N-1 in file order");
    }
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

void save_topics(const TopicMap& topics, const std::filesystem::path& path) {
  auto out = open_out(path);
  ordered_json obj = ordered_json::object();
  for (const auto& [doc_id, topic] : topics) obj[std::to_string(doc_id)] = topic;
  out << obj.dump(2) << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

TopicMap load_topics(const std::filesystem::path& path) {
  auto in = open_in(path);
  ordered_json obj;
  try {
    in >> obj;
  } catch (const ordered_json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!obj.is_object()) throw DataError(path.string() + ": expected a flat JSON object");
  TopicMap topics;
  for (const auto& [key, value] : obj.items()) {
    int doc_id = 0;
    try {
      doc_id = std::stoi(key);
    } catch (const std::exception&) {
      throw DataError(path.string() + ": key '" + key + "' is not a doc id");
    }
    if (!value.is_string() || value.get<std::string>().empty()) {
      throw DataError(path.string() + ": topic for doc " + key + " must be a non-empty string");
    }
    if (!topics.emplace(doc_id, value.get<std::string>()).second) {
      throw DataError(path.string() + ": duplicate doc id " + key);
    }
  }
  return topics;
}

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path) {
  auto out = open_out(path);
  ordered_json obj;
  obj["terms"] = dict.terms;
  obj["doc_freq"] = dict.doc_freq;
  obj["n_docs"] = dict.n_docs;
  out << obj.dump() << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

Dictionary load_dictionary(const std::filesystem::path& path) {
  auto in = open_in(path);
  ordered_json obj;
  try {
    in >> obj;
  } catch (const ordered_json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  Dictionary dict;
  try {
    dict.terms = obj.at("terms").get<std::vector<std::string>>();
    dict.doc_freq = obj.at("doc_freq").get<std::vector<int>>();
    dict.n_docs = obj.at("n_docs").get<int>();
  } catch (const ordered_json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (dict.doc_freq.size() != dict.terms.size()) {
    throw DataError(path.string() + ": terms and doc_freq lengths differ");
  }
  for (std::size_t id = 0; id < dict.terms.size(); ++id) {
    if (!dict.term_to_id.emplace(dict.terms[id], static_cast<int>(id)).second) {
      throw DataError(path.string() + ": duplicate term '" + dict.terms[id] + "'");
    }
    int df = dict.doc_freq[id];
    if (df < 1 || df > dict.n_docs) {
      throw DataError(path.string() + ": doc_freq out of range for term '" + dict.terms[id] + "'");
    }
  }
  return dict;
}

void validate_topics(const TopicMap& topics, const std::vector<Document>& corpus) {
  for (const auto& [doc_id, topic] : topics) {
    if (doc_id < 0 || doc_id >= static_cast<int>(corpus.size())) {
      throw DataError("topic map references unknown doc_id " + std::to_string(doc_id));
    }
  }
}

}  // namespace formtopics
