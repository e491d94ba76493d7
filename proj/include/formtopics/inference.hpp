#ifndef FORMTOPICS_INFERENCE_HPP
#define FORMTOPICS_INFERENCE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "formtopics/corpus.hpp"
#include "formtopics/random.hpp"
#include "formtopics/semantic.hpp"

namespace formtopics {

/// Concept vectors of the labeled training documents plus the models needed
/// to project a query into the same space. Immutable once built.
struct SimilarityEntry {
  int doc_id;
  ConceptVector vec;
  std::string topic;
};

struct SimilarityIndex {
  Dictionary dict;
  TfIdfModel tfidf;
  LsiModel lsi;
  std::vector<SimilarityEntry> entries;
};

/// Entries come from the documents present in `topics`; every entry carries a
/// non-empty topic.
SimilarityIndex build_similarity_index(const std::vector<Document>& docs, const TopicMap& topics,
                                       Dictionary dict, TfIdfModel tfidf, LsiModel lsi);

/// Substring rule: matches when feature_string occurs inside the lowercased
/// value of any listed attribute.
struct Rule {
  std::string feature_string;  // lowercase, non-empty
  std::string topic;
  std::vector<std::string> match_attributes = {"id", "name"};
};

// rules.json: array of {feature_string, topic, match_attributes?}.
std::vector<Rule> load_rules(const std::filesystem::path& path);

bool rule_matches(const Rule& rule,
                  const std::vector<std::pair<std::string, std::string>>& raw_attributes);

/// Distinct topics over all matching rules; empty set means no-match.
std::set<std::string> match_rules(
    const std::vector<std::pair<std::string, std::string>>& raw_attributes,
    const std::vector<Rule>& rules);

/// Topic -> ordered value pool with a cursor, so successive picks for one
/// topic never repeat a value.
class DataBank {
 public:
  DataBank() = default;

  static DataBank load(const std::filesystem::path& path);  // databank.json

  void add_pool(const std::string& topic, std::vector<std::string> values);

  /// pool[cursor], then advance. Unknown topic -> NoDatabankEntry; consumed
  /// pool -> PoolExhausted.
  std::string pick_value(const std::string& topic);

  bool has_topic(const std::string& topic) const;

 private:
  struct Pool {
    std::vector<std::string> values;
    std::size_t cursor = 0;
  };
  std::map<std::string, Pool> pools_;
};

enum class InferenceMethod { nl, rb, rb_nl_n, rb_nl_m, rb_nl_b, random };

std::string_view method_name(InferenceMethod method);  // "NL", "RB", "RB+NL-n", ...
std::optional<InferenceMethod> method_from_name(std::string_view name);

/// Stands in for the rule-based behavior of filling unmatched fields with a
/// random string; scored as whatever topic it is, i.e. never correct.
inline constexpr std::string_view kRandomFillTopic = "__random_string__";

struct Neighbor {
  int doc_id;
  double similarity;
};

struct RngDraw {
  std::vector<std::string> choices;  // canonical (sorted) order
  std::size_t chosen;
};

/// Trace of one inference: the answer plus everything needed to replay it.
struct InferenceResult {
  std::string topic;
  InferenceMethod method = InferenceMethod::nl;
  std::vector<Neighbor> neighbors;  // top 5, similarity descending
  std::set<std::string> rb_candidates;
  bool vote_taken = false;
  std::optional<RngDraw> rng_draw;
};

/// Projects the query through dictionary -> tf-idf -> LSI, ranks the index by
/// cosine similarity and answers with the top entry's topic; when the top-5
/// similarity spread is below `threshold`, the most frequent topic among the
/// top 5 wins, random among ties. Fewer than 5 entries vote as a whole.
InferenceResult infer_nl(const FeatureVector& features, const SimilarityIndex& index,
                         double threshold, RandomSource& rng);

/// Plain rule-based baseline: single candidate -> that topic; several ->
/// uniform random among them; none -> the random-fill topic.
InferenceResult infer_rb(const std::vector<std::pair<std::string, std::string>>& raw_attributes,
                         const std::vector<Rule>& rules, RandomSource& rng);

enum class HybridMode { no_match, multiple, both };

/// Rule matching first, semantic inference where the mode says so:
/// no_match   rules silent -> NL answers; one candidate -> it; several ->
///            uniform random among the candidates.
/// multiple   several candidates -> NL answer if it is one of them, else
///            uniform random among candidates plus the NL answer; one -> it;
///            none -> the random-fill topic.
/// both       the two combined.
/// infer_nl errors surface only when the NL side is actually consulted.
InferenceResult infer_hybrid(const FeatureVector& features,
                             const std::vector<std::pair<std::string, std::string>>& raw_attributes,
                             const std::vector<Rule>& rules, const SimilarityIndex& index,
                             HybridMode mode, double threshold, RandomSource& rng);

}  // namespace formtopics

#endif
