#include "formtopics/inference.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include <json.hpp>

#include "formtopics/errors.hpp"

namespace formtopics {

namespace {

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string pick_sorted(const std::set<std::string>& choices, RandomSource& rng,
                        InferenceResult& result) {
  std::vector<std::string> ordered(choices.begin(), choices.end());
  std::size_t index = rng.below(ordered.size());
  result.rng_draw = RngDraw{ordered, index};
  return ordered[index];
}

}  // namespace

SimilarityIndex build_similarity_index(const std::vector<Document>& docs, const TopicMap& topics,
                                       Dictionary dict, TfIdfModel tfidf, LsiModel lsi) {
  SimilarityIndex index;
  index.dict = std::move(dict);
  index.tfidf = std::move(tfidf);
  index.lsi = std::move(lsi);
  for (const Document& doc : docs) {
    auto it = topics.find(doc.doc_id);
    if (it == topics.end()) continue;
    if (it->second.empty()) {
      throw DataError("similarity index: empty topic for doc " + std::to_string(doc.doc_id));
    }
    TfIdfVector weights = apply_tfidf(to_bow(doc.features, index.dict), index.tfidf);
    index.entries.push_back({doc.doc_id, project(weights, index.lsi), it->second});
  }
  return index;
}

std::vector<Rule> load_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  nlohmann::json arr;
  try {
    in >> arr;
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!arr.is_array()) throw DataError(path.string() + ": expected a JSON array of rules");
  std::vector<Rule> rules;
  for (const auto& obj : arr) {
    Rule rule;
    try {
      rule.feature_string = to_lower(obj.at("feature_string").get<std::string>());
      rule.topic = obj.at("topic").get<std::string>();
      if (obj.contains("match_attributes")) {
        rule.match_attributes = obj["match_attributes"].get<std::vector<std::string>>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ": " + e.what());
    }
    if (rule.feature_string.empty()) {
      throw DataError(path.string() + ": rule with empty feature_string");
    }
    if (rule.topic.empty()) throw DataError(path.string() + ": rule with empty topic");
    rules.push_back(std::move(rule));
  }
  return rules;
}

bool rule_matches(const Rule& rule,
                  const std::vector<std::pair<std::string, std::string>>& raw_attributes) {
  for (const auto& [name, value] : raw_attributes) {
    if (std::find(rule.match_attributes.begin(), rule.match_attributes.end(), name) ==
        rule.match_attributes.end()) {
      continue;
    }
    if (to_lower(value).find(rule.feature_string) != std::string::npos) return true;
  }
  return false;
}

std::set<std::string> match_rules(
    const std::vector<std::pair<std::string, std::string>>& raw_attributes,
    const std::vector<Rule>& rules) {
  std::set<std::string> topics;
  for (const Rule& rule : rules) {
    if (rule_matches(rule, raw_attributes)) topics.insert(rule.topic);
  }
  return topics;
}

DataBank DataBank::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  nlohmann::json obj;
  try {
    in >> obj;
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!obj.is_object()) throw DataError(path.string() + ": expected topic -> value array object");
  DataBank bank;
  for (const auto& [topic, values] : obj.items()) {
    if (!values.is_array()) throw DataError(path.string() + ": pool for '" + topic + "' not an array");
    bank.add_pool(topic, values.get<std::vector<std::string>>());
  }
  return bank;
}

void DataBank::add_pool(const std::string& topic, std::vector<std::string> values) {
  std::set<std::string> distinct(values.begin(), values.end());
  if (distinct.size() != values.size()) {
    throw DataError("databank pool for '" + topic + "' contains duplicate values");
  }
  pools_[topic] = Pool{std::move(values), 0};
}

std::string DataBank::pick_value(const std::string& topic) {
  auto it = pools_.find(topic);
  if (it == pools_.end()) throw NoDatabankEntry(topic);
  Pool& pool = it->second;
  if (pool.cursor >= pool.values.size()) throw PoolExhausted(topic);
  return pool.values[pool.cursor++];
}

bool DataBank::has_topic(const std::string& topic) const { return pools_.count(topic) > 0; }

std::string_view method_name(InferenceMethod method) {
  switch (method) {
    case InferenceMethod::nl: return "NL";
    case InferenceMethod::rb: return "RB";
    case InferenceMethod::rb_nl_n: return "RB+NL-n";
    case InferenceMethod::rb_nl_m: return "RB+NL-m";
    case InferenceMethod::rb_nl_b: return "RB+NL-b";
    case InferenceMethod::random: return "Random";
  }
  return "?";
}

std::optional<InferenceMethod> method_from_name(std::string_view name) {
  std::string lower = to_lower(name);
  if (lower == "nl") return InferenceMethod::nl;
  if (lower == "rb") return InferenceMethod::rb;
  if (lower == "rb+nl-n" || lower == "rb-nl-n") return InferenceMethod::rb_nl_n;
  if (lower == "rb+nl-m" || lower == "rb-nl-m") return InferenceMethod::rb_nl_m;
  if (lower == "rb+nl-b" || lower == "rb-nl-b") return InferenceMethod::rb_nl_b;
  if (lower == "random") return InferenceMethod::random;
  return std::nullopt;
}

InferenceResult infer_nl(const FeatureVector& features, const SimilarityIndex& index,
                         double threshold, RandomSource& rng) {
  if (index.entries.empty()) throw DataError("infer_nl: empty similarity index");
  if (threshold < 0.0) throw std::invalid_argument("infer_nl: threshold must be >= 0");

  ConceptVector query = project(apply_tfidf(to_bow(features, index.dict), index.tfidf), index.lsi);

  std::vector<Neighbor> ranked;
  ranked.reserve(index.entries.size());
  for (const SimilarityEntry& entry : index.entries) {
    ranked.push_back({entry.doc_id, cosine_similarity(query, entry.vec)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.doc_id < b.doc_id;  // deterministic on ties
  });
  std::size_t top = std::min<std::size_t>(5, ranked.size());
  ranked.resize(top);

  std::map<int, const SimilarityEntry*> by_id;
  for (const SimilarityEntry& entry : index.entries) by_id[entry.doc_id] = &entry;

  InferenceResult result;
  result.method = InferenceMethod::nl;
  result.neighbors = ranked;
  result.topic = by_id.at(ranked.front().doc_id)->topic;

  double spread = ranked.front().similarity - ranked.back().similarity;
  if (spread < threshold) {
    result.vote_taken = true;
    std::map<std::string, int> votes;
    for (const Neighbor& neighbor : ranked) ++votes[by_id.at(neighbor.doc_id)->topic];
    int most = 0;
    for (const auto& [topic, count] : votes) most = std::max(most, count);
    std::set<std::string> winners;
    for (const auto& [topic, count] : votes) {
      if (count == most) winners.insert(topic);
    }
    if (winners.size() == 1) {
      result.topic = *winners.begin();
    } else {
      result.topic = pick_sorted(winners, rng, result);
    }
  }
  return result;
}

InferenceResult infer_rb(const std::vector<std::pair<std::string, std::string>>& raw_attributes,
                         const std::vector<Rule>& rules, RandomSource& rng) {
  InferenceResult result;
  result.method = InferenceMethod::rb;
  result.rb_candidates = match_rules(raw_attributes, rules);
  if (result.rb_candidates.empty()) {
    result.topic = std::string(kRandomFillTopic);
  } else if (result.rb_candidates.size() == 1) {
    result.topic = *result.rb_candidates.begin();
  } else {
    result.topic = pick_sorted(result.rb_candidates, rng, result);
  }
  return result;
}

InferenceResult infer_hybrid(const FeatureVector& features,
                             const std::vector<std::pair<std::string, std::string>>& raw_attributes,
                             const std::vector<Rule>& rules, const SimilarityIndex& index,
                             HybridMode mode, double threshold, RandomSource& rng) {
  InferenceMethod method = mode == HybridMode::no_match  ? InferenceMethod::rb_nl_n
                           : mode == HybridMode::multiple ? InferenceMethod::rb_nl_m
                                                          : InferenceMethod::rb_nl_b;
  std::set<std::string> candidates = match_rules(raw_attributes, rules);

  if (candidates.size() == 1) {
    InferenceResult result;
    result.method = method;
    result.rb_candidates = candidates;
    result.topic = *candidates.begin();
    return result;
  }

  if (candidates.empty()) {
    if (mode == HybridMode::multiple) {
      // Rules stay in charge of no-matches in this mode: random fill.
      InferenceResult result;
      result.method = method;
      result.topic = std::string(kRandomFillTopic);
      return result;
    }
    InferenceResult result = infer_nl(features, index, threshold, rng);
    result.method = method;
    return result;
  }

  // Two or more candidate topics.
  if (mode == HybridMode::no_match) {
    InferenceResult result;
    result.method = method;
    result.rb_candidates = candidates;
    result.topic = pick_sorted(candidates, rng, result);
    return result;
  }
  InferenceResult result = infer_nl(features, index, threshold, rng);
  result.method = method;
  result.rb_candidates = candidates;
  if (candidates.count(result.topic) == 0) {
    std::set<std::string> choices = candidates;
    choices.insert(result.topic);
    result.topic = pick_sorted(choices, rng, result);
  }
  return result;
}

}  // namespace formtopics
