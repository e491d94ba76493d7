#include "formtopics/labeler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace formtopics {

int dominant_concept(const ConceptVector& v) {
  int best = 0;
  double best_abs = v.empty() ? 0.0 : std::fabs(v[0]);
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    double a = std::fabs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

ConceptAssignment assign_concepts(const std::vector<ConceptVector>& doc_vectors) {
  ConceptAssignment out;
  for (int doc_id = 0; doc_id < static_cast<int>(doc_vectors.size()); ++doc_id) {
    out[doc_id] = dominant_concept(doc_vectors[doc_id]);
  }
  return out;
}

ClusterMap cluster_by_concept(const ConceptAssignment& assignments) {
  ClusterMap clusters;
  for (const auto& [doc_id, concept_id] : assignments) {
    clusters[concept_id].push_back(doc_id);
  }
  for (auto& [concept_id, docs] : clusters) std::sort(docs.begin(), docs.end());
  return clusters;
}

namespace {

void print_document(std::ostream& out, const Document& doc) {
  out << "  doc " << doc.doc_id << "  [" << doc.page_id << " : " << doc.element_path << "]  ";
  for (std::size_t i = 0; i < doc.features.tokens.size(); ++i) {
    if (i) out << ' ';
    out << doc.features.tokens[i];
  }
  if (!doc.topic.empty()) out << "  (labeled: " << doc.topic << ")";
  out << '\n';
}

}  // namespace

SessionOutcome run_labeling_session(const std::vector<Document>& docs, const ClusterMap& clusters,
                                    TopicMap initial, std::istream& commands, std::ostream& out) {
  SessionOutcome outcome;
  outcome.topics = std::move(initial);

  std::set<int> pending;
  for (const auto& [concept_id, members] : clusters) {
    for (int doc_id : members) {
      if (outcome.topics.find(doc_id) == outcome.topics.end()) pending.insert(doc_id);
    }
  }

  // Biggest clusters first, so the annotator lands the big wins early.
  std::deque<int> queue;
  {
    std::vector<int> order;
    for (const auto& [concept_id, members] : clusters) order.push_back(concept_id);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return clusters.at(a).size() > clusters.at(b).size();
    });
    queue.assign(order.begin(), order.end());
  }

  auto doc_by_id = [&](int doc_id) -> const Document* {
    if (doc_id < 0 || doc_id >= static_cast<int>(docs.size())) return nullptr;
    return &docs[doc_id];
  };

  // Returns true when this was an override of an existing label.
  auto label_doc = [&](int doc_id, const std::string& topic) {
    auto [it, inserted] = outcome.topics.emplace(doc_id, topic);
    if (!inserted) {
      out << "  override: doc " << doc_id << " '" << it->second << "' -> '" << topic << "'\n";
      it->second = topic;
    }
    pending.erase(doc_id);
    return !inserted;
  };

  std::string line;
  while (!queue.empty() && !pending.empty()) {
    int concept_id = queue.front();
    queue.pop_front();
    const std::vector<int>& members = clusters.at(concept_id);
    std::vector<int> cluster_pending;
    for (int doc_id : members) {
      if (pending.count(doc_id)) cluster_pending.push_back(doc_id);
    }
    if (cluster_pending.empty()) continue;

    out << "cluster " << concept_id << " (" << cluster_pending.size() << " unlabeled of "
        << members.size() << ")\n";
    for (int doc_id : cluster_pending) {
      if (const Document* doc = doc_by_id(doc_id)) print_document(out, *doc);
    }

    bool cluster_done = false;
    while (!cluster_done) {
      out << "[cluster " << concept_id << "]> " << std::flush;
      if (!std::getline(commands, line)) {
        out << "\ninput closed, " << pending.size() << " document(s) still unlabeled\n";
        outcome.completed = pending.empty();
        return outcome;
      }
      out << line << '\n';  // echo, so transcript-driven runs are auditable
      std::istringstream words(line);
      std::string command;
      words >> command;
      if (command.empty()) continue;

      if (command == "label") {
        std::string topic;
        words >> topic;
        if (topic.empty()) {
          out << "  usage: label <topic>\n";
          continue;
        }
        for (int doc_id : cluster_pending) {
          if (pending.count(doc_id)) label_doc(doc_id, topic);
        }
        outcome.decisions.push_back({"cluster " + std::to_string(concept_id), topic});
        cluster_done = true;
      } else if (command == "doc") {
        int doc_id = -1;
        std::string topic;
        words >> doc_id >> topic;
        if (topic.empty() || doc_by_id(doc_id) == nullptr) {
          out << "  usage: doc <id> <topic>\n";
          continue;
        }
        bool overridden = label_doc(doc_id, topic);
        outcome.decisions.push_back(
            {"doc " + std::to_string(doc_id) + (overridden ? " override" : ""), topic});
        bool any_left = std::any_of(cluster_pending.begin(), cluster_pending.end(),
                                    [&](int id) { return pending.count(id) > 0; });
        cluster_done = !any_left;
      } else if (command == "show") {
        int doc_id = -1;
        words >> doc_id;
        if (const Document* doc = doc_by_id(doc_id)) {
          print_document(out, *doc);
        } else {
          out << "  no such document\n";
        }
      } else if (command == "skip") {
        queue.push_back(concept_id);
        cluster_done = true;
      } else if (command == "save") {
        out << "saving with " << pending.size() << " document(s) unlabeled\n";
        outcome.completed = pending.empty();
        return outcome;
      } else {
        out << "  commands: label <topic> | doc <id> <topic> | show <id> | skip | save\n";
      }
    }
  }

  outcome.completed = pending.empty();
  out << (outcome.completed ? "all documents labeled\n" : "session ended with pending documents\n");
  return outcome;
}

}  // namespace formtopics
