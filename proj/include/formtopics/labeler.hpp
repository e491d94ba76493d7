#ifndef FORMTOPICS_LABELER_HPP
#define FORMTOPICS_LABELER_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "formtopics/corpus.hpp"
#include "formtopics/semantic.hpp"

namespace formtopics {

/// doc_id -> index of the latent concept where the document's absolute
/// coordinate is maximal.
using ConceptAssignment = std::map<int, int>;

/// concept index -> doc ids mapped to it; empty concepts are omitted.
using ClusterMap = std::map<int, std::vector<int>>;

/// argmax over dimensions of |weight|; ties (including the zero vector) go to
/// the lowest index.
int dominant_concept(const ConceptVector& v);

ConceptAssignment assign_concepts(const std::vector<ConceptVector>& doc_vectors);

ClusterMap cluster_by_concept(const ConceptAssignment& assignments);

struct SessionDecision {
  std::string scope;  // "cluster <c>" or "doc <id>"
  std::string topic;
};

struct SessionOutcome {
  TopicMap topics;
  std::vector<SessionDecision> decisions;
  bool completed = false;  // false: channel closed or saved with pending docs
};

/// Terminal labeling loop. Clusters are presented largest first; commands are
/// line-delimited so a transcript file can drive the session unattended:
///
///   label <topic>      label every pending document of the current cluster
///   doc <id> <topic>   label (or override) one document
///   show <id>          print a document again
///   skip               push the current cluster to the back of the queue
///   save               stop now, keeping the partial map
///
/// End of input behaves like save: the partial map is returned and a later
/// session can resume from it via `initial`.
SessionOutcome run_labeling_session(const std::vector<Document>& docs, const ClusterMap& clusters,
                                    TopicMap initial, std::istream& commands, std::ostream& out);

}  // namespace formtopics

#endif
