#ifndef FORMTOPICS_EXTRACT_HPP
#define FORMTOPICS_EXTRACT_HPP

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "formtopics/dom.hpp"

namespace formtopics {

/// Controls feature extraction: which attributes contribute tokens, which
/// tags count as labels, and how far the label search may climb.
struct ExtractionConfig {
  std::vector<std::string> attribute_list = {"id", "name", "type", "placeholder", "maxlength"};
  std::vector<std::string> tag_list = {"label", "span", "small"};
  int max_iterations = 3;
  std::set<std::string> stopwords;  // default empty: label text is kept verbatim

  bool lists_attribute(std::string_view name) const;
  bool lists_tag(std::string_view tag) const;

  /// max_iterations >= 0 and, unless deliberately emptied, non-empty lists.
  void validate() const;
};

/// Locator for one input element inside one page, plus its attributes as
/// written in markup (name -> value, markup order, first occurrence wins).
struct FieldRef {
  std::string page_id;
  std::string element_path;
  std::vector<std::pair<std::string, std::string>> raw_attributes;
};

/// Ordered list of normalized word tokens extracted from one input element.
/// Order carries no downstream meaning; comparisons happen on multisets.
struct FeatureVector {
  std::vector<std::string> tokens;

  bool operator==(const FeatureVector&) const = default;
};

/// Lowercases, splits on every non-alphanumeric byte, drops empty fragments
/// and stopwords. Camel case is not split; digits are kept.
std::vector<std::string> normalize_tokens(std::string_view raw, const ExtractionConfig& cfg);

/// Enclosed texts of all tag_list elements found under the element's
/// siblings; when none, retries at the parent until max_iterations ascents
/// have been used or the tree runs out. `ascents` (optional) counts parent
/// ascents actually performed.
std::vector<std::string> find_closest_labels(const DomNode& element, const ExtractionConfig& cfg,
                                             int iteration = 0, int* ascents = nullptr);

/// Tokens of every listed attribute (name then value, markup order) followed
/// by the tokens of the nearest label texts.
FeatureVector extract_features(const DomDocument& page, const FieldRef& field,
                               const ExtractionConfig& cfg);

FieldRef make_field_ref(const DomDocument& page, const DomNode& input, std::string_view page_id);

/// All input elements of the page in document order, each paired with its
/// extracted feature vector. Zero inputs is an empty list, not an error.
std::vector<std::pair<FieldRef, FeatureVector>> extract_form_fields(const DomDocument& page,
                                                                    std::string_view page_id,
                                                                    const ExtractionConfig& cfg);

}  // namespace formtopics

#endif
