#include "formtopics/extract.hpp"

#include <algorithm>
#include <cctype>

#include "formtopics/errors.hpp"

namespace formtopics {

bool ExtractionConfig::lists_attribute(std::string_view name) const {
  return std::find(attribute_list.begin(), attribute_list.end(), name) != attribute_list.end();
}

bool ExtractionConfig::lists_tag(std::string_view tag) const {
  return std::find(tag_list.begin(), tag_list.end(), tag) != tag_list.end();
}

void ExtractionConfig::validate() const {
  if (max_iterations < 0) throw DataError("extraction config: max_iterations must be >= 0");
}

std::vector<std::string> normalize_tokens(std::string_view raw, const ExtractionConfig& cfg) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      if (cfg.stopwords.find(current) == cfg.stopwords.end()) tokens.push_back(current);
      current.clear();
    }
  };
  for (char c : raw) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      current.push_back(static_cast<char>(std::tolower(uc)));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

namespace {

// Self-or-descendant elements whose tag is listed, in document order.
void collect_listed_tags(const DomNode& node, const ExtractionConfig& cfg,
                         std::vector<const DomNode*>& out) {
  if (node.is_element() && cfg.lists_tag(node.tag)) out.push_back(&node);
  for (const auto& child : node.children) collect_listed_tags(*child, cfg, out);
}

}  // namespace

std::vector<std::string> find_closest_labels(const DomNode& element, const ExtractionConfig& cfg,
                                             int iteration, int* ascents) {
  if (iteration >= cfg.max_iterations) return {};
  std::vector<std::string> labels;
  for (const DomNode* sibling : element.element_siblings()) {
    std::vector<const DomNode*> matches;
    collect_listed_tags(*sibling, cfg, matches);
    // Duplicate label texts are kept; repetition feeds the word counts.
    for (const DomNode* match : matches) labels.push_back(match->inner_text());
  }
  if (!labels.empty()) return labels;
  if (element.parent == nullptr) return {};  // ran out of tree: same as hitting MAX
  if (ascents) ++*ascents;
  return find_closest_labels(*element.parent, cfg, iteration + 1, ascents);
}

FeatureVector extract_features(const DomDocument& page, const FieldRef& field,
                               const ExtractionConfig& cfg) {
  const DomNode* element = page.resolve(field.element_path);
  if (element == nullptr) {
    throw DataError("field locator '" + field.element_path + "' does not resolve in page '" +
                    field.page_id + "'");
  }
  FeatureVector out;
  for (const auto& [name, value] : element->attributes) {
    if (!cfg.lists_attribute(name)) continue;
    for (auto& token : normalize_tokens(name, cfg)) out.tokens.push_back(std::move(token));
    for (auto& token : normalize_tokens(value, cfg)) out.tokens.push_back(std::move(token));
  }
  for (const std::string& text : find_closest_labels(*element, cfg)) {
    for (auto& token : normalize_tokens(text, cfg)) out.tokens.push_back(std::move(token));
  }
  return out;
}

FieldRef make_field_ref(const DomDocument& page, const DomNode& input, std::string_view page_id) {
  FieldRef ref;
  ref.page_id = std::string(page_id);
  ref.element_path = page.path_of(input);
  ref.raw_attributes = input.attributes;
  return ref;
}

std::vector<std::pair<FieldRef, FeatureVector>> extract_form_fields(const DomDocument& page,
                                                                    std::string_view page_id,
                                                                    const ExtractionConfig& cfg) {
  cfg.validate();
  std::vector<std::pair<FieldRef, FeatureVector>> out;
  for (const DomNode* input : page.elements_by_tag("input")) {
    FieldRef ref = make_field_ref(page, *input, page_id);
    FeatureVector features = extract_features(page, ref, cfg);
    out.emplace_back(std::move(ref), std::move(features));
  }
  return out;
}

}  // namespace formtopics
