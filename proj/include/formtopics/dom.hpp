#ifndef FORMTOPICS_DOM_HPP
#define FORMTOPICS_DOM_HPP

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace formtopics {

/// Node of the parsed HTML tree. The tree is owned top-down through
/// unique_ptr children; parent links are non-owning back pointers.
struct DomNode {
  enum class Kind { document, element, text };

  Kind kind = Kind::text;
  std::string tag;   // elements only, lowercased
  std::string text;  // text nodes only, entity-decoded, whitespace preserved
  std::vector<std::pair<std::string, std::string>> attributes;  // markup order, first occurrence wins
  DomNode* parent = nullptr;
  std::vector<std::unique_ptr<DomNode>> children;

  bool is_element() const { return kind == Kind::element; }

  /// Value of the named attribute, or nullptr when absent.
  const std::string* attribute(std::string_view name) const;

  /// Concatenated text of all descendant text nodes, in document order.
  std::string inner_text() const;

  /// Element siblings (children of the parent excluding this node), document order.
  std::vector<const DomNode*> element_siblings() const;

  /// Element children only, document order.
  std::vector<const DomNode*> element_children() const;
};

/// A parsed HTML document. The parser is deliberately forgiving: unclosed and
/// mis-nested tags, comments, doctypes, stray '<' and unterminated constructs
/// all yield a tree rather than an error.
class DomDocument {
 public:
  static DomDocument parse(std::string_view html);

  const DomNode& root() const { return *root_; }

  /// All elements with the given (lowercase) tag, document order.
  std::vector<const DomNode*> elements_by_tag(std::string_view tag) const;

  /// Locator of an element: element-child indices from the root, '/'-joined.
  /// Stable for a given document; resolves back with resolve().
  std::string path_of(const DomNode& node) const;

  /// Resolves a path produced by path_of; nullptr when it does not resolve.
  const DomNode* resolve(std::string_view path) const;

 private:
  std::unique_ptr<DomNode> root_;
};

/// Decodes the common HTML entities (&amp; &lt; &gt; &quot; &apos; &nbsp;
/// and numeric forms). Unknown entities are left as written.
std::string decode_entities(std::string_view raw);

}  // namespace formtopics

#endif
