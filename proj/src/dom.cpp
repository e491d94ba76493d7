#include "formtopics/dom.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace formtopics {
namespace {

bool is_void_element(std::string_view tag) {
  static constexpr std::array<std::string_view, 14> kVoid = {
      "area", "base", "br",    "col",  "embed",  "hr",  "img",
      "input", "link", "meta", "param", "source", "track", "wbr"};
  return std::find(kVoid.begin(), kVoid.end(), tag) != kVoid.end();
}

// Content of these elements is raw text up to the matching close tag.
bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "textarea" || tag == "title";
}

// script/style bodies are code, not page text; keep them out of inner_text().
bool keeps_raw_text(std::string_view tag) { return tag == "textarea" || tag == "title"; }

char ascii_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_name_char(char c) {
  unsigned char uc = static_cast<unsigned char>(c);
  return std::isalnum(uc) || c == '-' || c == '_' || c == ':';
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::size_t find_ci(std::string_view haystack, std::string_view needle, std::size_t from) {
  if (needle.empty()) return from;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    std::size_t j = 0;
    while (j < needle.size() && ascii_lower(haystack[i + j]) == ascii_lower(needle[j])) ++j;
    if (j == needle.size()) return i;
  }
  return std::string_view::npos;
}

struct Parser {
  std::string_view html;
  std::size_t pos = 0;
  std::unique_ptr<DomNode> document;
  std::vector<DomNode*> stack;  // open elements; stack.front() is the document

  explicit Parser(std::string_view input) : html(input) {
    document = std::make_unique<DomNode>();
    document->kind = DomNode::Kind::document;
    stack.push_back(document.get());
  }

  DomNode* open() { return stack.back(); }

  DomNode* append_child(DomNode::Kind kind) {
    auto node = std::make_unique<DomNode>();
    node->kind = kind;
    node->parent = open();
    DomNode* raw = node.get();
    open()->children.push_back(std::move(node));
    return raw;
  }

  void append_text(std::string_view raw) {
    if (raw.empty()) return;
    bool all_space = std::all_of(raw.begin(), raw.end(), is_space);
    if (all_space) return;
    DomNode* node = append_child(DomNode::Kind::text);
    node->text = decode_entities(raw);
  }

  void run() {
    while (pos < html.size()) {
      if (html[pos] != '<') {
        std::size_t end = html.find('<', pos);
        if (end == std::string_view::npos) end = html.size();
        append_text(html.substr(pos, end - pos));
        pos = end;
        continue;
      }
      if (html.compare(pos, 4, "<!--") == 0) {
        std::size_t end = html.find("-->", pos + 4);
        pos = (end == std::string_view::npos) ? html.size() : end + 3;
        continue;
      }
      if (pos + 1 < html.size() && (html[pos + 1] == '!' || html[pos + 1] == '?')) {
        std::size_t end = html.find('>', pos + 1);
        pos = (end == std::string_view::npos) ? html.size() : end + 1;
        continue;
      }
      if (pos + 1 < html.size() && html[pos + 1] == '/') {
        parse_close_tag();
        continue;
      }
      if (pos + 1 < html.size() && is_name_start(html[pos + 1])) {
        parse_open_tag();
        continue;
      }
      // Stray '<': treat as text.
      append_text(html.substr(pos, 1));
      ++pos;
    }
  }

  std::string read_name() {
    std::string name;
    while (pos < html.size() && is_name_char(html[pos])) {
      name.push_back(ascii_lower(html[pos]));
      ++pos;
    }
    return name;
  }

  void skip_space() {
    while (pos < html.size() && is_space(html[pos])) ++pos;
  }

  void parse_close_tag() {
    pos += 2;  // "</"
    std::string name = read_name();
    std::size_t end = html.find('>', pos);
    pos = (end == std::string_view::npos) ? html.size() : end + 1;
    if (name.empty()) return;
    // Close the nearest matching open element; ignore a close with no match.
    for (std::size_t i = stack.size(); i-- > 1;) {
      if (stack[i]->tag == name) {
        stack.resize(i);
        return;
      }
    }
  }

  void parse_open_tag() {
    ++pos;  // '<'
    std::string tag = read_name();
    DomNode* node = append_child(DomNode::Kind::element);
    node->tag = tag;
    bool self_closed = false;
    while (pos < html.size()) {
      skip_space();
      if (pos >= html.size()) break;
      if (html[pos] == '>') {
        ++pos;
        break;
      }
      if (html[pos] == '/') {
        ++pos;
        if (pos < html.size() && html[pos] == '>') {
          ++pos;
          self_closed = true;
          break;
        }
        continue;
      }
      if (!parse_attribute(*node)) {
        ++pos;  // unparsable byte inside the tag; skip it
      }
    }
    if (self_closed || is_void_element(tag)) return;
    if (is_raw_text_element(tag)) {
      consume_raw_text(*node);
      return;
    }
    stack.push_back(node);
  }

  bool parse_attribute(DomNode& node) {
    if (pos >= html.size() || !(is_name_start(html[pos]) || html[pos] == '_')) return false;
    std::string name;
    while (pos < html.size() && is_name_char(html[pos])) {
      name.push_back(ascii_lower(html[pos]));
      ++pos;
    }
    skip_space();
    std::string value;
    if (pos < html.size() && html[pos] == '=') {
      ++pos;
      skip_space();
      if (pos < html.size() && (html[pos] == '"' || html[pos] == '\'')) {
        char quote = html[pos];
        ++pos;
        std::size_t end = html.find(quote, pos);
        if (end == std::string_view::npos) end = html.size();
        value = decode_entities(html.substr(pos, end - pos));
        pos = (end == html.size()) ? end : end + 1;
      } else {
        std::size_t start = pos;
        while (pos < html.size() && !is_space(html[pos]) && html[pos] != '>' && html[pos] != '/') {
          ++pos;
        }
        value = decode_entities(html.substr(start, pos - start));
      }
    }
    auto already = std::find_if(node.attributes.begin(), node.attributes.end(),
                                [&](const auto& kv) { return kv.first == name; });
    if (already == node.attributes.end()) {
      node.attributes.emplace_back(std::move(name), std::move(value));
    }
    return true;
  }

  void consume_raw_text(DomNode& node) {
    std::string close = "</" + node.tag;
    std::size_t end = find_ci(html, close, pos);
    std::size_t content_end = (end == std::string_view::npos) ? html.size() : end;
    if (keeps_raw_text(node.tag) && content_end > pos) {
      auto text = std::make_unique<DomNode>();
      text->kind = DomNode::Kind::text;
      text->text = decode_entities(html.substr(pos, content_end - pos));
      text->parent = &node;
      node.children.push_back(std::move(text));
    }
    if (end == std::string_view::npos) {
      pos = html.size();
    } else {
      std::size_t gt = html.find('>', end);
      pos = (gt == std::string_view::npos) ? html.size() : gt + 1;
    }
  }
};

void gather_text(const DomNode& node, std::string& out) {
  if (node.kind == DomNode::Kind::text) {
    out += node.text;
    return;
  }
  for (const auto& child : node.children) gather_text(*child, out);
}

void gather_by_tag(const DomNode& node, std::string_view tag,
                   std::vector<const DomNode*>& out) {
  if (node.is_element() && node.tag == tag) out.push_back(&node);
  for (const auto& child : node.children) gather_by_tag(*child, tag, out);
}

}  // namespace

std::string decode_entities(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '&') {
      out.push_back(raw[i]);
      ++i;
      continue;
    }
    std::size_t semi = raw.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(raw[i]);
      ++i;
      continue;
    }
    std::string_view entity = raw.substr(i + 1, semi - i - 1);
    if (entity == "amp") {
      out.push_back('&');
    } else if (entity == "lt") {
      out.push_back('<');
    } else if (entity == "gt") {
      out.push_back('>');
    } else if (entity == "quot") {
      out.push_back('"');
    } else if (entity == "apos") {
      out.push_back('\'');
    } else if (entity == "nbsp") {
      out.push_back(' ');
    } else if (!entity.empty() && entity[0] == '#') {
      unsigned code = 0;
      const char* first = entity.data() + 1;
      const char* last = entity.data() + entity.size();
      int base = 10;
      if (first != last && (*first == 'x' || *first == 'X')) {
        ++first;
        base = 16;
      }
      auto [ptr, ec] = std::from_chars(first, last, code, base);
      if (ec == std::errc() && ptr == last) {
        out.push_back(code < 128 ? static_cast<char>(code) : ' ');
      } else {
        out.append(raw.substr(i, semi - i + 1));
      }
    } else {
      out.append(raw.substr(i, semi - i + 1));
    }
    i = semi + 1;
  }
  return out;
}

const std::string* DomNode::attribute(std::string_view name) const {
  for (const auto& [key, value] : attributes) {
    if (key == name) return &value;
  }
  return nullptr;
}

std::string DomNode::inner_text() const {
  std::string out;
  gather_text(*this, out);
  return out;
}

std::vector<const DomNode*> DomNode::element_siblings() const {
  std::vector<const DomNode*> out;
  if (!parent) return out;
  for (const auto& child : parent->children) {
    if (child->is_element() && child.get() != this) out.push_back(child.get());
  }
  return out;
}

std::vector<const DomNode*> DomNode::element_children() const {
  std::vector<const DomNode*> out;
  for (const auto& child : children) {
    if (child->is_element()) out.push_back(child.get());
  }
  return out;
}

DomDocument DomDocument::parse(std::string_view html) {
  Parser parser(html);
  parser.run();
  DomDocument doc;
  doc.root_ = std::move(parser.document);
  return doc;
}

std::vector<const DomNode*> DomDocument::elements_by_tag(std::string_view tag) const {
  std::vector<const DomNode*> out;
  gather_by_tag(*root_, tag, out);
  return out;
}

std::string DomDocument::path_of(const DomNode& node) const {
  std::vector<std::size_t> indices;
  const DomNode* current = &node;
  while (current->parent != nullptr) {
    const DomNode* parent = current->parent;
    std::size_t index = 0;
    for (const auto& child : parent->children) {
      if (!child->is_element()) continue;
      if (child.get() == current) break;
      ++index;
    }
    indices.push_back(index);
    current = parent;
  }
  std::string path;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    if (!path.empty()) path.push_back('/');
    path += std::to_string(*it);
  }
  return path;
}

const DomNode* DomDocument::resolve(std::string_view path) const {
  if (path.empty()) return nullptr;
  const DomNode* current = root_.get();
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    std::string_view part =
        path.substr(start, slash == std::string_view::npos ? path.size() - start : slash - start);
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), index);
    if (ec != std::errc() || ptr != part.data() + part.size()) return nullptr;
    auto elements = current->element_children();
    if (index >= elements.size()) return nullptr;
    current = elements[index];
    if (slash == std::string_view::npos) return current;
    start = slash + 1;
  }
  return nullptr;
}

}  // namespace formtopics
