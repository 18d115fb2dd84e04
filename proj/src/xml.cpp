#include "staq/xml.hpp"

#include <cctype>
#include <vector>

namespace staq {

namespace {

bool tag_start_char(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool tag_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

} // namespace

UnrankedDoc parse_doc(std::string_view text) {
  std::vector<UnrankedDoc::Elem> elems;
  std::vector<NodeId> open; // stack of open elements
  bool root_closed = false;
  size_t pos = 0;

  auto fail = [&](const std::string& msg, size_t at) -> void {
    throw XmlParseError(msg, at);
  };

  auto read_tag_name = [&]() -> std::string_view {
    size_t start = pos;
    if (pos >= text.size() || !tag_start_char(text[pos]))
      fail("expected tag name", pos);
    pos++;
    while (pos < text.size() && tag_char(text[pos])) pos++;
    return text.substr(start, pos - start);
  };

  while (pos < text.size()) {
    char c = text[pos];
    if (c == '<') {
      size_t tag_at = pos;
      pos++;
      if (pos >= text.size()) fail("unterminated markup", tag_at);
      if (text[pos] == '?' || text[pos] == '!')
        fail("declarations, comments and CDATA are not supported", tag_at);
      if (text[pos] == '/') {
        pos++;
        auto name = read_tag_name();
        if (pos >= text.size() || text[pos] != '>') fail("expected '>'", pos);
        pos++;
        if (open.empty()) fail("closing tag without open element", tag_at);
        NodeId top = open.back();
        if (label_name(elems[top].label) != name)
          fail("mismatched tag </" + std::string(name) + ">, open element is <" +
                   label_name(elems[top].label) + ">",
               tag_at);
        open.pop_back();
        if (open.empty()) root_closed = true;
        continue;
      }
      if (root_closed) fail("content after document element", tag_at);
      auto name = read_tag_name();
      bool self_closing = false;
      if (pos < text.size() && text[pos] == '/') {
        self_closing = true;
        pos++;
      }
      if (pos >= text.size() || text[pos] != '>') {
        if (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                  text[pos] == '\r'))
          fail("attributes are not supported", pos);
        fail("expected '>'", pos);
      }
      pos++;
      NodeId id = static_cast<NodeId>(elems.size());
      NodeId parent = open.empty() ? kNoNode : open.back();
      elems.push_back({parse_label(name), parent, {}});
      if (parent != kNoNode) elems[parent].children.push_back(id);
      if (!self_closing) {
        open.push_back(id);
      } else if (open.empty()) {
        root_closed = true;
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      pos++;
      continue;
    }
    fail("text content is not supported", pos);
  }

  if (!open.empty())
    fail("unclosed element <" + label_name(elems[open.back()].label) + ">", text.size());
  if (elems.empty()) fail("no document element", text.size());
  return UnrankedDoc(std::move(elems));
}

std::string serialize_doc(const UnrankedDoc& doc) {
  std::string out;
  struct Item {
    NodeId elem;
    bool close;
  };
  std::vector<Item> stack{{doc.root(), false}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const auto& e = doc.elem(it.elem);
    std::string name = label_name(e.label);
    if (it.close) {
      out += "</" + name + ">";
      continue;
    }
    if (e.children.empty()) {
      out += "<" + name + "/>";
      continue;
    }
    out += "<" + name + ">";
    stack.push_back({it.elem, true});
    for (auto c = e.children.rbegin(); c != e.children.rend(); ++c)
      stack.push_back({*c, false});
  }
  out.push_back('\n');
  return out;
}

} // namespace staq
