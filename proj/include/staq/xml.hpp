#ifndef STAQ_XML_HPP
#define STAQ_XML_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "staq/tree.hpp"

namespace staq {

// Raised on malformed input; `offset` is the byte position of the problem.
class XmlParseError : public std::runtime_error {
 public:
  XmlParseError(std::string msg, size_t offset)
      : std::runtime_error(std::move(msg) + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// Element-only XML subset: UTF-8, tags [A-Za-z_][A-Za-z0-9_-]*, self-closing
// allowed, single root. Declarations, comments, CDATA, attributes and text
// content are parse errors; whitespace between tags is insignificant.
UnrankedDoc parse_doc(std::string_view text);

// One canonical serialization (no insignificant whitespace except a trailing
// newline) so generated files are byte-stable.
std::string serialize_doc(const UnrankedDoc& doc);

} // namespace staq

#endif
