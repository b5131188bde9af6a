#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pkgbridge {

// One DCF stanza: an ordered field list. Field names are case-sensitive and
// unique within a stanza.
class Stanza {
public:
  using Field = std::pair<std::string, std::string>;

  void append(std::string name, std::string value);  // throws Error(DuplicateField)
  // Folds a continuation line into the last field's value.
  void extend_last(std::string_view continuation);

  const std::string* find(std::string_view name) const noexcept;
  const std::string& at(std::string_view name) const;  // throws Error(MissingField)
  bool contains(std::string_view name) const noexcept { return find(name) != nullptr; }

  const std::vector<Field>& fields() const noexcept { return fields_; }
  bool empty() const noexcept { return fields_.empty(); }

  bool operator==(const Stanza&) const = default;

private:
  std::vector<Field> fields_;
};

// Parses DCF text: "Name: value" lines, continuation lines (leading
// whitespace) folded into the previous field with a single space, stanzas
// separated by blank lines. Lines blank after trailing-whitespace removal
// separate stanzas even if they start with whitespace.
std::vector<Stanza> parse_dcf(std::string_view text);

// Inverse of parse_dcf on normalized stanzas (trimmed single-line values).
std::string render_dcf(const std::vector<Stanza>& stanzas);

}  // namespace pkgbridge
