#include "pkgbridge/dcf.hpp"

#include "pkgbridge/errors.hpp"
#include "pkgbridge/util.hpp"

namespace pkgbridge {

void Stanza::append(std::string name, std::string value) {
  if (find(name) != nullptr)
    throw Error(Errc::DuplicateField, "field \"" + name + "\" appears twice in one stanza");
  fields_.emplace_back(std::move(name), std::move(value));
}

void Stanza::extend_last(std::string_view continuation) {
  std::string& value = fields_.back().second;
  if (value.empty())
    value = std::string(continuation);
  else
    value += " " + std::string(continuation);
}

const std::string* Stanza::find(std::string_view name) const noexcept {
  for (const Field& f : fields_)
    if (f.first == name) return &f.second;
  return nullptr;
}

const std::string& Stanza::at(std::string_view name) const {
  if (const std::string* v = find(name)) return *v;
  throw Error(Errc::MissingField, "missing field \"" + std::string(name) + "\"");
}

std::vector<Stanza> parse_dcf(std::string_view text) {
  std::vector<Stanza> stanzas;
  Stanza current;
  bool in_stanza = false;

  auto flush = [&] {
    if (in_stanza) {
      stanzas.push_back(std::move(current));
      current = Stanza();
      in_stanza = false;
    }
  };

  size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    if (is_blank(line)) {
      flush();
      continue;
    }
    if (line[0] == ' ' || line[0] == '\t') {
      // Continuation of the previous field.
      if (!in_stanza || current.fields().empty())
        throw Error(Errc::MalformedField,
                    "line " + std::to_string(lineno) + ": continuation with no preceding field");
      current.extend_last(trim(line));
      continue;
    }
    size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw Error(Errc::MalformedField, "line " + std::to_string(lineno) + ": no ':' in \"" + line + "\"");
    std::string name(trim(line.substr(0, colon)));
    if (name.empty())
      throw Error(Errc::MalformedField, "line " + std::to_string(lineno) + ": empty field name");
    std::string value(trim(std::string_view(line).substr(colon + 1)));
    current.append(std::move(name), std::move(value));
    in_stanza = true;
  }
  flush();
  return stanzas;
}

std::string render_dcf(const std::vector<Stanza>& stanzas) {
  std::string out;
  for (size_t i = 0; i < stanzas.size(); ++i) {
    if (i) out += "\n";
    for (const Stanza::Field& f : stanzas[i].fields()) {
      out += f.first;
      out += ":";
      if (!f.second.empty()) {
        out += " ";
        out += f.second;
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace pkgbridge
