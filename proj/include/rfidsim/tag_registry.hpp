#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfidsim/errors.hpp"

namespace rfidsim {

// One registry row. is_authorized renders as the literal "Yes"/"No" the
// validator compares against.
struct TagRecord {
  std::string tag_id;  // canonical uppercase hex, 8 or 14 chars
  bool is_authorized = false;
  std::string first_name;

  bool operator==(const TagRecord&) const = default;
};

std::string render_registry(const std::vector<TagRecord>& records);
std::vector<TagRecord> parse_registry(std::string_view text);  // ParseError

// File-backed tag table keyed on the canonical tag id. Every mutation is
// persisted through an atomic whole-file replacement, so concurrent readers
// always see a complete snapshot. Single writer.
class TagRegistry {
 public:
  explicit TagRegistry(std::filesystem::path path);  // loads if present

  // Throws RegistryError: DuplicateKey, InvalidTag.
  void enroll(TagRecord record);
  // Exact match on the canonical form; unknown ids are a value, not an error.
  std::optional<TagRecord> lookup(std::string_view tag_id) const;
  // Throws RegistryError::NotFound.
  TagRecord set_authorized(std::string_view tag_id, bool authorized);
  // All records in lexicographic tag_id order.
  std::vector<TagRecord> list() const;

  std::size_t size() const { return records_.size(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  void save() const;

  std::filesystem::path path_;
  std::map<std::string, TagRecord> records_;
};

// Uppercase-hex normalization applied to tag ids at every boundary.
// Returns nullopt when the input is not an 8- or 14-character hex string.
std::optional<std::string> normalize_tag_id(std::string_view tag_id);

}  // namespace rfidsim
