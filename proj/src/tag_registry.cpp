#include "rfidsim/tag_registry.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace rfidsim {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::optional<std::string> normalize_tag_id(std::string_view tag_id) {
  if (tag_id.size() != 8 && tag_id.size() != 14) return std::nullopt;
  std::string out;
  out.reserve(tag_id.size());
  for (char c : tag_id) {
    if (c >= 'a' && c <= 'f') c = static_cast<char>(c - 'a' + 'A');
    if (!((c >= '0' && c <= '9') || (c >= 'A' && c <= 'F'))) {
      return std::nullopt;
    }
    out.push_back(c);
  }
  return out;
}

std::string render_registry(const std::vector<TagRecord>& records) {
  std::string out;
  for (const TagRecord& r : records) {
    out += r.tag_id;
    out += '\t';
    out += r.is_authorized ? "Yes" : "No";
    out += '\t';
    out += r.first_name;
    out += '\n';
  }
  return out;
}

std::vector<TagRecord> parse_registry(std::string_view text) {
  std::vector<TagRecord> records;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      throw ParseError(line_no, "missing final newline");
    }
    std::string_view line = text.substr(start, end - start);
    start = end + 1;

    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string_view::npos
                         ? std::string_view::npos
                         : line.find('\t', t1 + 1);
    if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
        line.find('\t', t2 + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected 3 tab-separated fields");
    }
    std::string_view id = line.substr(0, t1);
    std::string_view flag = line.substr(t1 + 1, t2 - t1 - 1);
    std::string_view name = line.substr(t2 + 1);

    auto canonical = normalize_tag_id(id);
    if (!canonical || *canonical != id) {
      throw ParseError(line_no, "bad tag id \"" + std::string(id) + "\"");
    }
    if (flag != "Yes" && flag != "No") {
      throw ParseError(line_no,
                       "authorization must be Yes or No, got \"" +
                           std::string(flag) + "\"");
    }
    records.push_back(TagRecord{std::string(id), flag == "Yes",
                                std::string(name)});
  }
  return records;
}

TagRegistry::TagRegistry(std::filesystem::path path) : path_(std::move(path)) {
  for (TagRecord& r : parse_registry(read_file(path_))) {
    records_.emplace(r.tag_id, std::move(r));
  }
}

void TagRegistry::enroll(TagRecord record) {
  auto canonical = normalize_tag_id(record.tag_id);
  if (!canonical) {
    throw RegistryError(RegistryError::Kind::InvalidTag,
                        "invalid tag id \"" + record.tag_id + "\"");
  }
  record.tag_id = *canonical;
  auto [it, inserted] = records_.emplace(record.tag_id, record);
  if (!inserted) {
    throw RegistryError(RegistryError::Kind::DuplicateKey,
                        "tag " + record.tag_id + " already enrolled");
  }
  save();
}

std::optional<TagRecord> TagRegistry::lookup(std::string_view tag_id) const {
  auto canonical = normalize_tag_id(tag_id);
  if (!canonical) return std::nullopt;
  auto it = records_.find(*canonical);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

TagRecord TagRegistry::set_authorized(std::string_view tag_id,
                                      bool authorized) {
  auto canonical = normalize_tag_id(tag_id);
  auto it = canonical ? records_.find(*canonical) : records_.end();
  if (it == records_.end()) {
    throw RegistryError(RegistryError::Kind::NotFound,
                        "tag " + std::string(tag_id) + " not enrolled");
  }
  it->second.is_authorized = authorized;
  save();
  return it->second;
}

std::vector<TagRecord> TagRegistry::list() const {
  std::vector<TagRecord> out;
  out.reserve(records_.size());
  for (const auto& [id, record] : records_) out.push_back(record);
  return out;
}

void TagRegistry::save() const {
  fs::path tmp = path_;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << render_registry(list());
    if (!out.flush()) {
      throw RegistryError(RegistryError::Kind::Storage,
                          "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path_, ec);
  if (ec) {
    throw RegistryError(RegistryError::Kind::Storage,
                        "cannot replace " + path_.string() + ": " +
                            ec.message());
  }
}

}  // namespace rfidsim
