#include "aptmine/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace aptmine {

namespace {

using nlohmann::json;

// Streaming RFC-4180-style row reader: quoted fields, "" escapes,
// embedded newlines, CRLF or LF endings.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. `line` is set to the 1-based line
  // number where the row started.
  bool next_row(std::vector<std::string>& fields, int& line) {
    fields.clear();
    int c = in_.get();
    if (c == EOF) return false;
    line = line_;
    std::string field;
    bool quoted = false;
    while (true) {
      if (c == EOF) {
        fields.push_back(std::move(field));
        return true;
      }
      if (quoted) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field += '"';
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field += static_cast<char>(c);
        }
      } else if (c == '"' && field.empty()) {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\n') {
        ++line_;
        if (!field.empty() && field.back() == '\r') field.pop_back();
        fields.push_back(std::move(field));
        return true;
      } else {
        field += static_cast<char>(c);
      }
      c = in_.get();
    }
  }

 private:
  std::istream& in_;
  int line_ = 1;
};

bool row_is_blank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].empty();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Maps required header names to column indexes; extra columns are ignored.
std::vector<int> locate_columns(const std::vector<std::string>& header,
                                const std::vector<std::string>& wanted,
                                int line) {
  std::vector<int> idx;
  for (const auto& name : wanted) {
    auto it = std::find_if(header.begin(), header.end(),
                           [&](const std::string& h) { return trim(h) == name; });
    if (it == header.end()) {
      throw ParseError(line, "missing column '" + name + "' in header");
    }
    idx.push_back(static_cast<int>(it - header.begin()));
  }
  return idx;
}

Date parse_date_field(const std::string& text, int line) {
  auto d = Date::parse(trim(text));
  if (!d) throw ParseError(line, "malformed date '" + text + "'");
  return *d;
}

Category parse_category_field(const std::string& text, int line) {
  auto c = category_from_string(trim(text));
  if (!c) throw ParseError(line, "unknown category '" + text + "'");
  return *c;
}

long long parse_count_field(const std::string& text, int line) {
  const std::string t = trim(text);
  long long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size()) {
    throw ParseError(line, "malformed count '" + text + "'");
  }
  if (v < 0) throw ParseError(line, "negative count " + t);
  return v;
}

std::optional<double> parse_loss_field(const std::string& text, int line) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "malformed loss '" + text + "'");
  }
  if (pos != t.size()) throw ParseError(line, "malformed loss '" + text + "'");
  if (v < 0) throw ParseError(line, "negative loss " + t);
  return v;
}

json parse_json_line(const std::string& text, int line) {
  json obj = json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    throw ParseError(line, "malformed json object");
  }
  return obj;
}

std::string require_string(const json& obj, const char* key, int line) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw ParseError(line, std::string("missing or non-string field '") +
                               key + "'");
  }
  return obj[key].get<std::string>();
}

// Sums duplicate (date, tag, category) rows, keeping first-seen order.
std::vector<TagCountRecord> merge_tag_counts(
    std::vector<TagCountRecord> rows) {
  std::vector<TagCountRecord> merged;
  std::map<std::tuple<int, std::string, Category>, std::size_t> seen;
  for (auto& r : rows) {
    auto key = std::make_tuple(r.date.serial(), r.tag, r.category);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), merged.size());
      merged.push_back(std::move(r));
    } else {
      merged[it->second].count += r.count;
    }
  }
  return merged;
}

std::vector<TagCountRecord> parse_tag_counts_csv(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> fields;
  int line = 0;
  if (!reader.next_row(fields, line) || row_is_blank(fields)) {
    throw ParseError(1, "missing header row (expected date,tag,category,count)");
  }
  auto cols = locate_columns(fields, {"date", "tag", "category", "count"}, line);
  std::vector<TagCountRecord> rows;
  while (reader.next_row(fields, line)) {
    if (row_is_blank(fields)) continue;
    for (int c : cols) {
      if (c >= static_cast<int>(fields.size())) {
        throw ParseError(line, "row has too few fields");
      }
    }
    TagCountRecord rec;
    rec.date = parse_date_field(fields[cols[0]], line);
    rec.tag = trim(fields[cols[1]]);
    rec.category = parse_category_field(fields[cols[2]], line);
    rec.count = parse_count_field(fields[cols[3]], line);
    if (rec.tag.empty()) throw ParseError(line, "empty tag");
    rows.push_back(std::move(rec));
  }
  return rows;
}

std::vector<TagCountRecord> parse_tag_counts_jsonl(std::istream& in) {
  std::vector<TagCountRecord> rows;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    json obj = parse_json_line(text, line);
    TagCountRecord rec;
    rec.date = parse_date_field(require_string(obj, "date", line), line);
    rec.tag = require_string(obj, "tag", line);
    rec.category =
        parse_category_field(require_string(obj, "category", line), line);
    if (!obj.contains("count") || !obj["count"].is_number_integer()) {
      throw ParseError(line, "missing or non-integer field 'count'");
    }
    rec.count = obj["count"].get<long long>();
    if (rec.count < 0) {
      throw ParseError(line, "negative count " + std::to_string(rec.count));
    }
    if (rec.tag.empty()) throw ParseError(line, "empty tag");
    rows.push_back(std::move(rec));
  }
  return rows;
}

std::vector<IncidentRecord> parse_incidents_csv(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> fields;
  int line = 0;
  if (!reader.next_row(fields, line) || row_is_blank(fields)) {
    throw ParseError(
        1, "missing header row (expected date,target,estimated_loss,name)");
  }
  auto cols = locate_columns(
      fields, {"date", "target", "estimated_loss", "name"}, line);
  std::vector<IncidentRecord> rows;
  while (reader.next_row(fields, line)) {
    if (row_is_blank(fields)) continue;
    for (int c : cols) {
      if (c >= static_cast<int>(fields.size())) {
        throw ParseError(line, "row has too few fields");
      }
    }
    IncidentRecord rec;
    rec.date = parse_date_field(fields[cols[0]], line);
    rec.target = trim(fields[cols[1]]);
    rec.estimated_loss = parse_loss_field(fields[cols[2]], line);
    std::string name = fields[cols[3]];
    if (!name.empty()) rec.name = name;
    if (rec.target.empty()) throw ParseError(line, "empty target");
    rows.push_back(std::move(rec));
  }
  return rows;
}

std::vector<IncidentRecord> parse_incidents_jsonl(std::istream& in) {
  std::vector<IncidentRecord> rows;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    json obj = parse_json_line(text, line);
    IncidentRecord rec;
    rec.date = parse_date_field(require_string(obj, "date", line), line);
    rec.target = require_string(obj, "target", line);
    if (rec.target.empty()) throw ParseError(line, "empty target");
    if (obj.contains("estimated_loss") && !obj["estimated_loss"].is_null()) {
      if (!obj["estimated_loss"].is_number()) {
        throw ParseError(line, "non-numeric field 'estimated_loss'");
      }
      double v = obj["estimated_loss"].get<double>();
      if (v < 0) {
        throw ParseError(line, "negative loss " + std::to_string(v));
      }
      rec.estimated_loss = v;
    }
    if (obj.contains("name") && !obj["name"].is_null()) {
      if (!obj["name"].is_string()) {
        throw ParseError(line, "non-string field 'name'");
      }
      rec.name = obj["name"].get<std::string>();
    }
    rows.push_back(std::move(rec));
  }
  return rows;
}

}  // namespace

InputFormat format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".jsonl" || ext == ".ndjson") return InputFormat::Jsonl;
  return InputFormat::Csv;
}

Calendar::Calendar(Date start, int t_max) : start_(start), t_max_(t_max) {
  if (t_max < 1) throw std::invalid_argument("calendar length must be >= 1");
}

bool Calendar::covers(Date d) const {
  return d >= start_ && d - start_ < t_max_;
}

int Calendar::point_of(Date d) const {
  if (!covers(d)) {
    throw DataError("date " + d.to_iso() + " outside calendar " +
                    start_.to_iso() + ".." + end().to_iso());
  }
  return d - start_ + 1;
}

Date Calendar::date_of(int t) const {
  if (t < 1 || t > t_max_) {
    throw std::out_of_range("time point " + std::to_string(t) +
                            " outside 1.." + std::to_string(t_max_));
  }
  return start_ + (t - 1);
}

std::vector<TagCountRecord> parse_tag_counts(std::istream& in,
                                             InputFormat format) {
  auto rows = format == InputFormat::Csv ? parse_tag_counts_csv(in)
                                         : parse_tag_counts_jsonl(in);
  return merge_tag_counts(std::move(rows));
}

std::vector<IncidentRecord> parse_incidents(std::istream& in,
                                            InputFormat format) {
  return format == InputFormat::Csv ? parse_incidents_csv(in)
                                    : parse_incidents_jsonl(in);
}

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<TagCountRecord> parse_tag_counts_file(
    const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  try {
    return parse_tag_counts(in, format_from_path(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e.line(), e.detail());
  }
}

std::vector<IncidentRecord> parse_incidents_file(
    const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  try {
    return parse_incidents(in, format_from_path(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e.line(), e.detail());
  }
}

Calendar build_calendar(std::span<const TagCountRecord> tag_records,
                        std::span<const IncidentRecord> incident_records) {
  if (tag_records.empty() && incident_records.empty()) {
    throw DataError("no data");
  }
  std::optional<Date> lo, hi;
  auto widen = [&](Date d) {
    if (!lo || d < *lo) lo = d;
    if (!hi || d > *hi) hi = d;
  };
  for (const auto& r : tag_records) widen(r.date);
  for (const auto& r : incident_records) widen(r.date);
  return Calendar(*lo, *hi - *lo + 1);
}

}  // namespace aptmine
