#include "tcc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "tcc/errors.hpp"

namespace tcc {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_number(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void line_error(const std::string& path, std::size_t line_no,
                             const std::string& what) {
  std::ostringstream msg;
  msg << path << ":" << line_no << ": " << what;
  throw DataError(msg.str());
}

}  // namespace

std::vector<LabeledExample> load_labeled_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");

  std::vector<LabeledExample> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.empty()) continue;
    const std::vector<std::string_view> fields = split_commas(stripped);

    if (!saw_data) {
      // A first row with any non-numeric field is a header.
      bool numeric = true;
      double ignored;
      for (const auto& f : fields) numeric = numeric && parse_number(f, ignored);
      if (!numeric) continue;
      columns = fields.size();
      if (columns < 2) line_error(path, line_no, "need at least one feature column");
      saw_data = true;
    }

    if (fields.size() != columns) {
      std::ostringstream what;
      what << "expected " << columns << " columns, got " << fields.size();
      line_error(path, line_no, what.str());
    }

    LabeledExample ex;
    ex.features.resize(columns - 1);
    for (std::size_t i = 0; i + 1 < columns; ++i) {
      if (!parse_number(fields[i], ex.features[i])) {
        line_error(path, line_no,
                   "non-numeric feature '" + std::string(fields[i]) + "'");
      }
    }
    double label;
    if (!parse_number(fields[columns - 1], label)) {
      line_error(path, line_no,
                 "non-numeric label '" + std::string(fields[columns - 1]) + "'");
    }
    if (label == 1.0) {
      ex.label = 1;
    } else if (label == -1.0 || label == 0.0) {
      ex.label = -1;
    } else {
      line_error(path, line_no,
                 "label must be +1, -1, 1 or 0, got " + format_double(label));
    }
    out.push_back(std::move(ex));
  }
  return out;
}

void save_triplets_jsonl(const TripletDataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open file for writing");
  auto write = [&out](const Triplet& t, const char* kind) {
    json j;
    j["kind"] = kind;
    j["a"] = t.a;
    j["b"] = t.b;
    j["c"] = t.c;
    out << j.dump() << '\n';
  };
  for (const Triplet& t : data.keep) write(t, "keep");
  for (const Triplet& t : data.flip) write(t, "flip");
  if (!out) throw DataError(path + ": write failed");
}

TripletDataset load_triplets_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");

  TripletDataset data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      line_error(path, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j.contains("a") ||
        !j.contains("b") || !j.contains("c")) {
      line_error(path, line_no, "triplet object needs kind, a, b and c");
    }
    const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    if (kind != "keep" && kind != "flip") {
      line_error(path, line_no, "kind must be \"keep\" or \"flip\"");
    }
    Triplet t;
    auto read_vector = [&](const char* key, std::vector<double>& dst) {
      const json& arr = j[key];
      if (!arr.is_array() || arr.empty()) {
        line_error(path, line_no, std::string(key) + " must be a nonempty array");
      }
      dst.reserve(arr.size());
      for (const json& v : arr) {
        if (!v.is_number()) {
          line_error(path, line_no, std::string(key) + " must contain numbers only");
        }
        dst.push_back(v.get<double>());
      }
    };
    read_vector("a", t.a);
    read_vector("b", t.b);
    read_vector("c", t.c);
    if (t.a.size() != t.b.size() || t.a.size() != t.c.size()) {
      line_error(path, line_no, "triplet positions disagree on dimension");
    }
    if (data.dim == 0) {
      data.dim = t.a.size();
    } else if (t.a.size() != data.dim) {
      std::ostringstream what;
      what << "dimension " << t.a.size() << " differs from earlier dimension "
           << data.dim;
      line_error(path, line_no, what.str());
    }
    (kind == "keep" ? data.keep : data.flip).push_back(std::move(t));
  }
  return data;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace tcc
