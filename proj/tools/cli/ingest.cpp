#include "cli/ingest.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "peerscore/error.hpp"

namespace peerscore::cli {

namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string Where(std::size_t line) { return "line " + std::to_string(line); }

std::size_t ParseScore(const std::string& text, std::size_t line,
                       std::size_t column) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InputError(Where(line) + ", column " + std::to_string(column) +
                     ": '" + text + "' is not a non-negative integer score");
  }
  return value;
}

}  // namespace

RawReviews ParseCsv(std::istream& in) {
  RawReviews raw;
  std::string line;
  std::size_t line_no = 0;
  std::size_t rho = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto fields = SplitCsv(trimmed);
    if (!have_header) {
      if (fields.size() < 2 || fields.front() != "reviewer") {
        throw InputError(Where(line_no) +
                         ": expected header 'reviewer,c1,...'");
      }
      for (std::size_t c = 1; c < fields.size(); ++c) {
        if (fields[c] != "c" + std::to_string(c)) {
          throw InputError(Where(line_no) + ": header column " +
                           std::to_string(c + 1) + " should be 'c" +
                           std::to_string(c) + "'");
        }
      }
      rho = fields.size() - 1;
      have_header = true;
      continue;
    }
    if (fields.size() != rho + 1) {
      throw InputError(Where(line_no) + ": reviewer '" + fields.front() +
                       "' has " + std::to_string(fields.size() - 1) +
                       " scores, expected " + std::to_string(rho));
    }
    if (fields.front().empty()) {
      throw InputError(Where(line_no) + ": empty reviewer id");
    }
    std::vector<std::size_t> scores(rho);
    for (std::size_t c = 0; c < rho; ++c) {
      scores[c] = ParseScore(fields[c + 1], line_no, c + 2);
    }
    raw.reviewer_ids.push_back(fields.front());
    raw.scores.push_back(std::move(scores));
  }
  if (raw.scores.empty()) throw InputError("no reviews in input");
  return raw;
}

RawReviews ParseJson(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    if (e.byte <= 1) throw InputError("no reviews in input");
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("JSON input must be an object");

  RawReviews raw;
  try {
    if (doc.contains("v")) {
      const auto v = doc.at("v").get<long long>();
      if (v < 1) throw InputError("'v' must be at least 1");
      raw.v = static_cast<std::size_t>(v);
    }
    if (doc.contains("alpha")) {
      raw.alpha = doc.at("alpha").get<std::vector<double>>();
    }
    if (!doc.contains("reviews") || !doc.at("reviews").is_array() ||
        doc.at("reviews").empty()) {
      throw InputError("no reviews in input");
    }
    std::size_t index = 0;
    std::optional<std::size_t> rho;
    for (const auto& entry : doc.at("reviews")) {
      ++index;
      std::string id = std::to_string(index);
      if (entry.contains("reviewer")) {
        const auto& r = entry.at("reviewer");
        id = r.is_string() ? r.get<std::string>() : r.dump();
      }
      const auto& scores = entry.at("scores");
      if (!scores.is_array() || scores.empty()) {
        throw InputError("reviewer '" + id + "' has no scores");
      }
      if (rho && scores.size() != *rho) {
        throw InputError("reviewer '" + id + "' reports " +
                         std::to_string(scores.size()) + " scores, expected " +
                         std::to_string(*rho) + " (ragged review)");
      }
      rho = scores.size();
      std::vector<std::size_t> values;
      for (std::size_t c = 0; c < scores.size(); ++c) {
        const auto& s = scores[c];
        if (!s.is_number_integer() || s.get<long long>() < 0) {
          throw InputError("reviewer '" + id + "', criterion " +
                           std::to_string(c + 1) +
                           ": score must be a non-negative integer");
        }
        values.push_back(s.get<std::size_t>());
      }
      raw.reviewer_ids.push_back(std::move(id));
      raw.scores.push_back(std::move(values));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed review JSON: ") + e.what());
  }
  return raw;
}

std::optional<InputFormat> FormatFromPath(const std::string& original) {
  std::string path = original;
  for (auto& ch : path) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".csv")) return InputFormat::kCsv;
  if (ends_with(".json")) return InputFormat::kJson;
  return std::nullopt;
}

void CheckScoreRange(const RawReviews& raw, std::size_t v) {
  for (std::size_t i = 0; i < raw.scores.size(); ++i) {
    for (std::size_t c = 0; c < raw.scores[i].size(); ++c) {
      if (raw.scores[i][c] > v) {
        throw InputError("reviewer '" + raw.reviewer_ids[i] + "' (row " +
                         std::to_string(i + 1) + "), criterion c" +
                         std::to_string(c + 1) + ": score " +
                         std::to_string(raw.scores[i][c]) + " exceeds v = " +
                         std::to_string(v));
      }
    }
  }
}

RawReviews ReadReviews(const std::string& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return format == InputFormat::kCsv ? ParseCsv(in) : ParseJson(in);
}

std::string EmitPanelJson(const ReviewPanel& panel) {
  nlohmann::json doc;
  doc["v"] = panel.best_score();
  doc["alpha"] = std::vector<double>(panel.prior().alpha().begin(),
                                     panel.prior().alpha().end());
  auto& reviews = doc["reviews"] = nlohmann::json::array();
  for (std::size_t i = 0; i < panel.size(); ++i) {
    const auto scores = panel.review(i).scores();
    reviews.push_back({{"reviewer", panel.reviewer_ids()[i]},
                       {"scores", std::vector<std::size_t>(scores.begin(),
                                                           scores.end())}});
  }
  return doc.dump(2) + "\n";
}

std::string EmitPanelCsv(const ReviewPanel& panel) {
  std::ostringstream out;
  out << "reviewer";
  for (std::size_t c = 1; c <= panel.rho(); ++c) out << ",c" << c;
  out << "\n";
  for (std::size_t i = 0; i < panel.size(); ++i) {
    out << panel.reviewer_ids()[i];
    for (std::size_t s : panel.review(i).scores()) out << "," << s;
    out << "\n";
  }
  return out.str();
}

}  // namespace peerscore::cli
