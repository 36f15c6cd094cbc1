#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "peerscore/panel.hpp"

namespace peerscore::cli {

enum class InputFormat { kCsv, kJson };

// Reviews exactly as read from a file, before a prior is attached.
struct RawReviews {
  std::optional<std::size_t> v;               // JSON only
  std::optional<std::vector<double>> alpha;   // JSON only
  std::vector<std::string> reviewer_ids;
  std::vector<std::vector<std::size_t>> scores;
};

// CSV: header "reviewer,c1,...,c<rho>" then one row per reviewer.
RawReviews ParseCsv(std::istream& in);
// JSON: {"v": int, "alpha": [..], "reviews": [{"reviewer": str, "scores": [..]}]}
RawReviews ParseJson(std::istream& in);

// Picks the format from the file extension (.csv / .json).
std::optional<InputFormat> FormatFromPath(const std::string& path);

// Rejects scores above v, naming the reviewer row and criterion column.
void CheckScoreRange(const RawReviews& raw, std::size_t v);

RawReviews ReadReviews(const std::string& path, InputFormat format);

std::string EmitPanelJson(const ReviewPanel& panel);
std::string EmitPanelCsv(const ReviewPanel& panel);

}  // namespace peerscore::cli
