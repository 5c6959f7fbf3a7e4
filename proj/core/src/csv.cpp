// SPDX-License-Identifier: Apache-2.0
#include "friedman/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "friedman/errors.hpp"

namespace friedman {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view field) {
  if (field.empty()) return std::nullopt;
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

bool is_nonfinite_token(std::string_view field) {
  std::string lower;
  for (char c : field) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (!lower.empty() && (lower.front() == '-' || lower.front() == '+')) lower.erase(0, 1);
  return lower == "nan" || lower == "inf" || lower == "infinity";
}

}  // namespace

InputFormat parse_input_format(std::string_view name) {
  if (name == "scores") return InputFormat::scores;
  if (name == "ranks") return InputFormat::ranks;
  throw DomainError("unknown input format '" + std::string(name) + "'");
}

RankMatrix read_rank_csv(std::istream& in, InputFormat format) {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> line_of_row;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty()) continue;
    const auto fields = split_fields(content);
    std::vector<double> values;
    values.reserve(fields.size());
    bool numeric = true;
    for (auto field : fields) {
      auto v = parse_number(field);
      if (!v) {
        numeric = false;
        break;
      }
      values.push_back(*v);
    }
    if (!numeric) {
      if (first_content) {
        first_content = false;
        continue;  // header
      }
      for (std::size_t j = 0; j < fields.size(); ++j) {
        if (is_nonfinite_token(fields[j]))
          throw NonFiniteError(line_no, "score in column " + std::to_string(j + 1) + " is not finite");
        if (!parse_number(fields[j]))
          throw ParseError(line_no, "field " + std::to_string(j + 1) + " ('" + std::string(fields[j]) +
                                        "') is not a number");
      }
    }
    first_content = false;
    if (!rows.empty() && values.size() != rows.front().size())
      throw ParseError(line_no, "expected " + std::to_string(rows.front().size()) + " fields, found " +
                                    std::to_string(values.size()));
    rows.push_back(std::move(values));
    line_of_row.push_back(line_no);
  }
  if (in.bad()) throw IoError("read failure");
  if (rows.empty()) throw ParseError(line_no, "no data rows");
  if (rows.front().size() < 2)
    throw ParseError(line_of_row.front(), "need at least two treatment columns");

  if (format == InputFormat::ranks) {
    std::vector<std::vector<int>> ranks(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (double v : rows[i]) {
        if (!std::isfinite(v)) throw NonFiniteError(line_of_row[i], "rank is not finite");
        if (v != std::round(v)) throw ParseError(line_of_row[i], "rank " + std::to_string(v) + " is not an integer");
        ranks[i].push_back(static_cast<int>(v));
      }
    }
    try {
      return RankMatrix::from_rows(ranks);
    } catch (const TieError& e) {
      throw TieError(line_of_row[e.row() - 1], "repeated rank within a trial");
    }
  }
  try {
    return ranks_from_scores(rows);
  } catch (const TieError& e) {
    throw TieError(line_of_row[e.row() - 1], "tied scores within a trial");
  } catch (const NonFiniteError& e) {
    throw NonFiniteError(line_of_row[e.row() - 1], "score is not finite");
  }
}

RankMatrix read_rank_csv(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_rank_csv(in, format);
}

}  // namespace friedman
