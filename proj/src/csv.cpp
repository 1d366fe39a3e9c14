#include "mfpca/csv.hpp"

#include "mfpca/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace mfpca {

namespace {

std::vector<std::string> split_line(const std::string& line, const std::string& path,
                                    std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::Schema,
                path + ":" + std::to_string(line_no) + ": unterminated quoted field");
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_number(const std::string& text, const std::string& path, std::size_t row,
                    std::size_t col) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
  double value = 0.0;
  const auto res = std::from_chars(text.data() + b, text.data() + e, value);
  if (b == e || res.ec != std::errc() || res.ptr != text.data() + e) {
    throw Error(ErrorCode::Schema, path + ": data row " + std::to_string(row) + ", column " +
                                       std::to_string(col) + ": '" + text + "' is not a number");
  }
  return value;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_line(line, path, line_no);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) throw Error(ErrorCode::Schema, path + ": file has no header row");
  return table;
}

FeatureTable read_feature_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const bool has_grid = !table.header.empty() && table.header.front() == "t";
  const std::size_t first = has_grid ? 1 : 0;
  if (table.header.size() <= first) {
    throw Error(ErrorCode::Schema, path + ": no observation columns in header");
  }
  if (table.rows.size() < 2) {
    throw Error(ErrorCode::Schema, path + ": expected at least 2 data rows, found " +
                                       std::to_string(table.rows.size()));
  }
  FeatureTable out;
  out.observation_names.assign(table.header.begin() + static_cast<std::ptrdiff_t>(first),
                               table.header.end());
  const auto n = static_cast<Eigen::Index>(out.observation_names.size());
  const auto s = static_cast<Eigen::Index>(table.rows.size());
  out.values.resize(n, s);
  std::vector<double> grid;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != table.header.size()) {
      throw Error(ErrorCode::Schema, path + ": data row " + std::to_string(r + 1) + " has " +
                                         std::to_string(row.size()) + " fields, header has " +
                                         std::to_string(table.header.size()));
    }
    if (has_grid) grid.push_back(parse_number(row[0], path, r + 1, 1));
    for (std::size_t c = first; c < row.size(); ++c) {
      out.values(static_cast<Eigen::Index>(c - first), static_cast<Eigen::Index>(r)) =
          parse_number(row[c], path, r + 1, c + 1);
    }
  }
  if (has_grid) out.grid = std::move(grid);
  return out;
}

}  // namespace mfpca
