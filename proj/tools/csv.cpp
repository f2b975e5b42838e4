#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include "dpinv/error.hpp"

namespace dpinv::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void malformed(const std::string& path, std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(line_no) + ": " + what);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    auto fields = split(view);
    if (!have_header) {
      for (auto f : fields) table.header.emplace_back(f);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      malformed(path, line_no, "expected " + std::to_string(table.header.size()) + " fields");
    }
    table.rows.emplace_back(fields.begin(), fields.end());
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw Error(ErrorCode::EmptyData, path + ": missing header");
  if (table.rows.empty()) throw Error(ErrorCode::EmptyData, path + ": no data rows");
  return table;
}

std::size_t column(const Table& t, const std::string& path, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidArgument, path + ": no '" + name + "' column");
}

double parse_value(const std::string& text, const std::string& path, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    malformed(path, line_no, "not a finite number: '" + text + "'");
  }
  return v;
}

}  // namespace

std::vector<double> read_value_column(const std::string& path) {
  const Table t = read_table(path);
  const std::size_t col = column(t, path, "value");
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out.push_back(parse_value(t.rows[r][col], path, t.line_numbers[r]));
  }
  return out;
}

TwoArmData read_two_arm(const std::string& path) {
  const Table t = read_table(path);
  const std::size_t value_col = column(t, path, "value");
  const std::size_t arm_col = column(t, path, "arm");
  TwoArmData data;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double v = parse_value(t.rows[r][value_col], path, t.line_numbers[r]);
    const std::string& arm = t.rows[r][arm_col];
    if (arm == "A") {
      data.control.push_back(v);
    } else if (arm == "B") {
      data.treatment.push_back(v);
    } else {
      malformed(path, t.line_numbers[r], "arm must be A or B, got '" + arm + "'");
    }
  }
  return data;
}

}  // namespace dpinv::cli
