#include "tsclust/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "tsclust/error.hpp"

namespace tsclust::io {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& msg) {
  fail(ErrorCode::ParseError, source + ":" + std::to_string(line) + ": " + msg);
}

double parse_number(std::string_view field, const std::string& source, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, value);
  if (field.empty() || res.ec != std::errc() || res.ptr != end) {
    parse_fail(source, line, "not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) parse_fail(source, line, "non-finite value");
  return value;
}

struct Row {
  double time;
  std::vector<double> values;
  std::size_t line;
};

}  // namespace

std::vector<RawSeries> parse_series_csv(std::string_view text, const std::string& source) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    auto line = text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = pos + 1;
  }
  if (lines.empty() || trim(lines[0]).empty()) parse_fail(source, 1, "missing header");
  const auto header = split(lines[0]);
  if (header.size() < 3 || trim(header[0]) != "series_id" || trim(header[1]) != "time") {
    parse_fail(source, 1, "header must be series_id,time,v1,...,vs");
  }
  const std::size_t s = header.size() - 2;

  std::vector<std::string> order;
  std::map<std::string, std::vector<Row>> groups;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    if (trim(lines[li]).empty()) continue;
    const auto fields = split(lines[li]);
    if (fields.size() != header.size()) {
      parse_fail(source, line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                      std::to_string(fields.size()));
    }
    const std::string id(trim(fields[0]));
    if (id.empty()) parse_fail(source, line_no, "empty series_id");
    Row row{parse_number(fields[1], source, line_no), {}, line_no};
    if (!(row.time > 0.0 && row.time <= 1.0)) {
      parse_fail(source, line_no, "time " + format_double(row.time) + " outside (0, 1]");
    }
    for (std::size_t k = 0; k < s; ++k) row.values.push_back(parse_number(fields[2 + k], source, line_no));
    auto [it, inserted] = groups.try_emplace(id);
    if (inserted) order.push_back(id);
    it->second.push_back(std::move(row));
  }

  std::vector<RawSeries> out;
  out.reserve(order.size());
  for (const auto& id : order) {
    auto& rows = groups[id];
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.time < b.time; });
    std::vector<double> times;
    std::vector<double> values;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j > 0 && rows[j].time == rows[j - 1].time) {
        parse_fail(source, rows[j].line, "duplicate (series_id, time) = (" + id + ", " +
                                             format_double(rows[j].time) + ")");
      }
      times.push_back(rows[j].time);
      values.insert(values.end(), rows[j].values.begin(), rows[j].values.end());
    }
    out.emplace_back(id, s, std::move(times), std::move(values));
  }
  return out;
}

std::vector<RawSeries> ingest_series_csv(const std::string& path) {
  return parse_series_csv(read_file(path), path);
}

std::string format_series_csv(std::span<const RawSeries> series) {
  require(!series.empty(), ErrorCode::InvalidArgument, "format_series_csv: no series");
  const std::size_t s = series.front().s();
  std::string out = "series_id,time";
  for (std::size_t k = 0; k < s; ++k) out += ",v" + std::to_string(k + 1);
  out += '\n';
  for (const auto& y : series) {
    require(y.s() == s, ErrorCode::InvalidArgument, "format_series_csv: mixed s");
    for (std::size_t j = 0; j < y.m(); ++j) {
      out += y.id() + ',' + format_double(y.times()[j]);
      for (double v : y.value(j)) out += ',' + format_double(v);
      out += '\n';
    }
  }
  return out;
}

std::string format_grid_csv(std::span<const GridSeries> grids) {
  require(!grids.empty(), ErrorCode::InvalidArgument, "format_grid_csv: no series");
  const std::size_t s = grids.front().s();
  std::string out = "series_id,slot,time";
  for (std::size_t k = 0; k < s; ++k) out += ",v" + std::to_string(k + 1);
  out += '\n';
  for (const auto& g : grids) {
    for (std::size_t j = 0; j < g.d(); ++j) {
      out += g.id() + ',' + std::to_string(j + 1) + ',' + format_double(GridSeries::slot_time(j, g.d()));
      for (double v : g.at_slot(j)) out += ',' + format_double(v);
      out += '\n';
    }
  }
  return out;
}

std::string format_assignments_csv(std::span<const std::string> ids, std::span<const int> clusters) {
  require(ids.size() == clusters.size(), ErrorCode::InvalidArgument,
          "format_assignments_csv: length mismatch");
  std::string out = "series_id,cluster\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out += ids[i] + ',' + std::to_string(clusters[i]) + '\n';
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::IoError, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  require(static_cast<bool>(out), ErrorCode::IoError, "write failed for " + path);
}

}  // namespace tsclust::io
