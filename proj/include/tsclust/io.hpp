#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsclust/series.hpp"

namespace tsclust::io {

// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double x);

// Rows `series_id,time,v1,...,vs` under a required header. Series keep their
// first-appearance order; observations are sorted by time.
std::vector<RawSeries> parse_series_csv(std::string_view text, const std::string& source);
std::vector<RawSeries> ingest_series_csv(const std::string& path);
std::string format_series_csv(std::span<const RawSeries> series);

// series_id,slot,time,v1,...,vs
std::string format_grid_csv(std::span<const GridSeries> grids);

// series_id,cluster with noise as -1
std::string format_assignments_csv(std::span<const std::string> ids, std::span<const int> clusters);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace tsclust::io
