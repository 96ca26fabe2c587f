#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "tsclust/error.hpp"
#include "tsclust/io.hpp"

using namespace tsclust;
using namespace tsclust::io;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_series_csv(text, "in.csv");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("format_double round trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -0.0, 5e-324}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("parse series csv") {
  const std::string text =
      "\xEF\xBB\xBFseries_id,time,v1,v2\r\n"
      "b, 0.5, 0.1, 0.2\r\n"
      "a,1,0.3,0.4\r\n"
      "\r\n"
      "b,0.25,0.5,0.6\r\n"
      "a,0.5,-0.1,1.2\r\n";
  const auto series = parse_series_csv(text, "in.csv");
  REQUIRE(series.size() == 2);
  CHECK(series[0].id() == "b");
  CHECK(series[1].id() == "a");
  CHECK(series[0].s() == 2);
  CHECK(series[0].m() == 2);
  CHECK(series[0].times()[0] == 0.25);
  CHECK(series[0].value(0)[1] == 0.6);
  CHECK(series[0].value(1)[0] == 0.1);
  // Values outside [0, 1] are allowed in raw input.
  CHECK(series[1].value(0)[1] == 1.2);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error("") == "in.csv:1: missing header");
  CHECK(parse_error("id,time,v1\n").find("in.csv:1: header") == 0);
  CHECK(parse_error("series_id,time\n").find("in.csv:1:") == 0);
  CHECK(parse_error("series_id,time,v1\na,0.5,0.1\na,0.5,0.2\n").find("in.csv:3: duplicate") == 0);
  CHECK(parse_error("series_id,time,v1\na,0.5\n").find("in.csv:2: expected 3 fields") == 0);
  CHECK(parse_error("series_id,time,v1\na,0,0.1\n").find("in.csv:2: time") == 0);
  CHECK(parse_error("series_id,time,v1\na,1.5,0.1\n").find("outside (0, 1]") != std::string::npos);
  CHECK(parse_error("series_id,time,v1\na,0.5,abc\n").find("in.csv:2: not a number") == 0);
  CHECK(parse_error("series_id,time,v1\na,0.5,nan\n").find("in.csv:2:") == 0);
  CHECK(parse_error("series_id,time,v1\n,0.5,0.1\n").find("in.csv:2: empty series_id") == 0);
}

TEST_CASE("series csv round trip") {
  const std::vector<RawSeries> in{
      RawSeries("x", 1, {0.2, 0.6, 1.0}, {0.1, 1.0 / 3.0, 0.7}),
      RawSeries("y", 1, {0.5, 1.0}, {0.123456789012345678, -2.5}),
  };
  const auto text = format_series_csv(in);
  const auto back = parse_series_csv(text, "round");
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].id() == in[i].id());
    CHECK(std::equal(back[i].times().begin(), back[i].times().end(), in[i].times().begin()));
    CHECK(std::equal(back[i].values().begin(), back[i].values().end(), in[i].values().begin()));
  }
  CHECK(format_series_csv(back) == text);
}

TEST_CASE("grid and assignment formats") {
  const std::vector<GridSeries> grids{GridSeries("g", 1, 2, {0.25, 0.75})};
  CHECK(format_grid_csv(grids) == "series_id,slot,time,v1\ng,1,0.5,0.25\ng,2,1,0.75\n");
  const std::vector<std::string> ids{"a", "b"};
  const std::vector<int> cl{0, -1};
  CHECK(format_assignments_csv(ids, cl) == "series_id,cluster\na,0\nb,-1\n");
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "tsclust_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "s.csv").string();
  write_file(path, "series_id,time,v1\nq,1,0.5\n");
  CHECK(ingest_series_csv(path).front().id() == "q");
  try {
    read_file((dir / "missing.csv").string());
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
  std::filesystem::remove_all(dir);
}
