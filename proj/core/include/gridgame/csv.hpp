#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "gridgame/errors.hpp"

namespace gridgame {

/// Shortest decimal that parses back to exactly the same double, so emitted
/// tables are bit-stable across runs without printing 17 digits everywhere.
inline std::string format_number(double value) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

/// Streaming comma-separated writer. Cells are emitted verbatim (labels here
/// never contain commas or quotes), numbers through format_number.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path), path_(path) {
    if (!out_) fail(Errc::Io, "cannot write '" + path + "'");
  }

  CsvWriter& cell(const std::string& text) {
    if (started_) out_ << ',';
    out_ << text;
    started_ = true;
    return *this;
  }

  CsvWriter& cell(double value) { return cell(format_number(value)); }
  CsvWriter& cell(long long value) { return cell(std::to_string(value)); }
  CsvWriter& cell(int value) { return cell(std::to_string(value)); }

  void end_row() {
    out_ << '\n';
    started_ = false;
  }

  void close() {
    out_.close();
    if (out_.fail()) fail(Errc::Io, "short write to '" + path_ + "'");
  }

 private:
  std::ofstream out_;
  std::string path_;
  bool started_ = false;
};

}  // namespace gridgame
