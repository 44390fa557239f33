#pragma once

// CSV emission with shortest-round-trip numeric formatting, so re-reading a
// file recovers every double bit-exactly and reruns are byte-identical.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

namespace remo {

std::string format_double(double v);

class CsvWriter {
 public:
  using Cell = std::variant<double, std::int64_t, std::string>;

  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(std::initializer_list<Cell> cells);
  void row(const std::vector<Cell>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace remo
