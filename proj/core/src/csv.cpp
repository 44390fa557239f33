#include "remo/csv.hpp"

#include <charconv>

#include "remo/errors.hpp"

namespace remo {

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw Error("csv row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    if (const auto* d = std::get_if<double>(&cells[i]))
      out_ << format_double(*d);
    else if (const auto* n = std::get_if<std::int64_t>(&cells[i]))
      out_ << *n;
    else
      out_ << std::get<std::string>(cells[i]);
  }
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<Cell> cells) { row(std::vector<Cell>(cells)); }

}  // namespace remo
