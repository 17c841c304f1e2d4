#include "sqgfront/csv.hpp"

#include <charconv>
#include <cmath>

namespace sqgfront {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), header_(std::move(header)) {
  for (std::size_t i = 0; i < header_.size(); ++i) out_ << (i ? "," : "") << header_[i];
  out_ << '\n';
  out_.flush();
}

void CsvWriter::Row::sep() {
  if (cells_++ > 0) line_ += ',';
}

CsvWriter::Row& CsvWriter::Row::operator<<(double v) {
  sep();
  line_ += format_double(v);
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(int v) { return *this << static_cast<long>(v); }

CsvWriter::Row& CsvWriter::Row::operator<<(long v) {
  sep();
  line_ += std::to_string(v);
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(std::uint32_t v) {
  sep();
  line_ += std::to_string(v);
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(std::string_view v) {
  sep();
  line_ += v;
  return *this;
}

CsvWriter::Row::~Row() {
  writer_.out_ << line_ << '\n';
  writer_.out_.flush();
}

}  // namespace sqgfront
