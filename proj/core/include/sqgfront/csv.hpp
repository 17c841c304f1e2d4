#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sqgfront {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// Comma-separated writer; every row is flushed so that a partial file stays valid.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  class Row {
   public:
    Row& operator<<(double v);
    Row& operator<<(int v);
    Row& operator<<(long v);
    Row& operator<<(std::uint32_t v);
    Row& operator<<(std::string_view v);
    ~Row();

   private:
    friend class CsvWriter;
    explicit Row(CsvWriter& w) : writer_(w) {}
    void sep();
    CsvWriter& writer_;
    std::string line_;
    std::size_t cells_ = 0;
  };

  Row row() { return Row(*this); }
  std::size_t columns() const noexcept { return header_.size(); }

 private:
  std::ostream& out_;
  std::vector<std::string> header_;
};

}  // namespace sqgfront
