#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cmvspec/word.hpp"

namespace cmvspec {

/// Doubles are written with 17 significant digits so values round-trip.
std::string format_double(double v);

class CsvWriter {
 public:
  using Cell = std::variant<double, index_t, std::string>;

  CsvWriter(std::ostream& out, std::vector<std::string> header);

  /// Throws Error(Config) when the row width differs from the header.
  void row(std::initializer_list<Cell> cells);
  void row(const std::vector<Cell>& cells);

  std::size_t rows_written() const { return rows_; }

 private:
  std::ostream& out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

}  // namespace cmvspec
