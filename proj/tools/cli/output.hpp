#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "conebranch/numerics/quadrature.hpp"
#include "json.hpp"

namespace conebranch::cli {

/// %.17g in the C locale; non-finite values print as nan / inf / -inf.
std::string format_double(double value);

/// CSV table with a fixed header; cells are written verbatim, rows end in LF.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& cell(double value);
  CsvTable& cell(Complex value);  // two cells: re, im
  CsvTable& cell(long long value);
  CsvTable& cell(int value) { return cell(static_cast<long long>(value)); }
  CsvTable& cell(bool value);
  CsvTable& cell(const std::string& value);
  CsvTable& cell(const char* value) { return cell(std::string(value)); }
  void end_row();

  void write(std::ostream& out) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::string> current_;
};

/// JSON with floats at 17 significant digits, two-space indent, LF endings.
/// Non-finite numbers are written as null.
void write_json(std::ostream& out, const nlohmann::ordered_json& doc);

}  // namespace conebranch::cli
