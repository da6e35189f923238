#include "cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace conebranch::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // no "-0"
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::cell(double value) {
  current_.push_back(format_double(value));
  return *this;
}

CsvTable& CsvTable::cell(Complex value) {
  cell(value.real());
  return cell(value.imag());
}

CsvTable& CsvTable::cell(long long value) {
  current_.push_back(std::to_string(value));
  return *this;
}

CsvTable& CsvTable::cell(bool value) {
  current_.emplace_back(value ? "true" : "false");
  return *this;
}

CsvTable& CsvTable::cell(const std::string& value) {
  current_.push_back(value);
  return *this;
}

void CsvTable::end_row() {
  if (current_.size() != header_.size()) {
    throw std::logic_error("CSV row has " + std::to_string(current_.size()) + " cells, header has " +
                           std::to_string(header_.size()));
  }
  rows_.push_back(std::move(current_));
  current_.clear();
}

void CsvTable::write(std::ostream& out) const {
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j > 0) out << ',';
      out << cells[j];
    }
    out << '\n';
  };
  line(header_);
  for (const auto& row : rows_) line(row);
}

namespace {

void emit(std::ostream& out, const nlohmann::ordered_json& node, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (node.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (node.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      std::size_t j = 0;
      for (const auto& [key, value] : node.items()) {
        out << pad << nlohmann::ordered_json(key).dump() << ": ";
        emit(out, value, depth + 1);
        out << (++j < node.size() ? ",\n" : "\n");
      }
      out << close << '}';
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (node.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t j = 0; j < node.size(); ++j) {
        out << pad;
        emit(out, node[j], depth + 1);
        out << (j + 1 < node.size() ? ",\n" : "\n");
      }
      out << close << ']';
      return;
    }
    case nlohmann::ordered_json::value_t::number_float: {
      const double value = node.get<double>();
      out << (std::isfinite(value) ? format_double(value) : "null");
      return;
    }
    default:
      out << node.dump();
  }
}

}  // namespace

void write_json(std::ostream& out, const nlohmann::ordered_json& doc) {
  emit(out, doc, 0);
  out << '\n';
}

}  // namespace conebranch::cli
