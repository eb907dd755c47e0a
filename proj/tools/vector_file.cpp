#include "vector_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace spherecdf::cli {

namespace {

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; }

std::vector<double> parse_line(const std::string& line, std::size_t line_no) {
  std::vector<double> row;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && is_separator(*p)) ++p;
    if (p == end) break;
    const char* tok = p;
    while (p < end && !is_separator(*p)) ++p;
    // from_chars rejects a leading '+', which is common in exported data.
    const char* start = (*tok == '+' && tok + 1 < p) ? tok + 1 : tok;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(start, p, v);
    if (ec != std::errc() || ptr != p) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": not a number: '" +
                                  std::string(tok, p) + "'");
    }
    if (!std::isfinite(v)) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": non-finite value");
    }
    row.push_back(v);
  }
  return row;
}

}  // namespace

VectorFile read_vector_file(std::istream& in) {
  VectorFile file;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row = parse_line(line, line_no);
    if (!file.rows.empty() && row.size() != file.rows.front().size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(file.rows.front().size()) + " values, found " +
                                  std::to_string(row.size()));
    }
    file.rows.push_back(std::move(row));
  }
  if (file.rows.empty()) throw std::invalid_argument("input contains no vectors");
  return file;
}

VectorFile read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return read_vector_file(in);
}

}  // namespace spherecdf::cli
