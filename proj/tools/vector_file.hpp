#pragma once

#include <istream>
#include <string>
#include <vector>

namespace spherecdf::cli {

/// Rectangular matrix of finite reals, one candidate vector per row.
struct VectorFile {
  std::vector<std::vector<double>> rows;
};

/// Parses comma- or whitespace-separated decimal floats, one vector per
/// line. Blank lines and lines starting with '#' are skipped. Throws
/// std::invalid_argument (with the line number) for non-numeric or
/// non-finite tokens, ragged rows, or a file with no rows.
VectorFile read_vector_file(std::istream& in);
VectorFile read_vector_file(const std::string& path);

}  // namespace spherecdf::cli
