#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pbg {

// Scientific notation with 17 significant digits (round-trip safe).
std::string format_double(double v);

// Header + columns as CSV text (LF endings); optional trailing `# ...` lines.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<const Eigen::ArrayXd*>& columns,
                      const std::vector<std::string>& trailing_comments = {});

// Write via a temp file in the same directory, then rename into place.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace pbg
