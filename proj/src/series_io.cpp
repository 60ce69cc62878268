#include "pbg/series_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pbg/errors.hpp"

namespace pbg {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<const Eigen::ArrayXd*>& columns,
                      const std::vector<std::string>& trailing_comments)
{
    if (header.size() != columns.size() || columns.empty())
        throw ContractViolation("csv_table: header/column mismatch");
    const Eigen::Index rows = columns[0]->size();
    for (const auto* c : columns)
        if (c->size() != rows)
            throw ContractViolation("csv_table: ragged columns");

    std::string out;
    out.reserve(static_cast<size_t>(rows + 2) * header.size() * 26);
    for (size_t j = 0; j < header.size(); ++j) {
        if (j) out += ',';
        out += header[j];
    }
    out += '\n';
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (size_t j = 0; j < columns.size(); ++j) {
            if (j) out += ',';
            out += format_double((*columns[j])[i]);
        }
        out += '\n';
    }
    for (const auto& line : trailing_comments) {
        out += "# ";
        out += line;
        out += '\n';
    }
    return out;
}

void write_text_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path())
        fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw ConfigError("cannot open output file: " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f)
            throw ConfigError("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace pbg
