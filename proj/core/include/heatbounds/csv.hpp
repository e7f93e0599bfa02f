#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace heatbounds::io {

/// Shortest-roundtrip decimal rendering, '.' decimal point, no locale.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    std::string to_string() const;
};

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace heatbounds::io
