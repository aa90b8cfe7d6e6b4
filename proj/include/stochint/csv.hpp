#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <type_traits>
#include <vector>

namespace stochint {

// Output contract: comma separator, '.' decimal point, one header row, LF
// line endings, floats at 17 significant digits. Rows are written by a single
// writer, so identical configs reproduce byte-identical files.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header);

    static std::string format(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    template <typename... Cells>
    void row(const Cells&... cells) {
        std::vector<std::string> out;
        out.reserve(sizeof...(cells));
        (out.push_back(cell_string(cells)), ...);
        write_cells(out);
    }

private:
    template <typename T>
    static std::string cell_string(const T& v) {
        if constexpr (std::is_floating_point_v<T>) {
            return format(v);
        } else if constexpr (std::is_integral_v<T>) {
            return std::to_string(v);
        } else {
            return std::string(v);
        }
    }

    void write_cells(const std::vector<std::string>& cells);

    std::ofstream out_;
    std::size_t columns_;
};

}  // namespace stochint
