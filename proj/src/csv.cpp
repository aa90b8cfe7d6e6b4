#include "stochint/csv.hpp"

#include <stdexcept>

namespace stochint {

CsvWriter::CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header)
    : out_(file, std::ios::binary), columns_(header.size()) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + file.string());
    if (header.empty()) throw std::invalid_argument("CsvWriter: empty header");
    write_cells(header);
}

void CsvWriter::write_cells(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

}  // namespace stochint
