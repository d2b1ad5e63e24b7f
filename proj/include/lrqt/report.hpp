#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lrqt {

/// %.17g: round-trips every double.
std::string format_double(double value);

/// Comma-separated table with a header row. Cells are written verbatim;
/// callers format numbers with format_double.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }

    /// `stamp` (if non-empty) goes first as its own line.
    std::string render(const std::string& stamp = {}) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// "# lrqt <version> <args...>"
std::string reproducibility_stamp(const std::string& version, const std::vector<std::string>& args);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never see a partial file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace lrqt
